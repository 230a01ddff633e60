#include "skque/weights.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "skque/lvalues.hpp"

namespace skque {

namespace {

constexpr double kPi = std::numbers::pi;
using Cplx = std::complex<double>;

constexpr double kGlNodes[8] = {0.09501250983763744019, 0.28160355077925891323,
                                0.45801677765722738634, 0.61787624440264374845,
                                0.75540440835500303390, 0.86563120238783174388,
                                0.94457502307323257608, 0.98940093499164993260};
constexpr double kGlWeights[8] = {0.18945061045506849629, 0.18260341504492358887,
                                  0.16915651939500253819, 0.14959598881657673208,
                                  0.12462897125553387205, 0.09515851168249278481,
                                  0.06225352393864789286, 0.02715245941175409485};

struct Grid {
    std::vector<double> x, w;
};

Grid glGrid(double a, double b, int panels) {
    Grid g;
    g.x.reserve(static_cast<std::size_t>(16 * panels));
    g.w.reserve(static_cast<std::size_t>(16 * panels));
    double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        double mid = a + (p + 0.5) * h, half = 0.5 * h;
        for (int i = 7; i >= 0; --i) {
            g.x.push_back(mid - half * kGlNodes[i]);
            g.w.push_back(half * kGlWeights[i]);
        }
        for (int i = 0; i < 8; ++i) {
            g.x.push_back(mid + half * kGlNodes[i]);
            g.w.push_back(half * kGlWeights[i]);
        }
    }
    return g;
}

Cplx lgammaC(Cplx z) {
    if (z.real() >= 0.5) return lgammaComplex(z);
    return lgammaComplex(z + 1.0) - std::log(z);
}

/// (1/2 pi) int_R f(t) dt for even f decaying along the line, trapezoid with
/// expanding truncation at 1e-16 of the running peak.
template <typename F>
double lineIntegral(F f, double h, double tmax) {
    double acc = 0.5 * f(0.0);
    double peak = std::abs(acc);
    int quiet = 0;
    int nmax = static_cast<int>(tmax / h);
    for (int n = 1; n < nmax; ++n) {
        double v = f(n * h);
        acc += v;
        double av = std::abs(v);
        peak = std::max(peak, av);
        quiet = av < 1e-16 * peak ? quiet + 1 : 0;
        if (quiet * h >= 20.0) break;
    }
    return acc * h / kPi;
}

double smallestEigenvalue(const PosDefMatrix& T) {
    double tr = T.y1 + T.y2;
    double gap = std::sqrt((T.y1 - T.y2) * (T.y1 - T.y2) + 4.0 * T.y3 * T.y3);
    return 0.5 * (tr - gap);
}

}  // namespace

double TestWindow::operator()(double t) const {
    double x = (t - center) / scale;
    if (kind == Kind::bump) {
        if (std::abs(x) >= 1.0) return 0.0;
        return std::exp(1.0 - 1.0 / (1.0 - x * x));
    }
    return std::exp(-0.5 * x * x);
}

double TestWindow::lower() const { return center - (kind == Kind::bump ? 1.0 : 12.0) * scale; }

double TestWindow::upper() const { return center + (kind == Kind::bump ? 1.0 : 12.0) * scale; }

TestWindow standardBump() { return {TestWindow::Kind::bump, 0.75, 0.25}; }

std::complex<double> mellin(const TestWindow& kappa, std::complex<double> s) {
    if (kappa.lower() <= 0.0)
        throw std::invalid_argument("mellin: window support must stay away from 0");
    double span = std::log(kappa.upper() / kappa.lower());
    int panels = 32 + static_cast<int>(std::abs(s.imag()) * span / 5.0);
    Grid g = glGrid(kappa.lower(), kappa.upper(), panels);
    Cplx acc(0.0);
    for (std::size_t i = 0; i < g.x.size(); ++i) {
        double kv = kappa(g.x[i]);
        if (kv == 0.0) continue;
        acc += g.w[i] * kv * std::exp(-(s + 1.0) * std::log(g.x[i]));
    }
    return acc;
}

double mellinInverse(const TestWindow& kappa, double sigma, double y) {
    if (y <= 0.0) throw std::invalid_argument("mellinInverse: y must be positive");
    double lny = std::log(y);
    return lineIntegral(
        [&](double t) {
            Cplx s(sigma, t);
            return (mellin(kappa, s) * std::exp(s * lny)).real();
        },
        0.1, 800.0);
}

std::complex<double> siegelGamma(const PosDefMatrix& T, std::complex<double> s,
                                 unsigned long k) {
    if (!T.valid()) throw std::invalid_argument("siegelGamma: T not positive definite");
    double kk = static_cast<double>(k);
    if (kk + 0.5 * s.real() <= 2.0)
        throw std::invalid_argument("siegelGamma: divergent parameter range");
    Cplx sig = kk - 1.5 + 0.5 * s;
    Cplx lg = 0.5 * std::log(kPi) - sig * std::log(T.det()) -
              (2.0 * kk - 3.0 + s) * std::log(4.0 * kPi) + lgammaC(sig) + lgammaC(sig - 0.5);
    return std::exp(lg);
}

double siegelGammaQuadrature(const PosDefMatrix& T, double s, unsigned long k) {
    if (!T.valid())
        throw std::invalid_argument("siegelGammaQuadrature: T not positive definite");
    double kk = static_cast<double>(k);
    if (kk + 0.5 * s <= 2.0)
        throw std::invalid_argument("siegelGammaQuadrature: divergent parameter range");
    double e = kk - 3.0 + 0.5 * s;
    double tmin = smallestEigenvalue(T);
    double cut = (e + 45.0) / (4.0 * kPi * tmin);
    Grid gy = glGrid(std::log(cut) - 12.0, std::log(cut), 26);
    Grid gr = glGrid(-1.0, 1.0, 6);
    std::vector<double> lr(gr.x.size());
    for (std::size_t l = 0; l < gr.x.size(); ++l)
        lr[l] = e * std::log1p(-gr.x[l] * gr.x[l]);
    double tot = 0.0;
    for (std::size_t i = 0; i < gy.x.size(); ++i) {
        double y1 = std::exp(gy.x[i]);
        for (std::size_t j = 0; j < gy.x.size(); ++j) {
            double y2 = std::exp(gy.x[j]);
            double m = std::sqrt(y1 * y2);
            double base = (e + 1.5) * (gy.x[i] + gy.x[j]) - 4.0 * kPi * (T.y1 * y1 + T.y2 * y2);
            double c = 8.0 * kPi * T.y3 * m;
            double inner = 0.0;
            for (std::size_t l = 0; l < gr.x.size(); ++l)
                inner += gr.w[l] * std::exp(base + lr[l] - c * gr.x[l]);
            tot += gy.w[i] * gy.w[j] * inner;
        }
    }
    return tot;
}

double scaledRatio(const Scaled& a, const Scaled& b) {
    if (b.mantissa == 0.0)
        return a.mantissa == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    return a.mantissa / b.mantissa * std::exp(a.logScale - b.logScale);
}

OffDiagWeight offDiagWeight(unsigned long k, double v1, double v2, double v3,
                            const TestWindow& phi1, const TestWindow& phi2,
                            const TestWindow& phi3, Phi3Arg variant) {
    if (v1 <= 0.0 || v3 <= 0.0 || v1 * v3 - v2 * v2 <= 0.0)
        throw std::invalid_argument("offDiagWeight: shifted pair not positive definite");
    double kk = static_cast<double>(k);

    Grid g1 = glGrid(std::max(phi1.lower(), 1e-9), phi1.upper(), 25);
    double m1 = -std::numeric_limits<double>::infinity();
    std::vector<double> e1(g1.x.size());
    for (std::size_t i = 0; i < g1.x.size(); ++i) {
        e1[i] = (kk - 3.0) * std::log(g1.x[i]) - 2.0 * kPi * v1 * g1.x[i];
        m1 = std::max(m1, e1[i]);
    }
    double I1 = 0.0;
    for (std::size_t i = 0; i < g1.x.size(); ++i)
        I1 += g1.w[i] * phi1(g1.x[i]) * std::exp(e1[i] - m1);

    Grid g2 = glGrid(std::max(phi2.lower(), 1e-9), phi2.upper(), 25);
    Grid gu = glGrid(phi3.lower(), phi3.upper(), 50);
    double m2 = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < gu.x.size(); ++j) {
        double u = gu.x[j];
        double cu = v1 * u * u + v2 * u + v3;
        for (std::size_t l = 0; l < g2.x.size(); ++l)
            m2 = std::max(m2, (kk - 2.0) * std::log(g2.x[l]) - 2.0 * kPi * cu * g2.x[l]);
    }
    double I23 = 0.0;
    for (std::size_t j = 0; j < gu.x.size(); ++j) {
        double u = gu.x[j];
        double p3 = phi3(u);
        if (p3 == 0.0) continue;
        double cu = v1 * u * u + v2 * u + v3;
        double J = 0.0;
        for (std::size_t l = 0; l < g2.x.size(); ++l) {
            double t2 = g2.x[l];
            J += g2.w[l] * phi2(t2) *
                 std::exp((kk - 2.0) * std::log(t2) - 2.0 * kPi * cu * t2 - m2);
        }
        I23 += gu.w[j] * p3 * J;
    }

    OffDiagWeight out;
    out.quadrature = {I1 * I23, m1 + m2};
    double lpref = std::lgamma(kk - 2.0) + std::lgamma(kk - 1.5) - 0.5 * std::log(2.0) -
                   (2.0 * kk - 3.5) * std::log(2.0 * kPi) -
                   (kk - 1.5) * std::log(v1 * v3 - 0.25 * v2 * v2);
    double a1 = (kk - 2.0) / (2.0 * kPi * v1);
    double a2 = (kk - 1.5) / (2.0 * kPi * (v3 - v2 * v2 / (4.0 * v1)));
    double a3 = variant == Phi3Arg::derivation ? -v2 / (2.0 * v1) : -v1 / (2.0 * v2);
    out.mainTerm = {phi1(a1) * phi2(a2) * phi3(a3), lpref};
    out.relDev = std::abs(scaledRatio(out.quadrature, out.mainTerm) - 1.0);
    return out;
}

double discWeight(unsigned long k, double absDisc, const TestWindow& kappa) {
    if (absDisc <= 0.0) throw std::invalid_argument("discWeight: |disc| must be positive");
    double kk = static_cast<double>(k);
    double lnX = std::log(4.0 * kPi * kPi * absDisc);
    double lnorm = std::lgamma(kk - 2.0) + std::lgamma(kk - 1.5);
    return lineIntegral(
        [&](double t) {
            Cplx s(4.0, t);
            Cplx val =
                mellin(kappa, s) * std::exp(-0.5 * s * lnX + lgammaC(Cplx(kk, 0.5 * t)) +
                                            lgammaC(Cplx(kk + 0.5, 0.5 * t)) - lnorm);
            return val.real();
        },
        0.05, 2000.0);
}

Scaled gT1kappa(const PosDefMatrix& T, unsigned long k, const TestWindow& kappa) {
    if (!T.valid()) throw std::invalid_argument("gT1kappa: T not positive definite");
    double kk = static_cast<double>(k);
    double absDisc = 4.0 * T.det();
    double w = discWeight(k, absDisc, kappa);
    double logScale = (1.5 - kk) * std::log(4.0) + (3.5 - 2.0 * kk) * std::log(kPi) -
                      std::log(2.0) + std::lgamma(kk - 2.0) + std::lgamma(kk - 1.5) -
                      (kk - 1.5) * std::log(absDisc);
    return {w, logScale};
}

Scaled gT1kappaQuadrature(const PosDefMatrix& T, unsigned long k, const TestWindow& kappa) {
    if (!T.valid())
        throw std::invalid_argument("gT1kappaQuadrature: T not positive definite");
    if (kappa.lower() <= 0.0)
        throw std::invalid_argument("gT1kappaQuadrature: window support must stay away from 0");
    double kk = static_cast<double>(k);
    double e = kk - 3.0;
    double tmin = smallestEigenvalue(T);
    double cut = std::max((e + 45.0) / (4.0 * kPi * tmin), 2.0 * kappa.upper());
    double ylo = 0.25 * kappa.lower() * kappa.lower() / cut;
    Grid gy = glGrid(std::log(ylo), std::log(cut), 26);
    Grid gr = glGrid(-1.0, 1.0, 6);
    double tot = 0.0;
    for (std::size_t i = 0; i < gy.x.size(); ++i) {
        double y1 = std::exp(gy.x[i]);
        for (std::size_t j = 0; j < gy.x.size(); ++j) {
            double y2 = std::exp(gy.x[j]);
            double m = std::sqrt(y1 * y2);
            double base = (e + 1.5) * (gy.x[i] + gy.x[j]) - 4.0 * kPi * (T.y1 * y1 + T.y2 * y2);
            double c = 8.0 * kPi * T.y3 * m;
            for (std::size_t l = 0; l < gr.x.size(); ++l) {
                double om = 1.0 - gr.x[l] * gr.x[l];
                double kv = kappa(m * std::sqrt(om));
                if (kv == 0.0) continue;
                tot += gy.w[i] * gy.w[j] * gr.w[l] * kv *
                       std::exp(base + e * std::log(om) - c * gr.x[l]);
            }
        }
    }
    return {0.5 * tot, 0.0};
}

bool matrixAmGmHolds(const Rat& a1, const Rat& a2, const Rat& a3, const Rat& b1,
                     const Rat& b2, const Rat& b3) {
    Rat detA = a1 * a2 - a3 * a3;
    Rat detB = b1 * b2 - b3 * b3;
    if (a1 <= 0 || detA <= 0 || b1 <= 0 || detB <= 0)
        throw std::invalid_argument("matrixAmGmHolds: inputs must be positive definite");
    Rat m1 = (a1 + b1) / 2, m2 = (a2 + b2) / 2, m3 = (a3 + b3) / 2;
    Rat dm = m1 * m2 - m3 * m3;
    return detA * detB <= dm * dm;
}

}  // namespace skque
