#include "skque/lvalues.hpp"

#include "skque/characters.hpp"
#include "skque/qseries.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace skque {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

double digammaReal(double x) {
    if (x <= 0.0) throw std::domain_error("digammaReal: x must be positive");
    double acc = 0.0;
    while (x < 12.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    // asymptotic: ln x - 1/(2x) - sum B_{2j}/(2j x^{2j})
    double inv = 1.0 / x, inv2 = inv * inv;
    double series = inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 -
                    inv2 * (1.0 / 240 - inv2 * (1.0 / 132 - inv2 * (691.0 / 32760))))));
    return acc + std::log(x) - 0.5 * inv - series;
}

std::complex<double> lgammaComplex(std::complex<double> z) {
    if (z.real() < 0.5) throw std::domain_error("lgammaComplex: Re z < 1/2 unsupported");
    static const double g[9] = {0.99999999999980993,  676.5203681218851,   -1259.1392167224028,
                                771.32342877765313,   -176.61502916214059, 12.507343278686905,
                                -0.13857109526572012, 9.9843695780195716e-6,
                                1.5056327351493116e-7};
    std::complex<double> zz = z - 1.0;
    std::complex<double> x = g[0];
    for (int i = 1; i < 9; ++i) x += g[i] / (zz + static_cast<double>(i));
    std::complex<double> t = zz + 7.5;
    return 0.5 * std::log(kTwoPi) + (zz + 0.5) * std::log(t) - t + std::log(x);
}

double dirichletL1(std::int64_t d, const FactorSieve& sieve) {
    if (d >= 0) throw std::invalid_argument("dirichletL1: d must be negative");
    if (!isFundamental(d, sieve)) throw std::invalid_argument("dirichletL1: d not fundamental");
    std::int64_t q = -d;
    auto chi = chiTable(d, static_cast<std::size_t>(q), sieve);
    double s = 0.0;
    for (std::int64_t a = 1; a < q; ++a) {
        int c = chi[static_cast<std::size_t>(a)];
        if (c != 0) s += c * digammaReal(static_cast<double>(a) / static_cast<double>(q));
    }
    return -s / static_cast<double>(q);
}

std::vector<Int> apFromEigenform(unsigned long w, std::int64_t pmax) {
    auto f = eigenform(w, static_cast<std::size_t>(pmax) + 1);
    FactorSieve sieve(pmax);
    std::vector<Int> out;
    for (std::int64_t p : sieve.primesUpTo(pmax)) out.push_back(f.a[static_cast<std::size_t>(p)]);
    return out;
}

std::vector<Int> apTraceTable(unsigned long w, std::int64_t pmax,
                              const std::vector<std::int32_t>& hurwitz12,
                              const FactorSieve& sieve) {
    if (w != 18 && w != 22 && w != 26 && w != 12 && w != 16 && w != 20)
        throw std::invalid_argument("apTraceTable: dim S_w != 1");
    if (static_cast<std::int64_t>(hurwitz12.size()) <= 4 * pmax)
        throw std::invalid_argument("apTraceTable: hurwitz table too small");
    std::vector<Int> out;
    std::vector<Int> G(w - 1);
    for (std::int64_t p : sieve.primesUpTo(pmax)) {
        Int S(0);
        std::int64_t tmax = isqrtFloor(4 * p);
        for (std::int64_t t = 0; t <= tmax; ++t) {
            // Gegenbauer G_{w-2}(t, p)
            G[0] = 1;
            G[1] = t;
            for (unsigned long j = 2; j <= w - 2; ++j) {
                G[j] = t * G[j - 1];
                mpz_submul_ui(G[j].get_mpz_t(), G[j - 2].get_mpz_t(),
                              static_cast<unsigned long>(p));
            }
            Int term = G[w - 2] * hurwitz12[static_cast<std::size_t>(4 * p - t * t)];
            S += t == 0 ? term : 2 * term;
        }
        S += 24;  // the -1 correction, folded into -S/24
        if (!mpz_divisible_ui_p(S.get_mpz_t(), 24))
            throw std::logic_error("apTraceTable: trace not divisible by 24");
        out.push_back(-S / 24);
    }
    return out;
}

namespace {

template <typename Num, typename Ops>
void fillLambda(std::vector<Num>& lam, unsigned long w, std::size_t nmax,
                const std::vector<Int>& apByPrime, const FactorSieve& sieve, Ops ops) {
    lam.assign(nmax + 1, ops.zero());
    if (nmax >= 1) lam[1] = ops.one();
    std::size_t pi = 0;
    for (std::size_t n = 2; n <= nmax; ++n) {
        auto p = static_cast<std::size_t>(sieve.smallestFactor(static_cast<std::int64_t>(n)));
        if (p == n) {
            if (pi >= apByPrime.size()) throw std::out_of_range("lambdaTable: apByPrime too short");
            lam[n] = ops.normalize(apByPrime[pi++], n, w);
        } else {
            std::size_t m = n, pe = 1;
            while (m % p == 0) { m /= p; pe *= p; }
            if (m > 1) {
                lam[n] = ops.mul(lam[pe], lam[m]);
            } else {
                // prime power p^e, e >= 2: recursion lambda(p^e) = lambda(p)lambda(p^{e-1}) - lambda(p^{e-2})
                std::size_t pm1 = n / p, pm2 = pm1 / p;
                lam[n] = ops.sub(ops.mul(lam[p], lam[pm1]), lam[pm2]);
            }
        }
    }
}

struct DoubleOps {
    double zero() const { return 0.0; }
    double one() const { return 1.0; }
    double mul(double a, double b) const { return a * b; }
    double sub(double a, double b) const { return a - b; }
    double normalize(const Int& ap, std::size_t p, unsigned long w) const {
        return toDouble(ap) * std::pow(static_cast<double>(p), -(static_cast<double>(w) - 1) / 2);
    }
};

struct DDOps {
    DD zero() const { return DD(0.0); }
    DD one() const { return DD(1.0); }
    DD mul(const DD& a, const DD& b) const { return a * b; }
    DD sub(const DD& a, const DD& b) const { return a - b; }
    DD normalize(const Int& ap, std::size_t p, unsigned long w) const {
        // exact split of ap into two doubles
        double hi = toDouble(ap);
        Int rem = ap - Int(hi);
        DD a(hi, toDouble(rem));
        DD pw = ddPowInt(DD(static_cast<double>(p)), static_cast<long>((w - 1) / 2));
        return a / (pw * ddSqrt(DD(static_cast<double>(p))));
    }
};

}  // namespace

LambdaTable lambdaTable(unsigned long w, std::size_t nmax, const std::vector<Int>& apByPrime,
                        const FactorSieve& sieve) {
    LambdaTable t;
    t.w = w;
    fillLambda(t.v, w, nmax, apByPrime, sieve, DoubleOps{});
    return t;
}

LambdaTableDD lambdaTableDD(unsigned long w, std::size_t nmax, const std::vector<Int>& apByPrime,
                            const FactorSieve& sieve) {
    LambdaTableDD t;
    t.w = w;
    fillLambda(t.v, w, nmax, apByPrime, sieve, DDOps{});
    return t;
}

double upperGammaRegularized(long a, double x) {
    if (a < 1 || a > 170) throw std::invalid_argument("upperGammaRegularized: bad a");
    if (x < 0) throw std::domain_error("upperGammaRegularized: x < 0");
    double e = std::exp(-x);
    if (e == 0.0) return 0.0;
    double term = 1.0, sum = 1.0;
    for (long j = 1; j < a; ++j) {
        term *= x / static_cast<double>(j);
        sum += term;
    }
    return e * sum;
}

double upperGamma(double s, double x) {
    if (x < 0) throw std::domain_error("upperGamma: x < 0");
    if (x == 0) return std::tgamma(s);
    if (x > s + 1.0) {
        // Lentz continued fraction for Gamma(s, x)
        double tiny = 1e-300;
        double b = x + 1.0 - s, c = 1.0 / tiny, dd = 1.0 / b, h = dd;
        for (int i = 1; i <= 300; ++i) {
            double an = -i * (i - s);
            b += 2.0;
            dd = an * dd + b;
            if (std::abs(dd) < tiny) dd = tiny;
            c = b + an / c;
            if (std::abs(c) < tiny) c = tiny;
            dd = 1.0 / dd;
            double delta = dd * c;
            h *= delta;
            if (std::abs(delta - 1.0) < 1e-17) break;
        }
        return std::exp(-x + s * std::log(x)) * h;
    }
    // lower series: gamma(s, x) = x^s e^{-x} sum x^k / (s (s+1) ... (s+k))
    double term = 1.0 / s, sum = term;
    for (int k = 1; k <= 500; ++k) {
        term *= x / (s + k);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return std::tgamma(s) - std::exp(-x + s * std::log(x)) * sum;
}

double centralTwisted(std::int64_t d, double A, const LambdaTable& lambda,
                      const FactorSieve& sieve) {
    if (d >= 0) throw std::invalid_argument("centralTwisted: d must be negative");
    if (A <= 0) throw std::invalid_argument("centralTwisted: A must be positive");
    const unsigned long w = lambda.w;
    const long a = static_cast<long>(w / 2);
    const double Q = static_cast<double>(-d) / kTwoPi;
    const double xcut = static_cast<double>(w) + 45.0;
    auto nmax = static_cast<std::size_t>(Q * xcut / std::min(A, 1.0 / A)) + 8;
    if (nmax > lambda.maxIndex()) throw std::out_of_range("centralTwisted: lambda table too short");
    if (static_cast<std::int64_t>(nmax) > sieve.limit())
        throw std::out_of_range("centralTwisted: sieve too small");
    auto chi = chiTable(d, nmax, sieve);

    const double s1 = A / Q, s2 = 1.0 / (A * Q);
    const double e1 = std::exp(-s1), e2 = std::exp(-s2);
    double f1 = 1.0, f2 = 1.0;
    double acc = 0.0;
    for (std::size_t n = 1; n <= nmax; ++n) {
        if ((n & 255) == 0) {
            f1 = std::exp(-s1 * static_cast<double>(n));
            f2 = std::exp(-s2 * static_cast<double>(n));
        } else {
            f1 *= e1;
            f2 *= e2;
        }
        int c = chi[n];
        if (c == 0) continue;
        double x1 = s1 * static_cast<double>(n), x2 = s2 * static_cast<double>(n);
        double t1 = 1.0, sum1 = 1.0, t2 = 1.0, sum2 = 1.0;
        for (long j = 1; j < a; ++j) {
            t1 *= x1 / static_cast<double>(j);
            sum1 += t1;
            t2 *= x2 / static_cast<double>(j);
            sum2 += t2;
        }
        double gammas = f1 * sum1 + f2 * sum2;
        acc += lambda[n] * c * gammas / std::sqrt(static_cast<double>(n));
    }
    return acc;  // Lambda / (sqrt(Q) Gamma(a)), the Qreg normalization absorbing Gamma(a)
}

DD centralTwistedDD(std::int64_t d, double A, const LambdaTableDD& lambda,
                    const FactorSieve& sieve) {
    if (d >= 0) throw std::invalid_argument("centralTwistedDD: d must be negative");
    const unsigned long w = lambda.w;
    const long a = static_cast<long>(w / 2);
    const double Qd = static_cast<double>(-d) / kTwoPi;
    const double xcut = static_cast<double>(w) + 150.0;
    auto nmax = static_cast<std::size_t>(Qd * xcut / std::min(A, 1.0 / A)) + 8;
    if (nmax >= lambda.v.size()) throw std::out_of_range("centralTwistedDD: lambda table too short");
    if (static_cast<std::int64_t>(nmax) > sieve.limit())
        throw std::out_of_range("centralTwistedDD: sieve too small");
    auto chi = chiTable(d, nmax, sieve);

    const DD twoPi(6.283185307179586, 2.4492935982947064e-16);
    DD Q = DD(static_cast<double>(-d)) / twoPi;
    DD s1 = DD(A) / Q, s2 = DD(1.0) / (DD(A) * Q);
    DD acc(0.0);
    for (std::size_t n = 1; n <= nmax; ++n) {
        int c = chi[n];
        if (c == 0) continue;
        DD nn(static_cast<double>(n));
        DD x1 = s1 * nn, x2 = s2 * nn;
        DD t1(1.0), sum1(1.0), t2(1.0), sum2(1.0);
        for (long j = 1; j < a; ++j) {
            DD jj(static_cast<double>(j));
            t1 = t1 * x1 / jj;
            sum1 += t1;
            t2 = t2 * x2 / jj;
            sum2 += t2;
        }
        DD gammas = ddExp(-x1) * sum1 + ddExp(-x2) * sum2;
        DD term = lambda.v[n] * gammas / ddSqrt(nn);
        acc += c > 0 ? term : -term;
    }
    return acc;
}

double lfAt(unsigned long w, double s, const std::vector<Int>& an, double A) {
    if (A <= 0) throw std::invalid_argument("lfAt: A must be positive");
    const double scl = s + (static_cast<double>(w) - 1.0) / 2.0;
    if (scl <= 0 || scl >= static_cast<double>(w))
        throw std::domain_error("lfAt: s outside the strip handled by the AFE");
    const double sign = (w / 2) % 2 == 0 ? 1.0 : -1.0;
    const double cut = 50.0;
    double acc = 0.0;
    std::size_t needed = 0;
    for (std::size_t n = 1; n < an.size(); ++n) {
        double x1 = kTwoPi * static_cast<double>(n) * A;
        double x2 = kTwoPi * static_cast<double>(n) / A;
        bool live = false;
        if (x1 < scl + cut + 2.0 * std::sqrt(scl * std::log(x1 + 4.0) + cut)) {
            acc += toDouble(an[n]) * std::pow(kTwoPi * n, -scl) * upperGamma(scl, x1);
            live = true;
        }
        if (x2 < (w - scl) + cut + 2.0 * std::sqrt((w - scl) * std::log(x2 + 4.0) + cut)) {
            acc += sign * toDouble(an[n]) * std::pow(kTwoPi * n, scl - w) *
                   upperGamma(w - scl, x2);
            live = true;
        }
        if (!live) { needed = n; break; }
    }
    if (needed == 0 && !an.empty())
        throw std::out_of_range("lfAt: coefficient table too short for this A");
    // L_cl(scl) = Lambda_cl (2pi)^{scl} / Gamma(scl); lambda-normalized L(s) = L_cl(scl)
    return acc * std::pow(kTwoPi, scl) / std::tgamma(scl);
}

PlainSum lfPlain(double s, const LambdaTable& lambda, std::size_t X) {
    if (s <= 1.0) throw std::domain_error("lfPlain: s must exceed 1");
    if (X > lambda.maxIndex()) throw std::out_of_range("lfPlain: X beyond table");
    PlainSum out;
    for (std::size_t n = 1; n <= X; ++n)
        out.value += lambda[n] * std::pow(static_cast<double>(n), -s);
    // tail: sum_{n > X} d(n) n^{-s} <= 2 sum_{a <= sqrt(X)} a^{-s} ztail(s, X/a) + ztail(s, sqrt(X))^2
    auto ztail = [s](double T) { return std::pow(T, 1.0 - s) / (s - 1.0) + std::pow(T, -s); };
    double root = std::sqrt(static_cast<double>(X));
    double bound = ztail(root) * ztail(root);
    for (std::size_t aa = 1; static_cast<double>(aa) <= root; ++aa)
        bound += 2.0 * std::pow(static_cast<double>(aa), -s) * ztail(static_cast<double>(X) / aa);
    out.tailBound = bound;
    return out;
}

double symSquareAtOne(unsigned long w, const std::vector<Int>& apByPrime,
                      const FactorSieve& sieve, double beta, double c, std::size_t nmax) {
    if (static_cast<std::int64_t>(nmax) > sieve.limit())
        throw std::out_of_range("symSquareAtOne: sieve too small");
    auto lam = lambdaTable(w, nmax, apByPrime, sieve);

    // A(n) = sum_{a^2 | n} lambda((n/a^2)^2), multiplicative; built from
    // lambda(p^j) extended by the Hecke recursion up to j = 2 e_max
    std::vector<double> An(nmax + 1, 0.0);
    An[1] = 1.0;
    for (std::size_t n = 2; n <= nmax; ++n) {
        double prod = 1.0;
        for (auto [p, e] : sieve.factor(static_cast<std::int64_t>(n))) {
            double lp = lam[static_cast<std::size_t>(p)];
            std::vector<double> lpj(2 * e + 1);
            lpj[0] = 1.0;
            lpj[1] = lp;
            for (int j = 2; j <= 2 * e; ++j) lpj[j] = lp * lpj[j - 1] - lpj[j - 2];
            double ape = 0.0;
            for (int i = 0; 2 * i <= e; ++i) ape += lpj[2 * (e - 2 * i)];
            prod *= ape;
        }
        An[n] = prod;
    }

    // node weights on Re u = c, trapezoid step h, kernel g(u) = exp((u/beta)^2)
    const double h = 0.125;
    const double T = 24.0;
    const auto M = static_cast<std::size_t>(T / h);
    auto nodeWeight = [&](double tau, int j) -> std::complex<double> {
        std::complex<double> u(c, tau);
        std::complex<double> gr = lgammaComplex((u + static_cast<double>(j) + 1.0) / 2.0) -
                                  0.5 * (u + static_cast<double>(j) + 1.0) * std::log(kPi);
        std::complex<double> gc = std::log(2.0) -
                                  (u + static_cast<double>(j) + static_cast<double>(w) - 1.0) *
                                      std::log(kTwoPi) +
                                  lgammaComplex(u + static_cast<double>(j) +
                                                static_cast<double>(w) - 1.0);
        std::complex<double> g = std::exp((u / beta) * (u / beta));
        return std::exp(gr + gc) * g / u * (h / kTwoPi);
    };
    std::vector<std::complex<double>> W0(M + 1), W1(M + 1);
    for (std::size_t m = 0; m <= M; ++m) {
        W0[m] = nodeWeight(h * static_cast<double>(m), 0);
        W1[m] = nodeWeight(h * static_cast<double>(m), 1);
    }

    double Lambda1 = 0.0;
    for (std::size_t n = 1; n <= nmax; ++n) {
        if (An[n] == 0.0) continue;
        double ln = std::log(static_cast<double>(n));
        // V_j(n) = n^{-c} [W_j[0] + 2 sum_m Re(W_j[m] e^{-i tau_m ln n})]
        double v0 = W0[0].real(), v1 = W1[0].real();
        for (std::size_t m = 1; m <= M; ++m) {
            double ang = -h * static_cast<double>(m) * ln;
            double cs = std::cos(ang), sn = std::sin(ang);
            v0 += 2.0 * (W0[m].real() * cs - W0[m].imag() * sn);
            v1 += 2.0 * (W1[m].real() * cs - W1[m].imag() * sn);
        }
        double nc = std::pow(static_cast<double>(n), -c);
        Lambda1 += An[n] * nc * (v1 / static_cast<double>(n) + v0);
    }
    // L(1) = Lambda(1) / (GammaR(2) GammaC(w))
    double gammaR2 = std::pow(kPi, -1.0) * std::tgamma(1.0);
    double gammaCw = 2.0 * std::pow(kTwoPi, -static_cast<double>(w)) *
                     std::tgamma(static_cast<double>(w));
    return Lambda1 / (gammaR2 * gammaCw);
}

double eulerFactorEta(double lambda2, std::int64_t eta, double s) {
    int sym = kronecker(eta, 2);
    double x = std::pow(2.0, -s);
    double denom = 1.0 - lambda2 * sym * x + x * x;
    if (denom == 0.0) throw std::domain_error("eulerFactorEta: singular Euler factor");
    return 1.0 / denom;
}

}  // namespace skque
