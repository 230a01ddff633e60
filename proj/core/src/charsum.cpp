#include "skque/charsum.hpp"

#include "skque/characters.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace skque {

namespace {

std::int64_t modp(std::int64_t x, std::int64_t p) {
    std::int64_t r = x % p;
    return r < 0 ? r + p : r;
}

int chiPow(int chi, int power) {
    if (power == 0) return 1;
    if (chi == 0) return 0;
    return power % 2 == 1 ? chi : 1;
}

void requireOddPrime(std::int64_t p) {
    if (p < 3 || p % 2 == 0) throw std::invalid_argument("charsum: p must be an odd prime");
    for (std::int64_t q = 3; q * q <= p; q += 2)
        if (p % q == 0) throw std::invalid_argument("charsum: p must be an odd prime");
}

}  // namespace

std::int64_t countTriples(std::int64_t p, std::int64_t j) {
    requireOddPrime(p);
    j = modp(j, p);
    std::int64_t count = 0;
    for (std::int64_t r = 0; r < p; ++r)
        for (std::int64_t m = 0; m < p; ++m)
            for (std::int64_t n = 0; n < p; ++n)
                if (modp(r * r - 4 * m * n, p) == j) ++count;
    return count;
}

std::int64_t countTriplesClosed(std::int64_t p, std::int64_t j) {
    return p * p + kronecker(modp(j, p), p) * p;
}

std::int64_t bewSum(std::int64_t p, std::int64_t a, std::int64_t b, std::int64_t c) {
    requireOddPrime(p);
    std::int64_t s = 0;
    for (std::int64_t x = 0; x < p; ++x)
        s += kronecker(modp(a * x * x + b * x + c, p), p);
    return s;
}

std::int64_t bewSumClosed(std::int64_t p, std::int64_t a, std::int64_t b, std::int64_t c) {
    requireOddPrime(p);
    if (modp(a, p) == 0) throw std::invalid_argument("bewSumClosed: p | a not covered");
    int chiA = kronecker(modp(a, p), p);
    if (modp(b * b - 4 * a * c, p) == 0) return (p - 1) * chiA;
    return -chiA;
}

std::int64_t localSum(std::int64_t p, int alpha, int beta,
                      const std::array<std::int64_t, 3>& L) {
    requireOddPrime(p);
    if (alpha < 0 || beta < 0) throw std::invalid_argument("localSum: negative exponent");
    std::vector<int> chi(p);
    for (std::int64_t x = 0; x < p; ++x) chi[x] = kronecker(x, p);
    const std::int64_t l1 = modp(L[0], p), l2 = modp(L[1], p), l3 = modp(L[2], p);
    std::int64_t s = 0;
    for (std::int64_t m = 0; m < p; ++m)
        for (std::int64_t r = 0; r < p; ++r)
            for (std::int64_t n = 0; n < p; ++n) {
                std::int64_t d1 = modp(r * r - 4 * m * n, p);
                std::int64_t d2 = modp((r + l2) * (r + l2) - 4 * (m + l1) * (n + l3), p);
                s += chiPow(chi[d1], alpha) * chiPow(chi[d2], beta);
            }
    return s;
}

Rat fst(std::int64_t s, std::int64_t t, const std::array<std::int64_t, 3>& L,
        const FactorSieve& sieve) {
    if (s < 1 || t < 1) throw std::invalid_argument("fst: s, t must be positive");
    if (s % 2 == 0 || t % 2 == 0) throw std::invalid_argument("fst: s, t must be odd");
    Rat out(1);
    std::int64_t st = s * t;
    for (auto [p, e] : sieve.factor(st)) {
        (void)e;
        int alpha = 0, beta = 0;
        for (std::int64_t q = s; q % p == 0; q /= p) ++alpha;
        for (std::int64_t q = t; q % p == 0; q /= p) ++beta;
        Rat local{Int(localSum(p, alpha, beta, L))};
        out *= local / Rat(Int(p * p * p));
    }
    return out;
}

double GaussianWindow::operator()(double x) const {
    double u = (x - center) / sigma;
    return std::exp(-std::numbers::pi * u * u);
}

std::pair<double, double> GaussianWindow::support() const {
    // exp(-pi u^2) < 1e-13 beyond |u| ~ 3.07; pad a little
    double half = 3.2 * sigma;
    return {center - half, center + half};
}

namespace {

std::vector<double> residueMass(double k, std::int64_t q, const GaussianWindow& F) {
    std::vector<double> T(static_cast<std::size_t>(q), 0.0);
    auto [lo, hi] = F.support();
    auto mLo = static_cast<std::int64_t>(std::floor(lo * k)) - 1;
    auto mHi = static_cast<std::int64_t>(std::ceil(hi * k)) + 1;
    for (std::int64_t m = mLo; m <= mHi; ++m)
        T[static_cast<std::size_t>(modp(m, q))] += F(static_cast<double>(m) / k);
    return T;
}

}  // namespace

double tripleSumRegrouped(double k, std::int64_t s, std::int64_t t,
                          const std::array<std::int64_t, 3>& L, const GaussianWindow& F1,
                          const GaussianWindow& F2, const GaussianWindow& F3) {
    const std::int64_t q = s * t;
    auto Tm = residueMass(k, q, F1);
    auto Tn = residueMass(k, q, F2);
    auto Tr = residueMass(k, q, F3);
    std::vector<int> js(static_cast<std::size_t>(s)), jt(static_cast<std::size_t>(t));
    for (std::int64_t x = 0; x < s; ++x) js[x] = kronecker(x, s);
    for (std::int64_t x = 0; x < t; ++x) jt[x] = kronecker(x, t);
    double total = 0.0;
    for (std::int64_t mu = 0; mu < q; ++mu) {
        for (std::int64_t rho = 0; rho < q; ++rho) {
            double wmr = Tm[mu] * Tr[rho];
            if (wmr == 0.0) continue;
            for (std::int64_t nu = 0; nu < q; ++nu) {
                int c1 = js[modp(rho * rho - 4 * mu * nu, s)];
                int c2 = jt[modp((rho + L[1]) * (rho + L[1]) -
                                 4 * (mu + L[0]) * (nu + L[2]), t)];
                int c = c1 * c2;
                if (c != 0) total += c * wmr * Tn[nu];
            }
        }
    }
    return total;
}

double tripleSumLiteral(double k, std::int64_t s, std::int64_t t,
                        const std::array<std::int64_t, 3>& L, const GaussianWindow& F1,
                        const GaussianWindow& F2, const GaussianWindow& F3) {
    auto [lo1, hi1] = F1.support();
    auto [lo2, hi2] = F2.support();
    auto [lo3, hi3] = F3.support();
    auto b = [&](double lo, double hi) {
        return std::pair{static_cast<std::int64_t>(std::floor(lo * k)) - 1,
                         static_cast<std::int64_t>(std::ceil(hi * k)) + 1};
    };
    auto [mLo, mHi] = b(lo1, hi1);
    auto [nLo, nHi] = b(lo2, hi2);
    auto [rLo, rHi] = b(lo3, hi3);
    double total = 0.0;
    for (std::int64_t m = mLo; m <= mHi; ++m)
        for (std::int64_t n = nLo; n <= nHi; ++n)
            for (std::int64_t r = rLo; r <= rHi; ++r) {
                int c1 = kronecker(modp(r * r - 4 * m * n, s), s);
                if (c1 == 0) continue;
                int c2 = kronecker(modp((r + L[1]) * (r + L[1]) -
                                        4 * (m + L[0]) * (n + L[2]), t), t);
                if (c2 == 0) continue;
                total += c1 * c2 * F1(m / k) * F2(n / k) * F3(r / k);
            }
    return total;
}

PoissonCheckResult poissonMainTermCheck(double k, std::int64_t s, std::int64_t t,
                                        const std::array<std::int64_t, 3>& L,
                                        const GaussianWindow& F1, const GaussianWindow& F2,
                                        const GaussianWindow& F3, const FactorSieve& sieve) {
    if (k <= 0) throw std::invalid_argument("poissonMainTermCheck: k must be positive");
    PoissonCheckResult res;
    res.lhs = tripleSumRegrouped(k, s, t, L, F1, F2, F3);
    double f = toDouble(fst(s, t, L, sieve));
    res.rhs = k * k * k * F1.integral() * F2.integral() * F3.integral() * f;
    double scale = std::max(std::abs(res.lhs), std::abs(res.rhs));
    res.relDev = scale > 0 ? std::abs(res.lhs - res.rhs) / scale : 0.0;
    return res;
}

}  // namespace skque
