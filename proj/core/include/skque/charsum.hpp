#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "skque/rational.hpp"
#include "skque/util.hpp"

namespace skque {

/// #{(r, m, n) in F_p^3 : r^2 - 4mn = j mod p}, by direct count.
std::int64_t countTriples(std::int64_t p, std::int64_t j);

/// The closed form p^2 + (j|p) p of the same count.
std::int64_t countTriplesClosed(std::int64_t p, std::int64_t j);

/// sum_{x mod p} ((a x^2 + b x + c)|p), by direct count.
std::int64_t bewSum(std::int64_t p, std::int64_t a, std::int64_t b, std::int64_t c);

/// Complete-sum evaluation: (p-1)(a|p) when p | b^2 - 4ac, else -(a|p).
std::int64_t bewSumClosed(std::int64_t p, std::int64_t a, std::int64_t b, std::int64_t c);

/// Local shifted character sum over (m, r, n) in F_p^3:
///   sum chi^alpha(r^2 - 4mn) chi^beta((r+l2)^2 - 4(m+l1)(n+l3))
/// with chi = (.|p), chi^0 = 1, even powers >= 2 acting as the indicator
/// of p nmid argument. Exact, O(p^3).
std::int64_t localSum(std::int64_t p, int alpha, int beta,
                      const std::array<std::int64_t, 3>& L);

/// f(s, t; L) = prod_{p | st} p^{-3} localSum(p, v_p(s), v_p(t), L mod p).
Rat fst(std::int64_t s, std::int64_t t, const std::array<std::int64_t, 3>& L,
        const FactorSieve& sieve);

/// Smooth cutoff exp(-pi (x - center)^2 / sigma^2); integral() = sigma.
struct GaussianWindow {
    double center = 1.0;
    double sigma = 0.25;

    double operator()(double x) const;
    double integral() const { return sigma; }
    /// support [lo, hi] outside which the window mass is below 1e-12
    std::pair<double, double> support() const;
};

struct PoissonCheckResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double relDev = 0.0;
};

/// Compares sum_{m,n,r} (d1|s)(d2|t) F1(m/k) F2(n/k) F3(r/k), evaluated
/// exactly by residue-class regrouping mod st, with its Poisson main term
/// k^3 F1hat(0) F2hat(0) F3hat(0) f(s,t).
PoissonCheckResult poissonMainTermCheck(double k, std::int64_t s, std::int64_t t,
                                        const std::array<std::int64_t, 3>& L,
                                        const GaussianWindow& F1, const GaussianWindow& F2,
                                        const GaussianWindow& F3, const FactorSieve& sieve);

/// Same triple sum by literal enumeration; only sensible for small k.
double tripleSumLiteral(double k, std::int64_t s, std::int64_t t,
                        const std::array<std::int64_t, 3>& L, const GaussianWindow& F1,
                        const GaussianWindow& F2, const GaussianWindow& F3);

/// The regrouped evaluation used inside poissonMainTermCheck.
double tripleSumRegrouped(double k, std::int64_t s, std::int64_t t,
                          const std::array<std::int64_t, 3>& L, const GaussianWindow& F1,
                          const GaussianWindow& F2, const GaussianWindow& F3);

}  // namespace skque
