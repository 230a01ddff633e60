#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "skque/dd.hpp"
#include "skque/rational.hpp"
#include "skque/util.hpp"

namespace skque {

double digammaReal(double x);

/// log Gamma(z) for Re z > 0, Lanczos approximation.
std::complex<double> lgammaComplex(std::complex<double> z);

/// L(1, chi_d) for fundamental d < 0 by the digamma formula
/// -(1/q) sum_a chi(a) psi(a/q).
double dirichletL1(std::int64_t d, const FactorSieve& sieve);

/// Hecke eigenvalues a_p of the weight-w eigenform read off the
/// q-expansion; pmax must stay within convolution reach.
std::vector<Int> apFromEigenform(unsigned long w, std::int64_t pmax);

/// Same eigenvalues from the level-1 trace formula,
///   a_p = -(1/24) sum_{t^2 <= 4p} P_w(t, p) H12(4p - t^2) - 1,
/// where P_w is the degree-(w-2) Gegenbauer recursion G_j = t G_{j-1} - p G_{j-2}.
/// hurwitz12 must cover indices up to 4 pmax. Only the dim-1 weights.
std::vector<Int> apTraceTable(unsigned long w, std::int64_t pmax,
                              const std::vector<std::int32_t>& hurwitz12,
                              const FactorSieve& sieve);

/// lambda(n) = a(n) n^{-(w-1)/2} filled multiplicatively from a_p.
/// apByPrime[i] belongs to the i-th prime <= nmax.
struct LambdaTable {
    unsigned long w = 0;
    std::vector<double> v;  // index 0 unused

    double operator[](std::size_t n) const { return v[n]; }
    std::size_t maxIndex() const { return v.size() - 1; }
};

LambdaTable lambdaTable(unsigned long w, std::size_t nmax, const std::vector<Int>& apByPrime,
                        const FactorSieve& sieve);

/// Double-double variant for the extended-precision calibration path.
struct LambdaTableDD {
    unsigned long w = 0;
    std::vector<DD> v;
};

LambdaTableDD lambdaTableDD(unsigned long w, std::size_t nmax, const std::vector<Int>& apByPrime,
                            const FactorSieve& sieve);

/// L(1/2, f x chi_d) for fundamental d < 0, via the exact incomplete-gamma
/// approximate functional equation with balance parameter A:
///   Lambda(1/2) = sum_n lambda(n) chi_d(n) sqrt(Q/n) [Qreg(w/2, nA/Q) + Qreg(w/2, n/(AQ))],
/// Q = |d|/(2pi), Qreg the regularized upper incomplete gamma. The value is
/// A-independent; varying A probes the functional equation.
double centralTwisted(std::int64_t d, double A, const LambdaTable& lambda,
                      const FactorSieve& sieve);

DD centralTwistedDD(std::int64_t d, double A, const LambdaTableDD& lambda,
                    const FactorSieve& sieve);

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a,x)/Gamma(a), integer a.
double upperGammaRegularized(long a, double x);

/// Real-parameter Gamma(s, x), series/continued-fraction split.
double upperGamma(double s, double x);

/// L(s, f) in the analytic normalization (s = 1/2 center), computed from the
/// classical-normalization AFE with incomplete gammas. an holds exact a(n).
double lfAt(unsigned long w, double s, const std::vector<Int>& an, double A = 1.0);

/// Truncated Dirichlet series sum_{n <= X} lambda(n) n^{-s} together with a
/// rigorous bound on the dropped tail (using lambda(n) <= d(n)).
struct PlainSum {
    double value = 0.0;
    double tailBound = 0.0;
};

PlainSum lfPlain(double s, const LambdaTable& lambda, std::size_t X);

/// L(1, sym^2 f) by a shifted-contour approximate functional equation with
/// kernel g(u) = exp((u/beta)^2) on Re u = c; nmax Dirichlet terms.
double symSquareAtOne(unsigned long w, const std::vector<Int>& apByPrime,
                      const FactorSieve& sieve, double beta = 3.0, double c = 2.0,
                      std::size_t nmax = 3000);

/// Euler-factor correction at 2 for the eta-restricted families:
/// L_{f,eta}(s) = (1 - lambda(2) (eta|2) 2^{-s} + 2^{-2s})^{-1}.
double eulerFactorEta(double lambda2, std::int64_t eta, double s);

}  // namespace skque
