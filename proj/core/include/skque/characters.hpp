#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "skque/rational.hpp"
#include "skque/util.hpp"

namespace skque {

/// Kronecker symbol (a|n), full integer domain.
int kronecker(std::int64_t a, std::int64_t n);

/// True when D is a fundamental discriminant (including D = 1).
bool isFundamental(std::int64_t D, const FactorSieve& sieve);

/// tau(chi_D) = sum_{a mod |D|} (D|a) e(a/|D|).
std::complex<double> gaussSum(std::int64_t D);

/// B_{r,chi_D} = |D|^{r-1} sum_{a=1}^{|D|} chi_D(a) B_r(a/|D|), exact.
Rat generalizedBernoulli(unsigned long r, std::int64_t D);

/// L(1-r, chi_D) = -B_{r,chi_D}/r.
Rat lChiNegative(unsigned long r, std::int64_t D);

/// g_j(n) = sum_{b mod n} (b|n) e(jb/n).
std::complex<double> gJ(std::int64_t j, std::int64_t n);

/// Variant with the phase e(b/n) independent of j; kept for the Poisson
/// lemma cross-check, which rejects it.
std::complex<double> gJDisplayed(std::int64_t j, std::int64_t n);

/// chi_d(n) for n = 0..nmax, filled multiplicatively from prime values.
std::vector<std::int8_t> chiTable(std::int64_t d, std::size_t nmax, const FactorSieve& sieve);

}  // namespace skque
