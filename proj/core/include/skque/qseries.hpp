#pragma once

#include <vector>

#include "skque/rational.hpp"

namespace skque {

/// B_n with B_1 = -1/2.
Rat bernoulli(unsigned long n);

/// Level-1 Eisenstein series E_w = 1 - (2w/B_w) sum sigma_{w-1}(n) q^n,
/// coefficients 0..nterms-1. Rational in general (e.g. w = 12).
std::vector<Rat> eisenstein(unsigned long w, std::size_t nterms);

/// Same, for the weights where E_w is integral (w in {4,6,8,10,14}).
std::vector<Int> eisensteinInt(unsigned long w, std::size_t nterms);

/// Ramanujan Delta = (E4^3 - E6^2)/1728, coefficients 0..nterms-1.
std::vector<Int> delta(std::size_t nterms);

/// Coefficient table of the normalized Hecke eigenform of weight w on
/// SL2(Z) when dim S_w = 1 (w in {12,16,18,20,22,26}).
struct Eigenform {
    long weight = 0;
    std::vector<Int> a;  // a[0] = 0, a[1] = 1

    std::size_t terms() const { return a.size(); }
    /// a(n) / n^{(w-1)/2}
    double normalizedCoeff(std::size_t n) const;
};

Eigenform eigenform(unsigned long w, std::size_t nterms);

/// T_p on a weight-w q-expansion: (T_p s)(n) = s(pn) + p^{w-1} s(n/p).
/// Output has floor((nterms-1)/p)+1 coefficients.
std::vector<Int> heckeApply(const std::vector<Int>& series, long p, unsigned long w);

std::vector<Int> convolve(const std::vector<Int>& a, const std::vector<Int>& b,
                          std::size_t nterms);

}  // namespace skque
