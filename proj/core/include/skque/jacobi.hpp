#pragma once

#include <cstdint>
#include <vector>

#include "skque/rational.hpp"
#include "skque/util.hpp"

namespace skque {

/// Cohen class number H(r, N), exact. H(r, 0) = zeta(1 - 2r); for N > 0
/// with -N = D0 f^2, D0 fundamental,
/// H(r, N) = L(1-r, chi_{D0}) sum_{t | f} mu(t) chi_{D0}(t) t^{r-1} sigma_{2r-1}(f/t),
/// and H(r, N) = 0 for N = 1, 2 mod 4.
Rat cohenH(unsigned long r, std::int64_t N, const FactorSieve& sieve);

/// H(r, M)/H(r, 0) for M = 0..Mmax. Integral for r in {3, 5}; these are the
/// coefficients of the index-1 Jacobi Eisenstein series of weight r + 1,
/// read off by discriminant M = 4n - r^2.
std::vector<Int> cohenHNormalizedTable(unsigned long r, std::int64_t Mmax,
                                       const FactorSieve& sieve);

/// Coefficient table c(n, rr) = d[4n - rr^2] of E_{j,1}, j in {4, 6}.
std::vector<Int> jacobiEisenstein(unsigned long j, std::int64_t Mmax,
                                  const FactorSieve& sieve);

/// Fourier coefficients of the half-integral Kohnen form attached to the
/// index-1 Jacobi cusp form of weight k: b[N] with c(n, rr) = b[4n - rr^2].
struct KohnenTable {
    unsigned long k = 0;
    std::vector<Int> b;

    std::int64_t maxIndex() const { return static_cast<std::int64_t>(b.size()) - 1; }
    const Int& at(std::int64_t N) const;
};

/// phi_k = E_{k-4} E_{4,1} - E_{k-6} E_{6,1} for k in {10, 12, 14};
/// returns the coefficient-by-discriminant table of the cusp form.
KohnenTable jacobiCuspForm(unsigned long k, std::int64_t Mmax, const FactorSieve& sieve);

/// extractKohnen is the identity on the stored table; kept as the named
/// hinge between the Jacobi picture and the half-integral picture.
inline const std::vector<Int>& extractKohnen(const KohnenTable& t) { return t.b; }

/// c(n, rr) of phi_k by the defining product, any rr (not just 0/1).
/// Used to certify that coefficients depend on 4n - rr^2 alone.
Int jacobiProductCoeff(unsigned long k, std::int64_t n, std::int64_t rr,
                       const FactorSieve& sieve);

/// Number of pairs (n, rr) with 0 <= rr <= rMax and 0 <= 4n - rr^2 <= Nmax
/// whose product-formula coefficient disagrees with b[4n - rr^2]. Zero
/// certifies the discriminant-only dependence on the whole window; rr < 0
/// is covered by the rr -> -rr symmetry of index-1 coefficients.
std::int64_t kohnenRepresentationMismatches(unsigned long k, std::int64_t Nmax,
                                            std::int64_t rMax, const FactorSieve& sieve);

/// Exact check of b(a^2 |d|) = b(|d|) sum_{uv = a} mu(u) chi_d(u) u^{k-2} a_f(v)
/// for fundamental d < 0, against the weight-(2k-2) eigenform coefficients.
bool shimuraCheck(const KohnenTable& table, const std::vector<Int>& eigenformCoeffs,
                  std::int64_t d, std::int64_t a, const FactorSieve& sieve);

}  // namespace skque
