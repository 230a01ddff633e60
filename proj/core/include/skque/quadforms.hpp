#pragma once

#include <cstdint>
#include <vector>

#include "skque/util.hpp"

namespace skque {

/// Integral binary quadratic form m x^2 + r xy + n y^2, i.e. the matrix
/// [[m, r/2], [r/2, n]] of an even-discriminant half-integral pair.
struct BinForm {
    std::int64_t m = 0;
    std::int64_t r = 0;
    std::int64_t n = 0;

    std::int64_t disc() const { return r * r - 4 * m * n; }
    std::int64_t content() const;
    bool isPositiveDefinite() const { return m > 0 && disc() < 0; }
    bool operator==(const BinForm&) const = default;
};

/// True iff -m < r <= m <= n with r >= 0 when m == n.
bool isReduced(const BinForm& f);

/// Gauss reduction of a positive definite form.
BinForm reduce(BinForm f);

/// All reduced forms of discriminant D < 0, primitive and imprimitive,
/// ordered by (m, r).
std::vector<BinForm> enumerateClasses(std::int64_t D);

/// Unit weight: 6, 4 or 2 according to disc/content^2 = -3, -4, other.
int epsilon(const BinForm& f);

/// h(D): number of primitive classes of discriminant D < 0.
std::int64_t classNumber(std::int64_t D);

/// h(-N) for all N <= X with -N = 0,1 mod 4, as table[N] (0 elsewhere).
std::vector<std::int32_t> classNumberTable(std::int64_t X);

/// 12 * H(N) for the Hurwitz class number, all 0 <= N <= X.
/// table[0] = -1 (H(0) = -1/12).
std::vector<std::int32_t> hurwitzTable12(std::int64_t X);

/// Contents of every class of discriminant -N, for all N <= X:
/// result[N] lists content(T) over reduced T with disc -N.
std::vector<std::vector<std::int32_t>> classContentsUpTo(std::int64_t X);

/// h(d0 f^2) from h(d0) for fundamental d0 < 0 by the conductor formula.
std::int64_t classNumberNonFundamental(std::int64_t d0, std::int64_t f,
                                       std::int64_t hFundamental,
                                       const FactorSieve& sieve);

}  // namespace skque
