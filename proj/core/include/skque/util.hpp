#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace skque {

/// Smallest-prime-factor sieve; backbone of every multiplicative
/// computation in the library (character values, Moebius, divisor
/// functions, squarefree decompositions).
class FactorSieve {
public:
    explicit FactorSieve(std::int64_t limit);

    std::int64_t limit() const { return static_cast<std::int64_t>(spf_.size()) - 1; }
    bool isPrime(std::int64_t n) const { return n >= 2 && spf_[n] == n; }
    std::int32_t smallestFactor(std::int64_t n) const { return spf_[n]; }

    /// (prime, exponent) pairs in increasing prime order.
    std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n) const;
    std::vector<std::int64_t> divisors(std::int64_t n) const;
    std::vector<std::int64_t> primesUpTo(std::int64_t n) const;
    int moebius(std::int64_t n) const;
    bool isSquarefree(std::int64_t n) const;
    /// n = s * f^2 with s squarefree.
    std::pair<std::int64_t, std::int64_t> squarefreePart(std::int64_t n) const;

private:
    std::vector<std::int32_t> spf_;
};

std::int64_t isqrtFloor(std::int64_t n);
bool isPerfectSquare(std::int64_t n, std::int64_t* root = nullptr);
std::int64_t powMod(std::int64_t base, std::int64_t exp, std::int64_t mod);
std::int64_t invMod(std::int64_t a, std::int64_t mod);

/// Wall-clock seconds, for report metadata only.
double wallTime();

/// FNV-1a, used to fingerprint configurations inside reports.
std::uint64_t fnv1a(const std::string& data);

std::string formatDouble(double x);

}  // namespace skque
