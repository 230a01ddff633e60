#include "skque/util.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace skque {

FactorSieve::FactorSieve(std::int64_t limit) {
    if (limit < 1) throw std::invalid_argument("FactorSieve: limit must be >= 1");
    spf_.assign(static_cast<std::size_t>(limit) + 1, 0);
    for (std::int64_t i = 2; i <= limit; ++i) {
        if (spf_[i] == 0) {
            for (std::int64_t j = i; j <= limit; j += i)
                if (spf_[j] == 0) spf_[j] = static_cast<std::int32_t>(i);
        }
    }
}

std::vector<std::pair<std::int64_t, int>> FactorSieve::factor(std::int64_t n) const {
    if (n < 1 || n > limit()) throw std::out_of_range("FactorSieve::factor: n out of range");
    std::vector<std::pair<std::int64_t, int>> out;
    while (n > 1) {
        std::int64_t p = spf_[n];
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.emplace_back(p, e);
    }
    return out;
}

std::vector<std::int64_t> FactorSieve::divisors(std::int64_t n) const {
    std::vector<std::int64_t> out{1};
    for (auto [p, e] : factor(n)) {
        std::size_t base = out.size();
        std::int64_t pe = 1;
        for (int i = 1; i <= e; ++i) {
            pe *= p;
            for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pe);
        }
    }
    return out;
}

std::vector<std::int64_t> FactorSieve::primesUpTo(std::int64_t n) const {
    if (n > limit()) throw std::out_of_range("FactorSieve::primesUpTo: n out of range");
    std::vector<std::int64_t> ps;
    for (std::int64_t i = 2; i <= n; ++i)
        if (spf_[i] == i) ps.push_back(i);
    return ps;
}

int FactorSieve::moebius(std::int64_t n) const {
    int mu = 1;
    for (auto [p, e] : factor(n)) {
        (void)p;
        if (e > 1) return 0;
        mu = -mu;
    }
    return mu;
}

bool FactorSieve::isSquarefree(std::int64_t n) const { return moebius(n) != 0; }

std::pair<std::int64_t, std::int64_t> FactorSieve::squarefreePart(std::int64_t n) const {
    std::int64_t s = 1, f = 1;
    for (auto [p, e] : factor(n)) {
        for (int i = 0; i + 1 < e; i += 2) f *= p;
        if (e % 2 == 1) s *= p;
    }
    return {s, f};
}

std::int64_t isqrtFloor(std::int64_t n) {
    if (n < 0) throw std::invalid_argument("isqrtFloor: negative argument");
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool isPerfectSquare(std::int64_t n, std::int64_t* root) {
    if (n < 0) return false;
    std::int64_t r = isqrtFloor(n);
    if (r * r != n) return false;
    if (root) *root = r;
    return true;
}

std::int64_t powMod(std::int64_t base, std::int64_t exp, std::int64_t mod) {
    if (mod <= 0) throw std::invalid_argument("powMod: modulus must be positive");
    std::int64_t r = 1 % mod;
    base %= mod;
    if (base < 0) base += mod;
    while (exp > 0) {
        if (exp & 1) r = static_cast<std::int64_t>((__int128)r * base % mod);
        base = static_cast<std::int64_t>((__int128)base * base % mod);
        exp >>= 1;
    }
    return r;
}

std::int64_t invMod(std::int64_t a, std::int64_t mod) {
    std::int64_t g = std::gcd(a, mod);
    if (g != 1) throw std::invalid_argument("invMod: arguments not coprime");
    std::int64_t r0 = mod, r1 = a % mod, t0 = 0, t1 = 1;
    if (r1 < 0) r1 += mod;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        r0 -= q * r1; std::swap(r0, r1);
        t0 -= q * t1; std::swap(t0, t1);
    }
    return t0 < 0 ? t0 + mod : t0;
}

double wallTime() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string formatDouble(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace skque
