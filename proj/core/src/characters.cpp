#include "skque/characters.hpp"

#include "skque/qseries.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace skque {

int kronecker(std::int64_t a, std::int64_t n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (n & 1) == 0) return 0;
    int k = 1;
    int v = 0;
    while ((n & 1) == 0) { n >>= 1; ++v; }
    if (v & 1) {
        std::int64_t r = a % 8;
        if (r < 0) r += 8;
        if (r == 3 || r == 5) k = -k;
    }
    if (n < 0) {
        n = -n;
        if (a < 0) k = -k;
    }
    // n odd positive from here; binary reciprocity loop
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        v = 0;
        while ((a & 1) == 0) { a >>= 1; ++v; }
        if (v & 1) {
            std::int64_t r = n & 7;
            if (r == 3 || r == 5) k = -k;
        }
        if ((a & 3) == 3 && (n & 3) == 3) k = -k;
        std::int64_t t = n % a;
        n = a;
        a = t;
    }
    return n == 1 ? k : 0;
}

bool isFundamental(std::int64_t D, const FactorSieve& sieve) {
    if (D == 1) return true;
    if (D == 0) return false;
    std::int64_t m = D % 4;
    if (m < 0) m += 4;
    if (m == 1) return sieve.isSquarefree(D < 0 ? -D : D);
    if (m != 0) return false;
    std::int64_t q = D / 4;
    std::int64_t qm = q % 4;
    if (qm < 0) qm += 4;
    if (qm != 2 && qm != 3) return false;
    return sieve.isSquarefree(q < 0 ? -q : q);
}

std::complex<double> gaussSum(std::int64_t D) {
    if (D == 0) throw std::invalid_argument("gaussSum: D must be nonzero");
    std::int64_t q = D < 0 ? -D : D;
    std::complex<double> s(0.0, 0.0);
    const double twoPiOverQ = 2.0 * std::numbers::pi / static_cast<double>(q);
    for (std::int64_t a = 1; a <= q; ++a) {
        int chi = kronecker(D, a);
        if (chi == 0) continue;
        double th = twoPiOverQ * static_cast<double>(a);
        s += std::complex<double>(chi * std::cos(th), chi * std::sin(th));
    }
    return s;
}

Rat generalizedBernoulli(unsigned long r, std::int64_t D) {
    if (D == 0) throw std::invalid_argument("generalizedBernoulli: D must be nonzero");
    std::int64_t q = D < 0 ? -D : D;
    // B_{r,chi} = sum_j C(r,j) B_j q^{j-1} S_{r-j},  S_t = sum_a chi(a) a^t
    std::vector<Int> S(r + 1, Int(0));
    for (std::int64_t a = 1; a <= q; ++a) {
        int chi = kronecker(D, a);
        if (chi == 0) continue;
        Int ap(1);
        for (unsigned long t = 0; t <= r; ++t) {
            if (chi > 0) S[t] += ap; else S[t] -= ap;
            if (t < r) ap *= a;
        }
    }
    Rat result(0);
    Rat qr{Int(q)};
    for (unsigned long j = 0; j <= r; ++j) {
        Rat term = Rat(binomial(r, j)) * bernoulli(j) * Rat(S[r - j]);
        // q^{j-1}
        if (j == 0) term /= qr;
        else term *= ratPow(qr, j - 1);
        result += term;
    }
    return result;
}

Rat lChiNegative(unsigned long r, std::int64_t D) {
    if (r == 0) throw std::invalid_argument("lChiNegative: r must be >= 1");
    return -generalizedBernoulli(r, D) / Rat(Int(static_cast<long>(r)));
}

std::complex<double> gJ(std::int64_t j, std::int64_t n) {
    if (n <= 0) throw std::invalid_argument("gJ: n must be positive");
    std::complex<double> s(0.0, 0.0);
    const double twoPiOverN = 2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::int64_t b = 0; b < n; ++b) {
        int chi = kronecker(b, n);
        if (chi == 0) continue;
        double th = twoPiOverN * static_cast<double>((__int128)j * b % n);
        s += std::complex<double>(chi * std::cos(th), chi * std::sin(th));
    }
    return s;
}

std::complex<double> gJDisplayed(std::int64_t j, std::int64_t n) {
    (void)j;
    if (n <= 0) throw std::invalid_argument("gJDisplayed: n must be positive");
    std::complex<double> s(0.0, 0.0);
    const double twoPiOverN = 2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::int64_t b = 0; b < n; ++b) {
        int chi = kronecker(b, n);
        if (chi == 0) continue;
        double th = twoPiOverN * static_cast<double>(b);
        s += std::complex<double>(chi * std::cos(th), chi * std::sin(th));
    }
    return s;
}

std::vector<std::int8_t> chiTable(std::int64_t d, std::size_t nmax, const FactorSieve& sieve) {
    if (static_cast<std::int64_t>(nmax) > sieve.limit())
        throw std::out_of_range("chiTable: sieve too small");
    std::vector<std::int8_t> chi(nmax + 1, 0);
    if (nmax >= 1) chi[1] = 1;
    for (std::size_t n = 2; n <= nmax; ++n) {
        auto p = static_cast<std::size_t>(sieve.smallestFactor(static_cast<std::int64_t>(n)));
        if (p == n) chi[n] = static_cast<std::int8_t>(kronecker(d, static_cast<std::int64_t>(n)));
        else chi[n] = static_cast<std::int8_t>(chi[p] * chi[n / p]);
    }
    return chi;
}

}  // namespace skque
