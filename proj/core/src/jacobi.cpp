#include "skque/jacobi.hpp"

#include "skque/characters.hpp"
#include "skque/qseries.hpp"

#include <stdexcept>

namespace skque {

namespace {

Rat hurwitzZeta0(unsigned long r) {
    // H(r, 0) = zeta(1 - 2r) = -B_{2r} / (2r)
    return -bernoulli(2 * r) / Rat(Int(static_cast<long>(2 * r)));
}

Int int128ToMpz(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? -(unsigned __int128)v : (unsigned __int128)v;
    Int hi(static_cast<unsigned long>(u >> 64));
    Int out = (hi << 64) + Int(static_cast<unsigned long>(u & ~0ULL));
    return neg ? -out : out;
}

// L(1-r, chi_{D0}) via power sums S_t = sum_a chi(a) a^t accumulated in
// 128-bit integers; valid while q^{r+1} < 2^127 (q <= ~10^5 for r = 5).
Rat lChiNegativeFast(unsigned long r, std::int64_t D0, const FactorSieve& sieve) {
    std::int64_t q = -D0;
    auto chi = chiTable(D0, static_cast<std::size_t>(q), sieve);
    std::vector<__int128> S(r + 1, 0);
    for (std::int64_t a = 1; a <= q; ++a) {
        int c = chi[static_cast<std::size_t>(a)];
        if (c == 0) continue;
        __int128 ap = 1;
        for (unsigned long t = 0; t <= r; ++t) {
            S[t] += c > 0 ? ap : -ap;
            if (t < r) ap *= a;
        }
    }
    Rat B(0);
    Rat qr{Int(q)};
    for (unsigned long j = 0; j <= r; ++j) {
        Rat term = Rat(binomial(r, j)) * bernoulli(j) * Rat(int128ToMpz(S[r - j]));
        if (j == 0) term /= qr;
        else term *= ratPow(qr, j - 1);
        B += term;
    }
    return -B / Rat(Int(static_cast<long>(r)));
}

Rat divisorFactor(unsigned long r, std::int64_t D0, std::int64_t f, const FactorSieve& sieve) {
    Rat s(0);
    for (std::int64_t t : sieve.divisors(f)) {
        int mu = sieve.moebius(t);
        if (mu == 0) continue;
        int chi = kronecker(D0, t);
        if (chi == 0) continue;
        Int term = intPow(Int(t), r - 1);
        std::int64_t ft = f / t;
        Int sig(0);
        for (std::int64_t dv : sieve.divisors(ft)) sig += intPow(Int(dv), 2 * r - 1);
        s += Rat(Int(mu * chi) * term * sig);
    }
    return s;
}

}  // namespace

Rat cohenH(unsigned long r, std::int64_t N, const FactorSieve& sieve) {
    if (r == 0) throw std::invalid_argument("cohenH: r must be >= 1");
    if (N < 0) throw std::invalid_argument("cohenH: N must be >= 0");
    if (N == 0) return hurwitzZeta0(r);
    std::int64_t m4 = N % 4;
    if (m4 == 1 || m4 == 2) return Rat(0);
    auto [s, f] = sieve.squarefreePart(N);
    std::int64_t D0, cond;
    if (s % 4 == 3) {
        D0 = -s;
        cond = f;
    } else {  // -s = 2, 3 mod 4: fundamental discriminant is -4s
        D0 = -4 * s;
        if (f % 2 != 0) throw std::logic_error("cohenH: inconsistent decomposition");
        cond = f / 2;
    }
    return lChiNegative(r, D0) * divisorFactor(r, D0, cond, sieve);
}

std::vector<Int> cohenHNormalizedTable(unsigned long r, std::int64_t Mmax,
                                       const FactorSieve& sieve) {
    if (Mmax < 0) throw std::invalid_argument("cohenHNormalizedTable: Mmax must be >= 0");
    std::vector<Rat> H(static_cast<std::size_t>(Mmax) + 1, Rat(0));
    H[0] = hurwitzZeta0(r);
    // group by fundamental discriminant: one L-value, many conductors
    for (std::int64_t q = 3; q <= Mmax; ++q) {
        std::int64_t D0 = -q;
        if (!isFundamental(D0, sieve)) continue;
        Rat L = lChiNegativeFast(r, D0, sieve);
        for (std::int64_t f = 1; q * f * f <= Mmax; ++f)
            H[q * f * f] = L * divisorFactor(r, D0, f, sieve);
    }
    Rat h0 = H[0];
    std::vector<Int> out(H.size());
    for (std::size_t i = 0; i < H.size(); ++i) {
        Rat v = H[i] / h0;
        v.canonicalize();
        if (v.get_den() != 1)
            throw std::logic_error("cohenHNormalizedTable: nonintegral normalized value");
        out[i] = v.get_num();
    }
    return out;
}

std::vector<Int> jacobiEisenstein(unsigned long j, std::int64_t Mmax,
                                  const FactorSieve& sieve) {
    if (j != 4 && j != 6)
        throw std::invalid_argument("jacobiEisenstein: only weights 4 and 6 are provided");
    return cohenHNormalizedTable(j - 1, Mmax, sieve);
}

const Int& KohnenTable::at(std::int64_t N) const {
    if (N < 0 || N > maxIndex()) throw std::out_of_range("KohnenTable::at: N out of range");
    return b[static_cast<std::size_t>(N)];
}

KohnenTable jacobiCuspForm(unsigned long k, std::int64_t Mmax, const FactorSieve& sieve) {
    if (k != 10 && k != 12 && k != 14)
        throw std::invalid_argument("jacobiCuspForm: k must be 10, 12 or 14");
    auto d41 = jacobiEisenstein(4, Mmax, sieve);
    auto d61 = jacobiEisenstein(6, Mmax, sieve);
    std::size_t eTerms = static_cast<std::size_t>(Mmax / 4) + 1;
    auto ea = eisensteinInt(k - 4, eTerms);
    auto eb = eisensteinInt(k - 6, eTerms);
    KohnenTable t;
    t.k = k;
    t.b.assign(static_cast<std::size_t>(Mmax) + 1, Int(0));
    for (std::int64_t N = 0; N <= Mmax; ++N) {
        std::int64_t m4 = N % 4;
        if (m4 == 1 || m4 == 2) continue;
        Int acc(0);
        for (std::int64_t M = m4; M <= N; M += 4) {
            std::size_t idx = static_cast<std::size_t>((N - M) / 4);
            mpz_addmul(acc.get_mpz_t(), ea[idx].get_mpz_t(), d41[M].get_mpz_t());
            mpz_submul(acc.get_mpz_t(), eb[idx].get_mpz_t(), d61[M].get_mpz_t());
        }
        t.b[static_cast<std::size_t>(N)] = acc;
    }
    if (t.b[0] != 0) throw std::logic_error("jacobiCuspForm: constant term does not vanish");
    return t;
}

Int jacobiProductCoeff(unsigned long k, std::int64_t n, std::int64_t rr,
                       const FactorSieve& sieve) {
    std::int64_t M = 4 * n - rr * rr;
    if (M < 0) return Int(0);
    auto d41 = jacobiEisenstein(4, M, sieve);
    auto d61 = jacobiEisenstein(6, M, sieve);
    auto ea = eisensteinInt(k - 4, static_cast<std::size_t>(n) + 1);
    auto eb = eisensteinInt(k - 6, static_cast<std::size_t>(n) + 1);
    Int acc(0);
    for (std::int64_t n2 = 0; n2 <= n; ++n2) {
        std::int64_t M2 = 4 * n2 - rr * rr;
        if (M2 < 0 || M2 > M) continue;
        std::size_t idx = static_cast<std::size_t>(n - n2);
        mpz_addmul(acc.get_mpz_t(), ea[idx].get_mpz_t(), d41[M2].get_mpz_t());
        mpz_submul(acc.get_mpz_t(), eb[idx].get_mpz_t(), d61[M2].get_mpz_t());
    }
    return acc;
}

std::int64_t kohnenRepresentationMismatches(unsigned long k, std::int64_t Nmax,
                                            std::int64_t rMax, const FactorSieve& sieve) {
    if (Nmax < 0 || rMax < 0)
        throw std::invalid_argument("kohnenRepresentationMismatches: negative window");
    KohnenTable table = jacobiCuspForm(k, Nmax, sieve);
    auto d41 = jacobiEisenstein(4, Nmax, sieve);
    auto d61 = jacobiEisenstein(6, Nmax, sieve);
    std::size_t eTerms = static_cast<std::size_t>(Nmax / 4) + 1;
    auto ea = eisensteinInt(k - 4, eTerms);
    auto eb = eisensteinInt(k - 6, eTerms);
    std::int64_t bad = 0;
    Int acc;
    for (std::int64_t rr = 0; rr <= rMax; ++rr) {
        std::int64_t nLo = (rr * rr + 3) / 4;
        std::int64_t nHi = (Nmax + rr * rr) / 4;
        for (std::int64_t n = nLo; n <= nHi; ++n) {
            std::int64_t N = 4 * n - rr * rr;
            if (N < 0 || N > Nmax) continue;
            acc = 0;
            for (std::int64_t n2 = nLo; n2 <= n; ++n2) {
                std::int64_t M2 = 4 * n2 - rr * rr;
                if (M2 < 0) continue;
                std::size_t idx = static_cast<std::size_t>(n - n2);
                mpz_addmul(acc.get_mpz_t(), ea[idx].get_mpz_t(), d41[M2].get_mpz_t());
                mpz_submul(acc.get_mpz_t(), eb[idx].get_mpz_t(), d61[M2].get_mpz_t());
            }
            if (acc != table.b[static_cast<std::size_t>(N)]) ++bad;
        }
    }
    return bad;
}

bool shimuraCheck(const KohnenTable& table, const std::vector<Int>& eigenformCoeffs,
                  std::int64_t d, std::int64_t a, const FactorSieve& sieve) {
    if (d >= 0) throw std::invalid_argument("shimuraCheck: d must be negative");
    if (!isFundamental(d, sieve)) throw std::invalid_argument("shimuraCheck: d not fundamental");
    std::int64_t absd = -d;
    Int lhs = table.at(a * a * absd);
    Int rhs(0);
    for (std::int64_t u : sieve.divisors(a)) {
        int mu = sieve.moebius(u);
        if (mu == 0) continue;
        int chi = kronecker(d, u);
        if (chi == 0) continue;
        std::int64_t v = a / u;
        rhs += Int(mu * chi) * intPow(Int(u), table.k - 2) *
               eigenformCoeffs.at(static_cast<std::size_t>(v));
    }
    rhs *= table.at(absd);
    return lhs == rhs;
}

}  // namespace skque
