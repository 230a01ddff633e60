#include "skque/quadforms.hpp"

#include "skque/characters.hpp"

#include <numeric>
#include <stdexcept>

namespace skque {

std::int64_t BinForm::content() const {
    return std::gcd(std::gcd(m < 0 ? -m : m, r < 0 ? -r : r), n < 0 ? -n : n);
}

bool isReduced(const BinForm& f) {
    if (!(-f.m < f.r && f.r <= f.m && f.m <= f.n)) return false;
    if (f.m == f.n && f.r < 0) return false;
    return true;
}

BinForm reduce(BinForm f) {
    if (!f.isPositiveDefinite()) throw std::invalid_argument("reduce: form not positive definite");
    const std::int64_t D = f.disc();
    while (true) {
        // translate r into (-m, m]
        std::int64_t twoM = 2 * f.m;
        std::int64_t rr = f.r % twoM;
        if (rr < 0) rr += twoM;
        if (rr > f.m) rr -= twoM;
        f.r = rr;
        f.n = (f.r * f.r - D) / (4 * f.m);
        if (f.m < f.n) break;
        if (f.m == f.n) {
            if (f.r < 0) f.r = -f.r;
            break;
        }
        f = {f.n, -f.r, f.m};
    }
    return f;
}

std::vector<BinForm> enumerateClasses(std::int64_t D) {
    if (D >= 0) throw std::invalid_argument("enumerateClasses: D must be negative");
    std::int64_t m4 = ((D % 4) + 4) % 4;
    if (m4 != 0 && m4 != 1) return {};
    std::vector<BinForm> out;
    for (std::int64_t m = 1; 3 * m * m <= -D; ++m) {
        for (std::int64_t r = -m + 1; r <= m; ++r) {
            std::int64_t q = r * r - D;
            if (q % (4 * m) != 0) continue;
            std::int64_t n = q / (4 * m);
            if (n < m) continue;
            if (n == m && r < 0) continue;
            out.push_back({m, r, n});
        }
    }
    return out;
}

int epsilon(const BinForm& f) {
    std::int64_t g = f.content();
    std::int64_t d = f.disc() / (g * g);
    if (d == -3) return 6;
    if (d == -4) return 4;
    return 2;
}

std::int64_t classNumber(std::int64_t D) {
    std::int64_t h = 0;
    for (const auto& f : enumerateClasses(D))
        if (f.content() == 1) ++h;
    return h;
}

namespace {

// One pass over all reduced forms with |disc| <= X.
template <typename Fn>
void forEachReduced(std::int64_t X, Fn&& fn) {
    for (std::int64_t m = 1; 3 * m * m <= X; ++m) {
        for (std::int64_t r = -m + 1; r <= m; ++r) {
            std::int64_t r2 = r * r;
            // N = 4mn - r^2 <= X, n >= m; skip n == m when r < 0
            std::int64_t nStart = (r < 0) ? m + 1 : m;
            std::int64_t nEnd = (X + r2) / (4 * m);
            for (std::int64_t n = nStart; n <= nEnd; ++n) fn(m, r, n, 4 * m * n - r2);
        }
    }
}

}  // namespace

std::vector<std::int32_t> classNumberTable(std::int64_t X) {
    if (X < 3) throw std::invalid_argument("classNumberTable: X too small");
    std::vector<std::int32_t> h(static_cast<std::size_t>(X) + 1, 0);
    forEachReduced(X, [&](std::int64_t m, std::int64_t r, std::int64_t n, std::int64_t N) {
        if (N == 0) return;
        std::int64_t g = std::gcd(std::gcd(m, r < 0 ? -r : r), n);
        if (g == 1) ++h[N];
    });
    return h;
}

std::vector<std::int32_t> hurwitzTable12(std::int64_t X) {
    if (X < 0) throw std::invalid_argument("hurwitzTable12: X must be >= 0");
    std::vector<std::int32_t> t(static_cast<std::size_t>(X) + 1, 0);
    t[0] = -1;
    forEachReduced(X, [&](std::int64_t, std::int64_t, std::int64_t, std::int64_t N) {
        if (N > 0) t[N] += 12;
    });
    // unit-weight corrections for the orbits of f*(1,1,1) and f*(1,0,1)
    for (std::int64_t f = 1; 3 * f * f <= X; ++f) t[3 * f * f] -= 8;
    for (std::int64_t f = 1; 4 * f * f <= X; ++f) t[4 * f * f] -= 6;
    return t;
}

std::vector<std::vector<std::int32_t>> classContentsUpTo(std::int64_t X) {
    std::vector<std::vector<std::int32_t>> out(static_cast<std::size_t>(X) + 1);
    forEachReduced(X, [&](std::int64_t m, std::int64_t r, std::int64_t n, std::int64_t N) {
        if (N == 0) return;
        std::int64_t g = std::gcd(std::gcd(m, r < 0 ? -r : r), n);
        out[N].push_back(static_cast<std::int32_t>(g));
    });
    return out;
}

std::int64_t classNumberNonFundamental(std::int64_t d0, std::int64_t f,
                                       std::int64_t hFundamental,
                                       const FactorSieve& sieve) {
    if (d0 >= 0 || f < 1) throw std::invalid_argument("classNumberNonFundamental: bad arguments");
    if (f == 1) return hFundamental;
    // h(d0 f^2) = f h(d0) / u(d0) * prod_{p | f} (1 - (d0|p)/p),
    // u = w(d0)/w(d0 f^2) since the order loses its extra units once f > 1
    std::int64_t u = d0 == -3 ? 3 : d0 == -4 ? 2 : 1;
    std::int64_t num = hFundamental * f;
    std::int64_t den = u;
    for (auto [p, e] : sieve.factor(f)) {
        (void)e;
        num *= p - kronecker(d0, p);
        den *= p;
    }
    if (num % den != 0) throw std::logic_error("classNumberNonFundamental: nonintegral result");
    return num / den;
}

}  // namespace skque
