#include "skque/qseries.hpp"

#include <cmath>
#include <stdexcept>

namespace skque {

Rat bernoulli(unsigned long n) {
    static std::vector<Rat> cache{Rat(1), Rat(-1, 2)};
    while (cache.size() <= n) {
        unsigned long m = cache.size();
        Rat s(0);
        for (unsigned long j = 0; j < m; ++j)
            s += Rat(binomial(m + 1, j)) * cache[j];
        s /= Int(m + 1);
        cache.push_back(-s);
    }
    return cache[n];
}

namespace {

// sigma_{w-1}(n) for n = 1..nterms-1 by divisor-driven accumulation
std::vector<Int> sigmaTable(unsigned long w, std::size_t nterms) {
    std::vector<Int> sig(nterms, Int(0));
    for (std::size_t d = 1; d < nterms; ++d) {
        Int dp = intPow(Int(static_cast<long>(d)), w - 1);
        for (std::size_t n = d; n < nterms; n += d) sig[n] += dp;
    }
    return sig;
}

}  // namespace

std::vector<Rat> eisenstein(unsigned long w, std::size_t nterms) {
    if (w < 4 || w % 2 != 0) throw std::invalid_argument("eisenstein: weight must be even, >= 4");
    if (nterms == 0) return {};
    Rat factor = Rat(-2 * static_cast<long>(w)) / bernoulli(w);
    auto sig = sigmaTable(w, nterms);
    std::vector<Rat> c(nterms);
    c[0] = 1;
    for (std::size_t n = 1; n < nterms; ++n) c[n] = factor * sig[n];
    return c;
}

std::vector<Int> eisensteinInt(unsigned long w, std::size_t nterms) {
    auto c = eisenstein(w, nterms);
    std::vector<Int> out(c.size());
    for (std::size_t n = 0; n < c.size(); ++n) {
        Rat v(c[n]);
        v.canonicalize();
        if (v.get_den() != 1)
            throw std::domain_error("eisensteinInt: E_w is not integral at this weight");
        out[n] = v.get_num();
    }
    return out;
}

std::vector<Int> convolve(const std::vector<Int>& a, const std::vector<Int>& b,
                          std::size_t nterms) {
    std::vector<Int> out(nterms, Int(0));
    std::size_t na = std::min(a.size(), nterms);
    for (std::size_t i = 0; i < na; ++i) {
        if (a[i] == 0) continue;
        std::size_t jmax = std::min(b.size(), nterms - i);
        for (std::size_t j = 0; j < jmax; ++j) {
            if (b[j] == 0) continue;
            mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
        }
    }
    return out;
}

std::vector<Int> delta(std::size_t nterms) {
    auto e4 = eisensteinInt(4, nterms);
    auto e6 = eisensteinInt(6, nterms);
    auto e4sq = convolve(e4, e4, nterms);
    auto e4cu = convolve(e4sq, e4, nterms);
    auto e6sq = convolve(e6, e6, nterms);
    std::vector<Int> out(nterms, Int(0));
    for (std::size_t n = 0; n < nterms; ++n) {
        Int num = e4cu[n] - e6sq[n];
        if (!mpz_divisible_ui_p(num.get_mpz_t(), 1728))
            throw std::logic_error("delta: 1728 does not divide E4^3 - E6^2");
        out[n] = num / 1728;
    }
    return out;
}

double Eigenform::normalizedCoeff(std::size_t n) const {
    if (n >= a.size()) throw std::out_of_range("Eigenform::normalizedCoeff: n out of range");
    return toDouble(a[n]) * std::pow(static_cast<double>(n), -(weight - 1) / 2.0);
}

Eigenform eigenform(unsigned long w, std::size_t nterms) {
    Eigenform f;
    f.weight = static_cast<long>(w);
    if (w == 12) {
        f.a = delta(nterms);
        return f;
    }
    if (w < 16 || w % 2 != 0 || w == 24 || w > 26)
        throw std::invalid_argument("eigenform: dim S_w != 1");
    f.a = convolve(delta(nterms), eisensteinInt(w - 12, nterms), nterms);
    return f;
}

std::vector<Int> heckeApply(const std::vector<Int>& series, long p, unsigned long w) {
    if (p < 2) throw std::invalid_argument("heckeApply: p must be >= 2");
    if (series.empty()) return {};
    std::size_t outLen = (series.size() - 1) / static_cast<std::size_t>(p) + 1;
    Int pw = intPow(Int(p), w - 1);
    std::vector<Int> out(outLen);
    for (std::size_t n = 0; n < outLen; ++n) {
        out[n] = series[n * p];
        if (n % p == 0 && n > 0) out[n] += pw * series[n / p];
    }
    return out;
}

}  // namespace skque
