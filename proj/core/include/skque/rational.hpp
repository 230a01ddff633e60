#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace skque {

using Int = mpz_class;
using Rat = mpq_class;

inline Int intPow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rat ratPow(const Rat& base, unsigned long e) {
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), e);
    return r;
}

inline Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline std::string toString(const Int& x) { return x.get_str(); }

/// "p/q" in lowest terms, "p" when q == 1.
inline std::string toString(const Rat& x) {
    Rat c(x);
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rat parseRat(const std::string& text) {
    Rat r;
    if (r.set_str(text, 10) != 0) throw std::invalid_argument("parseRat: bad rational: " + text);
    r.canonicalize();
    return r;
}

inline double toDouble(const Rat& x) { return x.get_d(); }
inline double toDouble(const Int& x) { return x.get_d(); }

}  // namespace skque
