#include "skque/dd.hpp"

#include <cstdio>
#include <stdexcept>

namespace skque {

DD ddSqrt(const DD& x) {
    if (x.hi < 0) throw std::domain_error("ddSqrt: negative argument");
    if (x.hi == 0) return {0.0, 0.0};
    double y = std::sqrt(x.hi);
    DD yd(y);
    // one Newton step: y' = (y + x/y)/2
    yd = (yd + x / yd) * DD(0.5);
    yd = (yd + x / yd) * DD(0.5);
    return yd;
}

DD ddExp(const DD& x) {
    if (x.hi > 700.0) throw std::overflow_error("ddExp: overflow");
    if (x.hi < -740.0) return {0.0, 0.0};
    static const DD ln2(0.6931471805599453, 2.3190468138462996e-17);
    long k = std::lround(x.hi / ln2.hi);
    DD r = x - DD(static_cast<double>(k)) * ln2;
    // |r| <= ln2/2; Taylor series, terms fall by >= 2.9x
    DD sum(1.0), term(1.0);
    for (int i = 1; i <= 26; ++i) {
        term = term * r / DD(static_cast<double>(i));
        sum += term;
        if (std::abs(term.hi) < 1e-35 * std::abs(sum.hi)) break;
    }
    return sum * DD(std::ldexp(1.0, static_cast<int>(k)));
}

DD ddLog(const DD& x) {
    if (x.hi <= 0) throw std::domain_error("ddLog: nonpositive argument");
    DD y(std::log(x.hi));
    // Newton on exp(y) = x, two steps
    y = y + x * ddExp(-y) - DD(1.0);
    y = y + x * ddExp(-y) - DD(1.0);
    return y;
}

DD ddPowInt(const DD& x, long e) {
    if (e == 0) return DD(1.0);
    if (e < 0) return DD(1.0) / ddPowInt(x, -e);
    DD base = x, acc(1.0);
    long n = e;
    while (n > 0) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

DD ddPow(const DD& x, const DD& e) { return ddExp(e * ddLog(x)); }

DD ddAbs(const DD& x) { return x.hi < 0 || (x.hi == 0 && x.lo < 0) ? -x : x; }

std::string ddToString(const DD& x) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.17g%+.17g", x.hi, x.lo);
    return buf;
}

}  // namespace skque
