#pragma once

#include <cmath>
#include <string>

namespace skque {

/// Double-double value (~106-bit mantissa). Used by the extended-precision
/// paths of the L-value and calibration routines; not a general-purpose
/// float128 replacement.
struct DD {
    double hi = 0.0;
    double lo = 0.0;

    DD() = default;
    DD(double h) : hi(h), lo(0.0) {}
    DD(double h, double l) : hi(h), lo(l) {}

    double value() const { return hi + lo; }
};

namespace detail {
inline DD twoSum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}
inline DD quickTwoSum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}
inline DD twoProd(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}
}  // namespace detail

inline DD operator+(const DD& a, const DD& b) {
    DD s = detail::twoSum(a.hi, b.hi);
    double e = s.lo + a.lo + b.lo;
    return detail::quickTwoSum(s.hi, e);
}
inline DD operator-(const DD& a) { return {-a.hi, -a.lo}; }
inline DD operator-(const DD& a, const DD& b) { return a + (-b); }
inline DD operator*(const DD& a, const DD& b) {
    DD p = detail::twoProd(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return detail::quickTwoSum(p.hi, p.lo);
}
inline DD operator/(const DD& a, const DD& b) {
    double q1 = a.hi / b.hi;
    DD r = a - DD(q1) * b;
    double q2 = r.hi / b.hi;
    r = r - DD(q2) * b;
    double q3 = r.hi / b.hi;
    DD q = detail::quickTwoSum(q1, q2);
    return q + DD(q3);
}

inline DD& operator+=(DD& a, const DD& b) { a = a + b; return a; }
inline DD& operator-=(DD& a, const DD& b) { a = a - b; return a; }
inline DD& operator*=(DD& a, const DD& b) { a = a * b; return a; }
inline DD& operator/=(DD& a, const DD& b) { a = a / b; return a; }

inline bool operator<(const DD& a, const DD& b) {
    return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(const DD& a, const DD& b) { return b < a; }

DD ddSqrt(const DD& x);
DD ddExp(const DD& x);
DD ddLog(const DD& x);
DD ddPowInt(const DD& x, long e);
/// x^e for real e via exp(e log x); requires x > 0.
DD ddPow(const DD& x, const DD& e);
DD ddAbs(const DD& x);
std::string ddToString(const DD& x);

}  // namespace skque
