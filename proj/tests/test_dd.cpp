#include <doctest.h>

#include <cmath>

#include "skque/dd.hpp"

using namespace skque;

namespace {
double relErr(const DD& x, double hiRef, double loRef) {
    DD d = x - (DD(hiRef) + DD(loRef));
    double scale = std::abs(hiRef) > 0 ? std::abs(hiRef) : 1.0;
    return std::abs(d.value()) / scale;
}
}  // namespace

TEST_CASE("dd arithmetic beats double precision") {
    DD third = DD(1.0) / DD(3.0);
    DD threeThirds = third + third + third;
    CHECK(std::abs((threeThirds - DD(1.0)).value()) < 1e-31);

    DD s2 = ddSqrt(DD(2.0));
    CHECK(std::abs((s2 * s2 - DD(2.0)).value()) < 1e-31);

    // (1 + 1e-20) - 1 is lost in double, retained in dd
    DD tiny = (DD(1.0) + DD(1e-20)) - DD(1.0);
    CHECK(tiny.value() == doctest::Approx(1e-20).epsilon(1e-10));
}

TEST_CASE("dd transcendentals") {
    // e and ln 2 to 30+ digits
    CHECK(relErr(ddExp(DD(1.0)), 2.718281828459045, 1.4456468917292502e-16) < 1e-30);
    CHECK(relErr(ddLog(DD(2.0)), 0.6931471805599453, 2.3190468138462996e-17) < 1e-30);

    for (double x : {-30.5, -3.25, -0.7, 0.0, 0.9, 12.75, 80.0}) {
        DD y = ddExp(DD(x));
        CHECK(std::abs((ddLog(y) - DD(x)).value()) < 1e-28 * (1.0 + std::abs(x)));
    }

    DD p = ddPowInt(DD(3.0), 20);
    CHECK(p.value() == doctest::Approx(3486784401.0 * 1.0).epsilon(1e-25));
    CHECK(std::abs((ddPowInt(DD(0.5), -2) - DD(4.0)).value()) < 1e-30);

    // n^{-8.5} via ddPow vs exact rational scaling
    DD v = ddPow(DD(2.0), DD(-8.5));
    DD ref = DD(1.0) / (DD(256.0) * ddSqrt(DD(2.0)));
    CHECK(std::abs((v - ref).value()) < 1e-33);
}
