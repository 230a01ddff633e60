#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "skque/characters.hpp"
#include "skque/jacobi.hpp"
#include "skque/lvalues.hpp"
#include "skque/quadforms.hpp"
#include "skque/skmass.hpp"
#include "skque/util.hpp"

using namespace skque;

namespace {

const FactorSieve& sieve30k() {
    static FactorSieve s(30000);
    return s;
}

const SKLift& lift(unsigned long k) {
    static SKLift l10 = makeLift(10, 2048, 500, sieve30k());
    static SKLift l12 = makeLift(12, 2048, 500, sieve30k());
    static SKLift l14 = makeLift(14, 2048, 500, sieve30k());
    switch (k) {
        case 10: return l10;
        case 12: return l12;
        default: return l14;
    }
}

double relGap(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace

TEST_CASE("normalized coefficient and content-1 values") {
    const SKLift& l = lift(10);
    for (std::int64_t d : {-3, -4, -7, -8, -20}) {
        double c = l.b.at(-d).get_d() * std::pow(static_cast<double>(-d), 0.75 - 5.0);
        CHECK(normalizedCoeff(l.b, -d) == doctest::Approx(c).epsilon(1e-15));
        CHECK(rDL(l.b, d, 1) == doctest::Approx(c).epsilon(1e-15));
    }
    CHECK_THROWS_AS(rDL(l.b, -5, 1), std::invalid_argument);
    CHECK_THROWS_AS(rDL(l.b, 4, 1), std::invalid_argument);
    CHECK_THROWS_AS(rDL(l.b, -4, 0), std::invalid_argument);
    CHECK_THROWS_AS(normalizedCoeff(l.b, 0), std::invalid_argument);
}

TEST_CASE("R(D;L) divisor expansion") {
    {
        const SKLift& l = lift(10);
        double expect = normalizedCoeff(l.b, 12) + std::sqrt(2.0) * normalizedCoeff(l.b, 3);
        CHECK(rDL(l.b, -3, 2) == doctest::Approx(expect).epsilon(1e-14));
    }
    {
        const SKLift& l = lift(12);
        double expect = normalizedCoeff(l.b, 36) + std::sqrt(3.0) * normalizedCoeff(l.b, 4);
        CHECK(rDL(l.b, -4, 3) == doctest::Approx(expect).epsilon(1e-14));
    }
    {
        const SKLift& l = lift(14);
        double expect = normalizedCoeff(l.b, 288) + std::sqrt(2.0) * normalizedCoeff(l.b, 72) +
                        std::sqrt(3.0) * normalizedCoeff(l.b, 32) +
                        std::sqrt(6.0) * normalizedCoeff(l.b, 8);
        CHECK(rDL(l.b, -8, 6) == doctest::Approx(expect).epsilon(1e-14));
    }
}

TEST_CASE("same discriminant, different content") {
    const SKLift& l = lift(10);
    double r1 = rDL(l.b, -12, 1);
    double r2 = rDL(l.b, -3, 2);
    CHECK(std::abs(r1 - r2) > 1e-9 * (std::abs(r1) + std::abs(r2)));
    CHECK(rOfForm(l.b, BinForm{1, 0, 3}) == doctest::Approx(r1).epsilon(1e-15));
    CHECK(rOfForm(l.b, BinForm{2, 2, 2}) == doctest::Approx(r2).epsilon(1e-15));
    CHECK_THROWS_AS(rOfForm(l.b, BinForm{1, 0, -3}), std::invalid_argument);
}

TEST_CASE("proportionality constant is discriminant-independent") {
    const double anchors[3] = {0.45948296261607190802, 0.20100537926697030531,
                               0.0079622284177040707145};
    const unsigned long ks[3] = {10, 12, 14};
    std::size_t nFund = fundamentalDiscriminants(500, sieve30k()).size();
    for (int i = 0; i < 3; ++i) {
        const SKLift& l = lift(ks[i]);
        CHECK(l.calibrated());
        CHECK(l.kappaStar == doctest::Approx(anchors[i]).epsilon(1e-9));
        CHECK(l.kappaRelDev < 1e-4);
        CHECK(l.kappaCount == nFund);
        CHECK(nFund > 140);
    }
}

TEST_CASE("double-double calibration agrees and tightens") {
    for (unsigned long k : {10ul, 12ul, 14ul}) {
        const SKLift& l = lift(k);
        auto dSet = fundamentalDiscriminants(120, sieve30k());
        std::size_t nmax =
            static_cast<std::size_t>(120.0 * static_cast<double>(l.w + 150) / (2 * std::numbers::pi)) + 8;
        auto lamDD = lambdaTableDD(l.w, nmax, l.aps, sieve30k());
        Calibration cal = calibrateDD(l.b, lamDD, l.symSquare, dSet, sieve30k());
        CHECK(cal.relDev < 1e-6);
        CHECK(cal.kappa == doctest::Approx(l.kappaStar).epsilon(1e-9));
        CHECK(cal.count == dSet.size());
    }
}

TEST_CASE("corrupted coefficient fails calibration") {
    const SKLift& l = lift(10);
    KohnenTable bad = l.b;
    bad.b[296] *= 2;
    std::vector<std::int64_t> dSet = {-3, -4, -296, -299};
    CHECK_THROWS_AS(calibrate(bad, l.lambda, l.symSquare, dSet, sieve30k()), std::runtime_error);
    CHECK_THROWS_AS(calibrate(l.b, l.lambda, l.symSquare, {-12}, sieve30k()),
                    std::invalid_argument);
    CHECK_THROWS_AS(calibrate(l.b, l.lambda, l.symSquare, {}, sieve30k()), std::invalid_argument);
}

TEST_CASE("fundamental mass reproduces the central-value ratio") {
    for (unsigned long k : {10ul, 12ul, 14ul}) {
        const SKLift& l = lift(k);
        for (std::int64_t d : {-3, -4, -23, -163, -499}) {
            double lhs = normalizedMass(l, d, 1);
            double rhs = centralTwisted(d, 1.0, l.lambda, sieve30k()) / (l.symSquare * l.l32);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
            CHECK(lhs >= 0.0);
        }
    }
}

TEST_CASE("mass is invariant under rescaling the coefficient table") {
    const SKLift& l = lift(10);
    KohnenTable b7 = l.b, b3 = l.b;
    for (auto& v : b7.b) v *= 7;
    for (auto& v : b3.b) v *= 3;
    auto dSet = fundamentalDiscriminants(500, sieve30k());
    Calibration c7 = calibrate(b7, l.lambda, l.symSquare, dSet, sieve30k());
    Calibration c3 = calibrate(b3, l.lambda, l.symSquare, dSet, sieve30k());
    CHECK(c7.kappa == doctest::Approx(49.0 * l.kappaStar).epsilon(1e-12));
    CHECK(c3.kappa == doctest::Approx(9.0 * l.kappaStar).epsilon(1e-12));
    for (auto [D, L] : {std::pair<std::int64_t, std::int64_t>{-3, 1}, {-4, 3}, {-20, 2}}) {
        double m7 = rDL(b7, D, L) * rDL(b7, D, L) / (c7.kappa * l.l32);
        double m3 = rDL(b3, D, L) * rDL(b3, D, L) / (c3.kappa * l.l32);
        CHECK(relGap(m7, m3) < 1e-12);
        CHECK(relGap(m7, normalizedMass(l, D, L)) < 1e-10);
    }
}

TEST_CASE("unit weights") {
    CHECK(unitWeight(-3) == 6);
    CHECK(unitWeight(-4) == 4);
    CHECK(unitWeight(-7) == 2);
    CHECK(epsilon(BinForm{1, 1, 1}) == 6);
    CHECK(epsilon(BinForm{1, 0, 1}) == 4);
    CHECK(epsilon(BinForm{2, 2, 2}) == 6);
    CHECK(epsilon(BinForm{1, 1, 2}) == 2);
}

TEST_CASE("c_k constant") {
    double pi = std::numbers::pi;
    double c10 = std::tgamma(10.0) * std::tgamma(9.5) /
                 (3.0 * std::pow(2.0, 21.0) * std::pow(pi, 20.5));
    CHECK(ckConstant(10) == doctest::Approx(c10).epsilon(1e-13));
    for (unsigned long k = 11; k <= 16; ++k) {
        double ratio = (k - 1.0) * (k - 1.5) / (4.0 * pi * pi);
        CHECK(ckConstant(k) == doctest::Approx(ckConstant(k - 1) * ratio).epsilon(1e-12));
    }
}

TEST_CASE("residue target") {
    double pi = std::numbers::pi;
    CHECK(residueTarget() == doctest::Approx(15.0 / (2.0 * pi * pi * pi)).epsilon(1e-15));
    CHECK(residueTarget() > 0.2418);
    CHECK(residueTarget() < 0.2419);
}

TEST_CASE("fundamental discriminant enumeration") {
    auto list = fundamentalDiscriminants(100, sieve30k());
    REQUIRE(list.size() > 5);
    CHECK(list[0] == -3);
    CHECK(list[1] == -4);
    CHECK(list[2] == -7);
    CHECK(list[3] == -8);
    CHECK(list[4] == -11);
    CHECK(list[5] == -15);
    std::size_t i = 0;
    for (std::int64_t n = 3; n <= 100; ++n) {
        bool fund = isFundamental(-n, sieve30k());
        bool listed = i < list.size() && list[i] == -n;
        CHECK(fund == listed);
        if (listed) ++i;
    }
    CHECK(i == list.size());
}

TEST_CASE("content sum over classes of one discriminant") {
    const SKLift& l = lift(10);
    {
        ContentSum cs = contentSumBound(l, -3, 2, 0.3, sieve30k());
        double expect = normalizedMass(l, -12, 1) + normalizedMass(l, -3, 2);
        CHECK(cs.lhs == doctest::Approx(expect).epsilon(1e-12));
        CHECK(cs.ratio > 0.0);
        CHECK(std::isfinite(cs.ratio));
    }
    {
        ContentSum cs = contentSumBound(l, -23, 1, 0.3, sieve30k());
        CHECK(cs.lhs == doctest::Approx(3.0 * normalizedMass(l, -23, 1)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(contentSumBound(l, -12, 1, 0.3, sieve30k()), std::invalid_argument);
}

TEST_CASE("representation sweep has no mismatches on a small window") {
    for (unsigned long k : {10ul, 12ul, 14ul})
        CHECK(kohnenRepresentationMismatches(k, 400, 30, sieve30k()) == 0);
}
