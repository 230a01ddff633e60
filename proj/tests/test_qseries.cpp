#include <doctest.h>

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "skque/qseries.hpp"
#include "skque/util.hpp"

using namespace skque;

TEST_CASE("bernoulli numbers") {
    CHECK(bernoulli(0) == Rat(1));
    CHECK(bernoulli(1) == Rat(-1, 2));
    CHECK(bernoulli(2) == Rat(1, 6));
    CHECK(bernoulli(4) == Rat(-1, 30));
    CHECK(bernoulli(6) == Rat(1, 42));
    CHECK(bernoulli(8) == Rat(-1, 30));
    CHECK(bernoulli(10) == Rat(5, 66));
    CHECK(bernoulli(12) == Rat(-691, 2730));
    CHECK(bernoulli(14) == Rat(7, 6));
    for (unsigned long n = 3; n <= 25; n += 2) CHECK(bernoulli(n) == Rat(0));
}

TEST_CASE("eisenstein series coefficients") {
    const std::vector<long> e4{1, 240, 2160, 6720, 17520, 30240, 60480, 82560, 140400};
    auto E4 = eisensteinInt(4, e4.size());
    for (std::size_t n = 0; n < e4.size(); ++n) CHECK(E4[n] == e4[n]);

    const std::vector<long> e6{1,        -504,     -16632,   -122976, -532728,
                               -1575504, -4058208, -8471232, -17047800};
    auto E6 = eisensteinInt(6, e6.size());
    for (std::size_t n = 0; n < e6.size(); ++n) CHECK(E6[n] == e6[n]);

    const std::vector<long> e10{1, -264, -135432, -5196576, -69341448};
    auto E10 = eisensteinInt(10, e10.size());
    for (std::size_t n = 0; n < e10.size(); ++n) CHECK(E10[n] == e10[n]);

    const std::vector<long> e14{1, -24, -196632, -38263776, -1610809368};
    auto E14 = eisensteinInt(14, e14.size());
    for (std::size_t n = 0; n < e14.size(); ++n) CHECK(E14[n] == e14[n]);

    // E12 is rational, integral cast must refuse
    auto E12 = eisenstein(12, 3);
    CHECK(E12[1] == Rat(65520, 691));
    CHECK_THROWS_AS(eisensteinInt(12, 3), std::domain_error);

    CHECK_THROWS_AS(eisenstein(5, 3), std::invalid_argument);
}

TEST_CASE("ramanujan delta") {
    const std::vector<long> tau{0,      1,       -24,     252,    -1472,  4830,   -6048,
                                -16744, 84480,   -113643, -115920, 534612, -370944};
    auto D = delta(tau.size());
    for (std::size_t n = 0; n < tau.size(); ++n) CHECK(D[n] == tau[n]);
}

namespace {
void checkEigenform(unsigned long w, const std::vector<long>& head,
                    const char* a16, const char* a25, const char* a36) {
    auto f = eigenform(w, 40);
    CHECK(f.weight == static_cast<long>(w));
    CHECK(f.a[0] == 0);
    for (std::size_t n = 1; n <= head.size(); ++n) CHECK(f.a[n] == Int(head[n - 1]));
    CHECK(f.a[16] == Int(a16));
    CHECK(f.a[25] == Int(a25));
    CHECK(f.a[36] == Int(a36));

    // Hecke eigenvalue property at p = 2, 3 on the truncated expansion
    for (long p : {2L, 3L}) {
        auto Tp = heckeApply(f.a, p, w);
        for (std::size_t n = 1; n < Tp.size(); ++n) CHECK(Tp[n] == f.a[p] * f.a[n]);
    }
    // prime power recursion and multiplicativity
    Int p8 = intPow(Int(2), w - 1);
    CHECK(f.a[4] == f.a[2] * f.a[2] - p8);
    CHECK(f.a[8] == f.a[2] * f.a[4] - p8 * f.a[2]);
    CHECK(f.a[6] == f.a[2] * f.a[3]);
    CHECK(f.a[15] == f.a[3] * f.a[5]);
}
}  // namespace

TEST_CASE("eigenform tables, weight 18/22/26") {
    checkEigenform(18,
                   {1, -528, -4284, 147712, -1025850, 2261952, 3225992, -8785920, -110787507,
                    541648800, -753618228, -632798208},
                   "-14721941504", "289428769375", "-16364644233984");
    checkEigenform(22,
                   {1, -288, -128844, -2014208, 21640950, 37107072, -768078808, 1184071680,
                    6140423133, -6232593600, -94724929188, 259518615552},
                   "3883087691776", "-8506441300625", "-12368089397873664");
    checkEigenform(26,
                   {1, -48, -195804, -33552128, -741989850, 9398592, 39080597192, 3221114880,
                    -808949403027, 35615512800, 8419515299052, 6569640870912},
                   "1125667983917056", "252525713626069375", "27141973915885491456");
}

TEST_CASE("deligne bound on normalized coefficients") {
    FactorSieve sieve(200);
    for (unsigned long w : {18UL, 22UL, 26UL}) {
        auto f = eigenform(w, 201);
        for (std::size_t n = 1; n <= 200; ++n) {
            double dn = static_cast<double>(sieve.divisors(static_cast<std::int64_t>(n)).size());
            CHECK(std::abs(f.normalizedCoeff(n)) <= dn + 1e-9);
        }
    }
}

TEST_CASE("eigenform rejects other weights") {
    CHECK_THROWS_AS(eigenform(24, 10), std::invalid_argument);
    CHECK_THROWS_AS(eigenform(15, 10), std::invalid_argument);
    CHECK(eigenform(12, 5).a[1] == 1);
}
