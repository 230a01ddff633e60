#include <doctest.h>

#include <stdexcept>

#include "skque/util.hpp"

using namespace skque;

TEST_CASE("factor sieve basics") {
    FactorSieve s(1000);
    CHECK(s.isPrime(2));
    CHECK(s.isPrime(997));
    CHECK(!s.isPrime(1));
    CHECK(!s.isPrime(999));
    CHECK(s.smallestFactor(999) == 3);

    auto f = s.factor(360);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == std::pair<std::int64_t, int>{2, 3});
    CHECK(f[1] == std::pair<std::int64_t, int>{3, 2});
    CHECK(f[2] == std::pair<std::int64_t, int>{5, 1});

    auto d = s.divisors(36);
    CHECK(d.size() == 9);

    CHECK(s.moebius(1) == 1);
    CHECK(s.moebius(6) == 1);
    CHECK(s.moebius(30) == -1);
    CHECK(s.moebius(12) == 0);
    CHECK(s.isSquarefree(105));
    CHECK(!s.isSquarefree(50));

    CHECK(s.squarefreePart(1) == std::pair<std::int64_t, std::int64_t>{1, 1});
    CHECK(s.squarefreePart(48) == std::pair<std::int64_t, std::int64_t>{3, 4});
    CHECK(s.squarefreePart(147) == std::pair<std::int64_t, std::int64_t>{3, 7});

    CHECK(s.primesUpTo(30).size() == 10);
}

TEST_CASE("integer helpers") {
    CHECK(isqrtFloor(0) == 0);
    CHECK(isqrtFloor(1) == 1);
    CHECK(isqrtFloor(15) == 3);
    CHECK(isqrtFloor(16) == 4);
    CHECK(isqrtFloor(999999999999999999LL) == 999999999);

    std::int64_t r = 0;
    CHECK(isPerfectSquare(144, &r));
    CHECK(r == 12);
    CHECK(!isPerfectSquare(145));
    CHECK(!isPerfectSquare(-4));

    CHECK(powMod(2, 10, 1000) == 24);
    CHECK(powMod(7, 0, 13) == 1);
    CHECK(invMod(3, 16) == 11);
    CHECK(invMod(15, 16) == 15);
    CHECK_THROWS_AS(invMod(4, 16), std::invalid_argument);
}

TEST_CASE("fnv1a known vectors") {
    CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a("foobar") == 0x85944171f73967e8ULL);
}
