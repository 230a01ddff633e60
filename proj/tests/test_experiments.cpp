#include "skque/experiments.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "skque/config.hpp"

using namespace skque;

namespace {

const FactorSieve& sieve30k() {
    static FactorSieve s(30000);
    return s;
}

const SKLift& lift10() {
    static SKLift l = makeLift(10, 2048, 300, sieve30k());
    return l;
}

ExperimentReport sampleReport() {
    ExperimentReport r;
    r.name = "sample";
    r.configHash = 0xdeadbeef12345678ull;
    r.parameters = {{"k", "10"}, {"window", "bump(0.75, 0.25)"}};
    r.computed = {{"alpha", 1.25, 0.0}, {"beta", -3.5e-12, 1e-15}, {"count", 42.0, 0.0}};
    r.predictionLabel = "limit";
    r.predictionValue = 0.2418836;
    r.paperRef = "somewhere";
    r.reldev = 0.015;
    r.pass = true;
    r.runtimeSeconds = 1.25;
    return r;
}

std::string canonical(ExperimentReport r) {
    r.runtimeSeconds = 0.0;
    return reportToJson(r);
}

}  // namespace

TEST_CASE("report json round-trip is lossless and byte-stable") {
    ExperimentReport r = sampleReport();
    std::string text = reportToJson(r);
    ExperimentReport back = reportFromJson(text);
    CHECK(back.name == r.name);
    CHECK(back.configHash == r.configHash);
    CHECK(back.parameters == r.parameters);
    CHECK(back.computed.size() == r.computed.size());
    CHECK(back.computed[1].value == r.computed[1].value);
    CHECK(back.computed[1].errEstimate == r.computed[1].errEstimate);
    CHECK(back.predictionValue == r.predictionValue);
    CHECK(back.reldev == r.reldev);
    CHECK(back.pass == r.pass);
    CHECK(back.runtimeSeconds == r.runtimeSeconds);
    CHECK(reportToJson(back) == text);
    CHECK_THROWS_AS(reportFromJson("{\"name\": \"x\"}"), std::invalid_argument);
    CHECK_THROWS_AS(reportFromJson("nope"), std::invalid_argument);
}

TEST_CASE("reports validate against the shipped schema") {
    std::string good = reportToJson(sampleReport());
    std::string why;
    CHECK(reportMatchesSchema(good, &why));

    auto mutate = [&](const std::string& from, const std::string& to) {
        std::string s = good;
        auto pos = s.find(from);
        REQUIRE(pos != std::string::npos);
        s.replace(pos, from.size(), to);
        return s;
    };
    CHECK_FALSE(reportMatchesSchema(mutate("\"name\"", "\"nome\""), &why));
    CHECK(!why.empty());
    CHECK_FALSE(reportMatchesSchema(mutate("\"reldev\": 0.015", "\"reldev\": \"small\""), &why));
    CHECK_FALSE(reportMatchesSchema(
        mutate("\"configHash\": \"deadbeef12345678\"", "\"configHash\": \"xyz\""), &why));
    CHECK_FALSE(reportMatchesSchema(
        mutate("\"label\": \"alpha\"", "\"label\": \"alpha\", \"unit\": \"s\""), &why));
    CHECK_FALSE(reportMatchesSchema("[]", &why));
    CHECK_FALSE(reportMatchesSchema("{ not json", &why));
    CHECK(std::string(reportSchema()).find("configHash") != std::string::npos);
}

TEST_CASE("table and csv renderings") {
    ExperimentReport r = sampleReport();
    std::string table = reportTable(r);
    CHECK(table.find("sample") != std::string::npos);
    CHECK(table.find("[PASS]") != std::string::npos);
    CHECK(table.find("deadbeef12345678") != std::string::npos);
    std::string csv = reportCsv(r);
    CHECK(csv.substr(0, 26) == "label,value,errEstimate\nal");
    CHECK(csv.find("count,42,0\n") != std::string::npos);
}

TEST_CASE("character-sum suite passes on a small sweep") {
    CharSumParams p;
    p.pmaxLocal = 7;
    p.pmaxMain = 13;
    p.poissonK = 137.25;
    p.poissonST = {{3, 1}, {3, 5}};
    ExperimentReport r = expCharSumSuite(p, 0.05, sieve30k());
    CHECK(r.pass);
    CHECK(r.reldev < 1e-6);
    for (const auto& row : r.computed)
        if (row.label.find("mismatch") != std::string::npos) CHECK(row.value == 0.0);
    // determinism modulo runtime
    ExperimentReport r2 = expCharSumSuite(p, 0.05, sieve30k());
    CHECK(canonical(r) == canonical(r2));
}

TEST_CASE("shimura experiment is exact on a small bound") {
    ExperimentReport r = expShimura(lift10(), 300, 400, 40, sieve30k());
    CHECK(r.pass);
    CHECK(r.reldev == 0.0);
    CHECK(r.computed[0].value > 50.0);  // (d, a) pairs
    CHECK(r.computed[1].value == 0.0);
    CHECK(r.computed[2].value == 0.0);
}

TEST_CASE("waldspurger experiment calibrates and flags corruption") {
    ExperimentReport r = expWaldspurger(lift10(), 200, 1e-4, "fast", sieve30k());
    CHECK(r.pass);
    CHECK(r.reldev < 1e-4);
    CHECK(r.computed[0].value == doctest::Approx(lift10().kappaStar).epsilon(1e-10));

    // single discriminant: the spread degenerates to zero
    ExperimentReport one = expWaldspurger(lift10(), 3, 1e-4, "fast", sieve30k());
    CHECK(one.reldev == 0.0);
    CHECK(one.pass);

    // corrupted coefficient: gate fails, no throw
    SKLift broken = lift10();
    broken.b.b[8] += 1000000;
    ExperimentReport bad = expWaldspurger(broken, 200, 1e-4, "fast", sieve30k());
    CHECK_FALSE(bad.pass);
    CHECK(bad.reldev > 1e-2);

    CHECK_THROWS_AS(expWaldspurger(lift10(), 200, 1e-4, "quad", sieve30k()),
                    std::invalid_argument);
}

TEST_CASE("extended-precision waldspurger tightens the spread") {
    ExperimentReport r = expWaldspurger(lift10(), 200, 1e-6, "extended", sieve30k());
    CHECK(r.pass);
    CHECK(r.reldev < 1e-6);
}

TEST_CASE("residue experiment: a window missing every discriminant gives zero") {
    TestWindow w{TestWindow::Kind::bump, 0.1, 0.05};
    ExperimentReport r = expResidueAsymptotic(lift10(), 1.0, w, 0.2);
    CHECK(r.computed[0].value == 0.0);
    CHECK(r.computed[2].value == 0.0);
    CHECK_FALSE(r.pass);
    CHECK_THROWS_AS(expResidueAsymptotic(lift10(), -5.0, w, 0.2), std::invalid_argument);
}

TEST_CASE("residue experiment records a three-stage trend") {
    ExperimentReport r = expResidueAsymptotic(lift10(), 2000.0, standardBump(), 0.9);
    CHECK(r.computed.size() == 6);
    CHECK(r.computed[2].value > 0.0);
    CHECK(r.predictionValue == doctest::Approx(residueTarget()));
    CHECK(r.reldev < 0.9);  // loose: D = 2000 is far from the asymptotic regime
}

TEST_CASE("diagonal QUE structure at a toy support") {
    TestWindow kappa{TestWindow::Kind::bump, 0.3, 0.1};
    std::vector<const SKLift*> lifts{&lift10()};
    ExperimentReport r = expDiagonalQUE(lifts, kappa, 1e9);
    CHECK(r.computed.size() == 2);
    CHECK(r.pass);  // tolFinal enormous
    CHECK(std::isfinite(r.computed[0].value));
    TestWindow zero{TestWindow::Kind::bump, -1.0, 0.5};
    CHECK_THROWS_AS(expDiagonalQUE(lifts, zero, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(expDiagonalQUE({}, kappa, 0.3), std::invalid_argument);
}

TEST_CASE("off-diagonal diagnostic") {
    std::vector<const SKLift*> lifts{&lift10()};
    // shift pushing every T + L out of the cone: empty sum
    ExperimentReport zero = expOffDiagonal(lifts, {-1000, 0, 0}, standardBump(), standardBump(),
                                           TestWindow{TestWindow::Kind::gaussian, 0.0, 0.3});
    CHECK(zero.pass);
    CHECK(zero.computed[0].value == 0.0);

    ExperimentReport r = expOffDiagonal(lifts, {1, 0, 0}, standardBump(), standardBump(),
                                        TestWindow{TestWindow::Kind::gaussian, 0.0, 0.3});
    CHECK(r.pass);
    CHECK(r.computed[0].value > 0.0);
    CHECK(std::isfinite(r.computed[0].value));
}

TEST_CASE("twisted moment plumbing, cache warm/cold determinism") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "skque_twist_test";
    fs::remove_all(dir);
    Cache cache(dir.string());
    TestWindow phi = standardBump();
    ExperimentReport cold = expTwistedMoment(18, 1, 400.0, phi, 0.15, cache, sieve30k());
    CHECK(cold.computed[1].value > 5.0);  // a few L-values in range
    CHECK(std::isfinite(cold.reldev));
    CHECK(fs::exists(dir / "lvalues" / "ap_w18.json"));
    CHECK(fs::exists(dir / "lvalues" / "twist_w18.json"));

    ExperimentReport warm = expTwistedMoment(18, 1, 400.0, phi, 0.15, cache, sieve30k());
    CHECK(canonical(cold) == canonical(warm));

    CHECK_THROWS_AS(expTwistedMoment(18, 2, 400.0, phi, 0.15, cache, sieve30k()),
                    std::invalid_argument);
    CHECK_THROWS_AS(expTwistedMoment(18, 1, 4e6, phi, 0.15, cache, sieve30k()),
                    std::invalid_argument);
}

TEST_CASE("experiment reports satisfy the schema") {
    CharSumParams p;
    p.pmaxLocal = 5;
    p.pmaxMain = 7;
    p.poissonK = 64.0;
    p.poissonST = {{3, 1}};
    ExperimentReport r = expCharSumSuite(p, 0.05, sieve30k());
    r.configHash = configHash(defaultConfig());
    std::string why;
    CHECK(reportMatchesSchema(reportToJson(r), &why));
}
