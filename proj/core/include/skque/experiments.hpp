#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "skque/cache.hpp"
#include "skque/config.hpp"
#include "skque/skmass.hpp"
#include "skque/weights.hpp"

namespace skque {

struct ReportValue {
    std::string label;
    double value = 0.0;
    double errEstimate = 0.0;
};

struct ExperimentReport {
    std::string name;
    std::uint64_t configHash = 0;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::vector<ReportValue> computed;
    std::string predictionLabel;
    double predictionValue = 0.0;
    std::string paperRef;
    double reldev = 0.0;
    bool pass = false;
    double runtimeSeconds = 0.0;
};

/// Deterministic JSON rendering; runtimeSeconds is the only field that may
/// differ between identical runs.
std::string reportToJson(const ExperimentReport& r);
ExperimentReport reportFromJson(const std::string& text);

/// Structural validation against the shipped report schema
/// (schemas/report.schema.json, embedded at build time).
bool reportMatchesSchema(const std::string& reportText, std::string* why = nullptr);
const char* reportSchema();

/// Human-readable aligned table for one report.
std::string reportTable(const ExperimentReport& r);
/// CSV rows (label,value,errEstimate) of the computed block.
std::string reportCsv(const ExperimentReport& r);

/// Re-runs the Waldspurger calibration over fundamental |d| <= dmax and
/// reports the spread of the ratio around its mean.
ExperimentReport expWaldspurger(const SKLift& lift, std::int64_t dmax, double budget,
                                const std::string& precisionMode, const FactorSieve& sieve);

/// Exact Shimura-relation check over every (d, a) with a^2 |d| <= bound,
/// plus the representation-consistency sweep of the b-table.
ExperimentReport expShimura(const SKLift& lift, std::int64_t bound, std::int64_t kohnenNmax,
                            std::int64_t kohnenRmax, const FactorSieve& sieve);

/// Smoothed residue statistic sum_T (mass/eps) W(|disc|/D) / (D^{3/2} int sqrt(xi) W)
/// against 15/(2 pi^3), evaluated at drange and at drange/2, drange/4 for the trend.
ExperimentReport expResidueAsymptotic(const SKLift& lift, double drange, const TestWindow& W,
                                      double tol);

/// Diagonal QUE statistic per k against (45/pi^2) kappa~(3); pass when the
/// distance decreases along kList or the last distance is within tolFinal.
ExperimentReport expDiagonalQUE(const std::vector<const SKLift*>& lifts,
                                const TestWindow& kappa, double tolFinal);

/// Length of the lambda table needed to evaluate the twisted central value
/// at every fundamental |d| <= dmaxAbs, with room to move the AFE balance
/// point A into [1/lengthFactor, lengthFactor].
std::int64_t twistLambdaLength(unsigned long w, std::int64_t dmaxAbs, double lengthFactor);

/// Hecke data for the twisted central values: trace-formula a_p (cached
/// under lvalues/ap_w<w>) and the lambda table they generate.
struct TwistContext {
    std::vector<Int> aps;  // by prime index, primes <= lambda.maxIndex()
    LambdaTable lambda;
};

TwistContext twistReadyLambda(unsigned long w, std::int64_t dmaxAbs, double lengthFactor,
                              const Cache& cache, const FactorSieve& sieve);

/// Twisted first moment over D_eta = {d fundamental < 0, d = eta mod 16}
/// at u = 1; L-values cached under lvalues/.
ExperimentReport expTwistedMoment(unsigned long w, int eta, double drange,
                                  const TestWindow& phi, double tol, const Cache& cache,
                                  const FactorSieve& sieve);

/// Off-diagonal shifted mass sum, diagnostic only: records the k-trend of
/// (1/k^3) sum sqrt(mass(T) mass(T+L)) h1(m/k) h2(n/k) h3(r/k).
ExperimentReport expOffDiagonal(const std::vector<const SKLift*>& lifts,
                                const std::array<std::int64_t, 3>& shift, const TestWindow& h1,
                                const TestWindow& h2, const TestWindow& h3);

/// Aggregates the exact character-sum lemma checks and the Poisson main-term
/// comparison; pass iff zero mismatches and every Poisson instance is within tol.
ExperimentReport expCharSumSuite(const CharSumParams& params, double poissonTol,
                                 const FactorSieve& sieve);

}  // namespace skque
