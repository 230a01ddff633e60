#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "skque/weights.hpp"

namespace skque {

/// Serializable description of a TestWindow.
struct WindowSpec {
    std::string kind = "bump";  // "bump" | "gaussian"
    double center = 0.75;
    double scale = 0.25;

    /// Throws invalid_argument on an unknown kind or non-positive scale.
    TestWindow window() const;
};

/// Every pass/fail gate used by the experiments and the acceptance suite.
struct Tolerances {
    double waldspurgerFast = 1e-4;
    double waldspurgerExtended = 1e-6;
    double classNumberClosure = 1e-9;
    double poissonMain = 0.05;
    double siegelGamma = 1e-6;
    double offDiagMain = 0.05;
    double offDiagSlopeLo = -1.3;
    double offDiagSlopeHi = -0.7;
    double residue = 0.2;
    double twisted = 0.15;
    double queFinal = 0.3;
    double afeReflection = 1e-8;
    double contentBoundC = 16.0;
};

struct VerifyParams {
    unsigned long k = 10;
    std::int64_t dmax = 500;
    std::int64_t shimuraBound = 2000;
    std::int64_t kohnenNmax = 4000;
    std::int64_t kohnenRmax = 120;
};

struct ResidueParams {
    unsigned long k = 10;
    double drange = 20000.0;
    WindowSpec window{"bump", 0.75, 0.25};
};

struct QueParams {
    std::vector<unsigned long> kList{10, 12, 14};
    WindowSpec kappa{"bump", 0.045, 0.015};
};

struct TwistedParams {
    unsigned long w = 18;
    double drange = 50000.0;
    WindowSpec window{"bump", 0.75, 0.25};
    std::vector<int> etaList{1, 5, 8, 9, 12, 13};
};

struct OffDiagParams {
    std::vector<unsigned long> kList{10, 12, 14};
    std::vector<std::array<std::int64_t, 3>> shifts{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    WindowSpec h1{"bump", 0.75, 0.25};
    WindowSpec h2{"bump", 0.75, 0.25};
    WindowSpec h3{"gaussian", 0.0, 0.3};
};

/// Geometry for the off-diagonal weight-function check; v_i are multiples
/// of k, the windows sit on the Laplace concentration points.
struct WeightFnParams {
    std::vector<unsigned long> kList{50, 100, 200, 400};
    unsigned long gateK = 100;
    double v1 = 1.0;
    double v2 = 0.5;
    double v3 = 1.0;
    WindowSpec phi1{"gaussian", 0.159, 0.13};
    WindowSpec phi2{"gaussian", 0.169, 0.13};
    WindowSpec phi3{"gaussian", -0.25, 0.55};
};

struct CharSumParams {
    std::int64_t pmaxLocal = 31;
    std::int64_t pmaxMain = 97;
    double poissonK = 400.0;
    std::vector<std::array<std::int64_t, 2>> poissonST{{3, 1}, {1, 3}, {3, 5}, {9, 1}};
    /// Constant in the O(p^2) branches of the local-sum lemma; the measured
    /// worst ratio over p <= 31, powers <= 3, shifts in {0,1,2}^3 is 1.97.
    double localBoundC = 3.0;
};

struct SiegelParams {
    int instances = 20;
    std::uint64_t seed = 20260814;
};

struct Config {
    std::string cacheDir;                // "" -> SKQUELAB_CACHE or ./cache
    std::string precisionMode = "fast";  // "fast" | "extended"
    int threads = 0;                     // 0 = auto
    VerifyParams verify;
    ResidueParams residue;
    QueParams que;
    TwistedParams twisted;
    OffDiagParams offdiag;
    WeightFnParams weightfn;
    CharSumParams charsum;
    SiegelParams siegel;
    Tolerances tol;
};

Config defaultConfig();

/// Parse a JSON config over the defaults. Any key not present in the
/// default layout, anywhere in the tree, is an error; leaf types must match.
Config parseConfig(const std::string& jsonText);

/// parseConfig on the contents of a file; throws runtime_error if unreadable.
Config loadConfig(const std::string& path);

/// Canonical one-line JSON rendering with sorted keys.
std::string configJson(const Config& cfg);

/// FNV-1a of configJson; embedded in every report.
std::uint64_t configHash(const Config& cfg);

}  // namespace skque
