#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "skque/cache.hpp"
#include "skque/config.hpp"
#include "skque/experiments.hpp"
#include "skque/jacobi.hpp"
#include "skque/lvalues.hpp"
#include "skque/qseries.hpp"
#include "skque/quadforms.hpp"

using namespace skque;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = 3.14159265358979323846;
// every lift is calibrated on the same fundamental range
constexpr std::int64_t kDmaxCalib = 500;

struct Session {
    Config cfg;
    std::uint64_t hash = 0;
    std::string outDir = "reports";
    std::string cacheDir;
    bool json = false;
    bool allPass = true;
    std::vector<std::string> bodies;

    void emit(ExperimentReport r, const std::string& stem) {
        r.configHash = hash;
        std::string body = reportToJson(r);
        std::string why;
        if (!reportMatchesSchema(body, &why))
            throw std::runtime_error("internal: report violates its schema: " + why);
        fs::create_directories(outDir);
        atomicWriteFile((fs::path(outDir) / (stem + ".json")).string(), body);
        atomicWriteFile((fs::path(outDir) / (stem + ".csv")).string(), reportCsv(r));
        if (json)
            bodies.push_back(body);
        else
            std::cout << reportTable(r);
        allPass = allPass && r.pass;
    }

    void flushJson() {
        if (!json) return;
        if (bodies.size() == 1) {
            std::cout << bodies.front();
            return;
        }
        std::cout << "[\n";
        for (std::size_t i = 0; i < bodies.size(); ++i) {
            std::string b = bodies[i];
            while (!b.empty() && b.back() == '\n') b.pop_back();
            std::cout << b << (i + 1 < bodies.size() ? ",\n" : "\n");
        }
        std::cout << "]\n";
    }
};

std::int64_t calibSieveNeed(unsigned long k) {
    const double w = 2.0 * k - 2.0;
    return static_cast<std::int64_t>(kDmaxCalib * (w + 45.0) / (2.0 * kPi)) + 64;
}

SKLift liftFor(unsigned long k, std::int64_t coeffMax, const FactorSieve& sieve) {
    return makeLift(k, std::max(coeffMax, kDmaxCalib + 1), kDmaxCalib, sieve);
}

ExperimentReport dumpReport(const std::string& name,
                            std::vector<std::pair<std::string, std::string>> params,
                            std::vector<ReportValue> rows, double seconds) {
    ExperimentReport r;
    r.name = name;
    r.parameters = std::move(params);
    r.computed = std::move(rows);
    r.predictionLabel = "none (table dump)";
    r.predictionValue = 0.0;
    r.paperRef = "artifact plumbing";
    r.reldev = 0.0;
    r.pass = true;
    r.runtimeSeconds = seconds;
    return r;
}

int runCoeffs(Session& s, unsigned long k, std::int64_t nmax) {
    const double t0 = wallTime();
    FactorSieve sieve(std::max<std::int64_t>(nmax + 16, 4096));
    KohnenTable table = jacobiCuspForm(k, nmax, sieve);
    Eigenform f = eigenform(2 * k - 2, 65);
    std::vector<ReportValue> rows;
    for (std::size_t n = 1; n <= 64; ++n)
        rows.push_back({"a_f(" + std::to_string(n) + ")", f.a[n].get_d(), 0.0});
    for (std::int64_t N = 3; N <= static_cast<std::int64_t>(table.maxIndex()); ++N) {
        if (N % 4 != 0 && N % 4 != 3) continue;
        rows.push_back({"b(" + std::to_string(N) + ")", table.b[N].get_d(), 0.0});
    }
    s.emit(dumpReport("coeffs",
                      {{"k", std::to_string(k)},
                       {"w", std::to_string(2 * k - 2)},
                       {"nmax", std::to_string(nmax)}},
                      std::move(rows), wallTime() - t0),
           "coeffs_k" + std::to_string(k));
    return 0;
}

int runClasses(Session& s, std::int64_t dmax) {
    const double t0 = wallTime();
    auto table = classNumberTable(dmax);
    const std::int64_t enumBound = std::min<std::int64_t>(dmax, 500);
    std::int64_t bad = 0;
    for (std::int64_t N = 3; N <= enumBound; ++N) {
        if (N % 4 != 0 && N % 4 != 3) continue;
        std::int64_t prim = 0;
        for (const BinForm& f : enumerateClasses(-N))
            if (f.content() == 1) ++prim;
        if (prim != table[N]) ++bad;
    }
    std::vector<ReportValue> rows;
    rows.push_back({"enumeration mismatches", static_cast<double>(bad), 0.0});
    for (std::int64_t N = 3; N <= dmax; ++N)
        if (table[N] > 0) rows.push_back({"h(-" + std::to_string(N) + ")", double(table[N]), 0.0});
    ExperimentReport r = dumpReport(
        "classes", {{"dmax", std::to_string(dmax)}, {"enumBound", std::to_string(enumBound)}},
        std::move(rows), wallTime() - t0);
    r.predictionLabel = "sieve table equals direct enumeration";
    r.paperRef = "eq:hsquare";
    r.reldev = static_cast<double>(bad);
    r.pass = bad == 0;
    s.emit(std::move(r), "classes");
    return 0;
}

int runLValue(Session& s, unsigned long w, std::int64_t dmax, int afeSample) {
    const double t0 = wallTime();
    if (w != 18 && w != 22 && w != 26)
        throw std::invalid_argument("lvalue: w must lie in {18, 22, 26}");
    const double factor = afeSample > 0 ? 1.6 : 1.0;
    FactorSieve sieve(twistLambdaLength(w, dmax, factor) + 16);
    Cache cache(s.cacheDir);
    TwistContext ctx = twistReadyLambda(w, dmax, factor, cache, sieve);

    const std::string twName = "twist_w" + std::to_string(w);
    std::map<std::int64_t, std::array<double, 2>> twists;
    cache.loadReal("lvalues", twName, w, "central", twists);
    auto dSet = fundamentalDiscriminants(dmax, sieve);
    bool dirty = false;
    std::vector<ReportValue> rows;
    for (std::int64_t d : dSet) {
        auto it = twists.find(d);
        double central;
        if (it != twists.end()) {
            central = it->second[0];
        } else {
            central = centralTwisted(d, 1.0, ctx.lambda, sieve);
            twists[d] = {central, 0.0};
            dirty = true;
        }
        rows.push_back({"L(1/2, f x chi(" + std::to_string(d) + "))", central, twists[d][1]});
    }
    double worst = 0.0;
    if (afeSample > 0) {
        const std::size_t step = std::max<std::size_t>(1, dSet.size() / afeSample);
        for (std::size_t i = 0; i < dSet.size(); i += step) {
            const std::int64_t d = dSet[i];
            const double reference = twists[d][0];
            const double moved = centralTwisted(d, 1.5, ctx.lambda, sieve);
            const double residual = std::abs(moved / reference - 1.0);
            twists[d][1] = residual;
            worst = std::max(worst, residual);
            dirty = true;
        }
        rows.push_back({"worst reflection residual", worst, 0.0});
    }
    if (dirty) cache.storeReal("lvalues", twName, w, "central", twists);
    ExperimentReport r =
        dumpReport("lvalue",
                   {{"w", std::to_string(w)},
                    {"dmax", std::to_string(dmax)},
                    {"afeSample", std::to_string(afeSample)}},
                   std::move(rows), wallTime() - t0);
    if (afeSample > 0) {
        r.predictionLabel = "A-independence of the completed sum";
        r.paperRef = "approximate functional equation";
        r.reldev = worst;
        r.pass = worst <= s.cfg.tol.afeReflection;
    }
    s.emit(std::move(r), "lvalue_w" + std::to_string(w));
    return 0;
}

int runCharsum(Session& s) {
    FactorSieve sieve(std::max<std::int64_t>(s.cfg.charsum.pmaxMain + 16, 10000));
    s.emit(expCharSumSuite(s.cfg.charsum, s.cfg.tol.poissonMain, sieve), "charsum");
    return 0;
}

int runVerify(Session& s) {
    const VerifyParams& vp = s.cfg.verify;
    const unsigned long w = 2 * vp.k - 2;
    const bool extended = s.cfg.precisionMode == "extended";
    std::int64_t sieveNeed =
        std::max({static_cast<std::int64_t>(vp.dmax * (w + 150.0) / (2.0 * kPi)) + 64,
                  calibSieveNeed(vp.k), vp.kohnenNmax + 16, vp.shimuraBound + 16});
    FactorSieve sieve(sieveNeed);
    std::int64_t coeffMax = std::max({vp.dmax, vp.shimuraBound, vp.kohnenNmax}) + 1;
    SKLift lift = liftFor(vp.k, coeffMax, sieve);
    const double budget = extended ? s.cfg.tol.waldspurgerExtended : s.cfg.tol.waldspurgerFast;
    s.emit(expWaldspurger(lift, vp.dmax, budget, s.cfg.precisionMode, sieve),
           "waldspurger_k" + std::to_string(vp.k));
    s.emit(expShimura(lift, vp.shimuraBound, vp.kohnenNmax, vp.kohnenRmax, sieve),
           "shimura_k" + std::to_string(vp.k));
    return 0;
}

std::int64_t offDiagCoeffMax(const Config& cfg) {
    TestWindow h1 = cfg.offdiag.h1.window();
    TestWindow h2 = cfg.offdiag.h2.window();
    std::int64_t need = 0;
    for (unsigned long k : cfg.offdiag.kList) {
        std::int64_t l1 = 0, l3 = 0;
        for (const auto& sh : cfg.offdiag.shifts) {
            l1 = std::max(l1, std::abs(sh[0]));
            l3 = std::max(l3, std::abs(sh[2]));
        }
        double m = h1.upper() * k + l1 + 1;
        double n = h2.upper() * k + l3 + 1;
        need = std::max(need, static_cast<std::int64_t>(4.0 * m * n) + 1);
    }
    return need;
}

int runQue(Session& s, const std::string& which) {
    const bool all = which == "all";
    Cache cache(s.cacheDir);

    if (all || which == "residue") {
        TestWindow W = s.cfg.residue.window.window();
        std::int64_t bound =
            static_cast<std::int64_t>(std::min(W.upper(), 4.0) * s.cfg.residue.drange) + 1;
        FactorSieve sieve(std::max(bound + 16, calibSieveNeed(s.cfg.residue.k)));
        SKLift lift = liftFor(s.cfg.residue.k, bound, sieve);
        s.emit(expResidueAsymptotic(lift, s.cfg.residue.drange, W, s.cfg.tol.residue),
               "residue");
    }
    if (all || which == "diagonal" || which == "offdiag") {
        std::vector<unsigned long> kUnion = s.cfg.que.kList;
        for (unsigned long k : s.cfg.offdiag.kList)
            if (std::find(kUnion.begin(), kUnion.end(), k) == kUnion.end()) kUnion.push_back(k);
        std::sort(kUnion.begin(), kUnion.end());
        TestWindow kappa = s.cfg.que.kappa.window();
        if (kappa.lower() <= 0.0)
            throw std::invalid_argument("que: kappa support must stay positive");
        std::int64_t coeffMax = offDiagCoeffMax(s.cfg);
        const bool diag = all || which == "diagonal";
        if (diag) {
            for (unsigned long k : s.cfg.que.kList) {
                double s2 = (k - 1.5) * (k - 2.0);
                std::int64_t dhi = static_cast<std::int64_t>(
                                       s2 / (4.0 * kPi * kPi * kappa.lower() * kappa.lower())) +
                                   2;
                coeffMax = std::max(coeffMax, dhi);
            }
        }
        std::int64_t sieveNeed = std::max(coeffMax + 16, calibSieveNeed(14));
        FactorSieve sieve(sieveNeed);
        std::map<unsigned long, SKLift> lifts;
        for (unsigned long k : kUnion) lifts.emplace(k, liftFor(k, coeffMax, sieve));
        if (diag) {
            std::vector<const SKLift*> ptrs;
            for (unsigned long k : s.cfg.que.kList) ptrs.push_back(&lifts.at(k));
            s.emit(expDiagonalQUE(ptrs, kappa, s.cfg.tol.queFinal), "diagonal_que");
        }
        if (all || which == "offdiag") {
            std::vector<const SKLift*> ptrs;
            for (unsigned long k : s.cfg.offdiag.kList) ptrs.push_back(&lifts.at(k));
            for (const auto& sh : s.cfg.offdiag.shifts) {
                std::string stem = "offdiagonal_" + std::to_string(sh[0]) + "_" +
                                   std::to_string(sh[1]) + "_" + std::to_string(sh[2]);
                s.emit(expOffDiagonal(ptrs, sh, s.cfg.offdiag.h1.window(),
                                      s.cfg.offdiag.h2.window(), s.cfg.offdiag.h3.window()),
                       stem);
            }
        }
    }
    if (all || which == "moment") {
        TestWindow phi = s.cfg.twisted.window.window();
        std::int64_t dmaxAbs =
            static_cast<std::int64_t>(std::ceil(phi.upper() * s.cfg.twisted.drange));
        FactorSieve sieve(twistLambdaLength(s.cfg.twisted.w, dmaxAbs, 1.0) + 16);
        for (int eta : s.cfg.twisted.etaList)
            s.emit(expTwistedMoment(s.cfg.twisted.w, eta, s.cfg.twisted.drange, phi,
                                    s.cfg.tol.twisted, cache, sieve),
                   "twisted_moment_eta" + std::to_string(eta));
    }
    return 0;
}

int runReport(Session& s, const std::string& dir) {
    std::vector<ExperimentReport> reports;
    if (!fs::is_directory(dir)) throw std::runtime_error("report: no such directory " + dir);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const fs::path& p : files) {
        std::ifstream in(p);
        std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        try {
            reports.push_back(reportFromJson(body));
        } catch (const std::exception& e) {
            std::cerr << "report: skipping " << p.string() << ": " << e.what() << "\n";
        }
    }
    if (s.json) {
        for (const ExperimentReport& r : reports) s.bodies.push_back(reportToJson(r));
    } else {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%-24s %-6s %-14s %-10s %s\n", "experiment", "pass",
                      "reldev", "runtime", "config");
        std::cout << buf;
        for (const ExperimentReport& r : reports) {
            char hash[17];
            std::snprintf(hash, sizeof hash, "%016llx",
                          static_cast<unsigned long long>(r.configHash));
            std::snprintf(buf, sizeof buf, "%-24s %-6s %-14.6e %-10.2f %s\n", r.name.c_str(),
                          r.pass ? "yes" : "NO", r.reldev, r.runtimeSeconds, hash);
            std::cout << buf;
        }
        std::cout << reports.size() << " report(s)\n";
    }
    for (const ExperimentReport& r : reports) s.allPass = s.allPass && r.pass;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Saito-Kurokawa mass equidistribution laboratory"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string configPath, cacheFlag, precision, outDir;
    int threads = -1;
    bool json = false;
    app.add_option("--config", configPath, "JSON config file merged over the defaults");
    app.add_option("--cache", cacheFlag, "cache directory (beats SKQUELAB_CACHE)");
    app.add_option("--threads", threads, "worker threads; execution is serial, kept for interface stability")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--precision", precision, "fast | extended")
        ->check(CLI::IsMember({"fast", "extended"}));
    app.add_flag("--json", json, "print schema-validated report JSON to stdout");
    app.add_option("--out", outDir, "directory for report JSON/CSV files (default reports)");

    unsigned long coeffsK = 10;
    std::int64_t coeffsNmax = 200;
    auto* cCoeffs = app.add_subcommand("coeffs", "build and dump eigenform / Kohnen tables");
    cCoeffs->add_option("--k", coeffsK, "Siegel weight (10, 12 or 14)");
    cCoeffs->add_option("--nmax", coeffsNmax, "largest coefficient index");

    std::int64_t classesDmax = 400;
    auto* cClasses = app.add_subcommand("classes", "class number table with enumeration cross-check");
    cClasses->add_option("--dmax", classesDmax, "largest |discriminant|");

    unsigned long lvW = 18;
    std::int64_t lvDmax = 500;
    int lvAfe = 0;
    auto* cLvalue = app.add_subcommand("lvalue", "central twisted L-values, cached");
    cLvalue->add_option("--w", lvW, "eigenform weight (18, 22 or 26)");
    cLvalue->add_option("--dmax", lvDmax, "largest |d|");
    cLvalue->add_option("--afe-sample", lvAfe, "sample size for the reflection residual gate");

    std::int64_t csLocal = -1, csMain = -1;
    auto* cCharsum = app.add_subcommand("charsum", "exact character-sum lemma suite");
    cCharsum->add_option("--pmax", csLocal, "largest prime for the local sweeps");
    cCharsum->add_option("--pmax-main", csMain, "largest prime for the triple-count lemma");

    unsigned long vK = 0;
    std::int64_t vDmax = 0, vShimura = 0, vKohnenN = 0;
    auto* cVerify = app.add_subcommand("verify", "Waldspurger calibration + Shimura relation");
    cVerify->add_option("--k", vK, "Siegel weight (10, 12 or 14)");
    cVerify->add_option("--dmax", vDmax, "calibration range");
    cVerify->add_option("--shimura-bound", vShimura, "check all (d, a) with a^2 |d| <= bound");
    cVerify->add_option("--kohnen-nmax", vKohnenN, "representation sweep range");

    std::string queWhich = "all";
    auto* cQue = app.add_subcommand("que", "equidistribution experiments");
    cQue->add_option("--experiment", queWhich, "residue | diagonal | offdiag | moment | all")
        ->check(CLI::IsMember({"residue", "diagonal", "offdiag", "moment", "all"}));

    std::string reportDir;
    auto* cReport = app.add_subcommand("report", "merge report JSONs into a summary");
    cReport->add_option("--dir", reportDir, "directory to scan (default: the --out directory)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    Session s;
    try {
        s.cfg = configPath.empty() ? defaultConfig() : loadConfig(configPath);
        if (!precision.empty()) s.cfg.precisionMode = precision;
        if (threads >= 0) s.cfg.threads = threads;
        if (cVerify->parsed()) {
            if (vK) s.cfg.verify.k = vK;
            if (vDmax) s.cfg.verify.dmax = vDmax;
            if (vShimura) s.cfg.verify.shimuraBound = vShimura;
            if (vKohnenN) s.cfg.verify.kohnenNmax = vKohnenN;
            if (s.cfg.verify.k != 10 && s.cfg.verify.k != 12 && s.cfg.verify.k != 14)
                throw std::invalid_argument("verify: k must lie in {10, 12, 14}");
        }
        if (cCharsum->parsed()) {
            if (csLocal > 0) s.cfg.charsum.pmaxLocal = csLocal;
            if (csMain > 0) s.cfg.charsum.pmaxMain = csMain;
        }
        s.hash = configHash(s.cfg);
        s.json = json;
        if (!outDir.empty()) s.outDir = outDir;
        if (!cacheFlag.empty())
            s.cacheDir = cacheFlag;
        else if (const char* env = std::getenv("SKQUELAB_CACHE"); env && *env)
            s.cacheDir = env;
        else if (!s.cfg.cacheDir.empty())
            s.cacheDir = s.cfg.cacheDir;
        else
            s.cacheDir = "cache";

        if (cCoeffs->parsed()) runCoeffs(s, coeffsK, coeffsNmax);
        if (cClasses->parsed()) runClasses(s, classesDmax);
        if (cLvalue->parsed()) runLValue(s, lvW, lvDmax, lvAfe);
        if (cCharsum->parsed()) runCharsum(s);
        if (cVerify->parsed()) runVerify(s);
        if (cQue->parsed()) runQue(s, queWhich);
        if (cReport->parsed()) runReport(s, reportDir.empty() ? s.outDir : reportDir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    s.flushJson();
    return s.allPass ? 0 : 1;
}
