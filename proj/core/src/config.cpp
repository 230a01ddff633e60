#include "skque/config.hpp"

#include <stdexcept>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "skque/util.hpp"

namespace skque {

namespace {

using Json = nlohmann::json;

Json windowToJson(const WindowSpec& w) {
    return Json{{"kind", w.kind}, {"center", w.center}, {"scale", w.scale}};
}

WindowSpec windowFromJson(const Json& j, const std::string& path) {
    WindowSpec w;
    w.kind = j.at("kind").get<std::string>();
    w.center = j.at("center").get<double>();
    w.scale = j.at("scale").get<double>();
    if (w.kind != "bump" && w.kind != "gaussian")
        throw std::invalid_argument("config: " + path + ".kind must be bump or gaussian");
    if (w.scale <= 0.0)
        throw std::invalid_argument("config: " + path + ".scale must be positive");
    return w;
}

Json toJson(const Config& c) {
    Json j;
    j["cacheDir"] = c.cacheDir;
    j["precisionMode"] = c.precisionMode;
    j["threads"] = c.threads;
    j["verify"] = {{"k", c.verify.k},
                   {"dmax", c.verify.dmax},
                   {"shimuraBound", c.verify.shimuraBound},
                   {"kohnenNmax", c.verify.kohnenNmax},
                   {"kohnenRmax", c.verify.kohnenRmax}};
    j["residue"] = {{"k", c.residue.k},
                    {"drange", c.residue.drange},
                    {"window", windowToJson(c.residue.window)}};
    j["que"] = {{"kList", c.que.kList}, {"kappa", windowToJson(c.que.kappa)}};
    j["twisted"] = {{"w", c.twisted.w},
                    {"drange", c.twisted.drange},
                    {"window", windowToJson(c.twisted.window)},
                    {"etaList", c.twisted.etaList}};
    j["offdiag"] = {{"kList", c.offdiag.kList},
                    {"shifts", c.offdiag.shifts},
                    {"h1", windowToJson(c.offdiag.h1)},
                    {"h2", windowToJson(c.offdiag.h2)},
                    {"h3", windowToJson(c.offdiag.h3)}};
    j["weightfn"] = {{"kList", c.weightfn.kList}, {"gateK", c.weightfn.gateK},
                     {"v1", c.weightfn.v1},       {"v2", c.weightfn.v2},
                     {"v3", c.weightfn.v3},       {"phi1", windowToJson(c.weightfn.phi1)},
                     {"phi2", windowToJson(c.weightfn.phi2)},
                     {"phi3", windowToJson(c.weightfn.phi3)}};
    j["charsum"] = {{"pmaxLocal", c.charsum.pmaxLocal},
                    {"pmaxMain", c.charsum.pmaxMain},
                    {"poissonK", c.charsum.poissonK},
                    {"poissonST", c.charsum.poissonST},
                    {"localBoundC", c.charsum.localBoundC}};
    j["siegel"] = {{"instances", c.siegel.instances}, {"seed", c.siegel.seed}};
    j["tolerances"] = {{"waldspurgerFast", c.tol.waldspurgerFast},
                       {"waldspurgerExtended", c.tol.waldspurgerExtended},
                       {"classNumberClosure", c.tol.classNumberClosure},
                       {"poissonMain", c.tol.poissonMain},
                       {"siegelGamma", c.tol.siegelGamma},
                       {"offDiagMain", c.tol.offDiagMain},
                       {"offDiagSlopeLo", c.tol.offDiagSlopeLo},
                       {"offDiagSlopeHi", c.tol.offDiagSlopeHi},
                       {"residue", c.tol.residue},
                       {"twisted", c.tol.twisted},
                       {"queFinal", c.tol.queFinal},
                       {"afeReflection", c.tol.afeReflection},
                       {"contentBoundC", c.tol.contentBoundC}};
    return j;
}

template <typename T>
std::vector<T> intList(const Json& j, const std::string& path) {
    if (!j.is_array()) throw std::invalid_argument("config: " + path + " must be an array");
    std::vector<T> out;
    for (const auto& e : j) {
        if (!e.is_number_integer() && !e.is_number_unsigned())
            throw std::invalid_argument("config: " + path + " must hold integers");
        out.push_back(e.get<T>());
    }
    return out;
}

Config fromJson(const Json& j) {
    Config c;
    c.cacheDir = j.at("cacheDir").get<std::string>();
    c.precisionMode = j.at("precisionMode").get<std::string>();
    if (c.precisionMode != "fast" && c.precisionMode != "extended")
        throw std::invalid_argument("config: precisionMode must be fast or extended");
    c.threads = j.at("threads").get<int>();
    if (c.threads < 0) throw std::invalid_argument("config: threads must be >= 0");

    const Json& v = j.at("verify");
    c.verify.k = v.at("k").get<unsigned long>();
    c.verify.dmax = v.at("dmax").get<std::int64_t>();
    c.verify.shimuraBound = v.at("shimuraBound").get<std::int64_t>();
    c.verify.kohnenNmax = v.at("kohnenNmax").get<std::int64_t>();
    c.verify.kohnenRmax = v.at("kohnenRmax").get<std::int64_t>();

    const Json& r = j.at("residue");
    c.residue.k = r.at("k").get<unsigned long>();
    c.residue.drange = r.at("drange").get<double>();
    c.residue.window = windowFromJson(r.at("window"), "residue.window");

    const Json& q = j.at("que");
    c.que.kList = intList<unsigned long>(q.at("kList"), "que.kList");
    c.que.kappa = windowFromJson(q.at("kappa"), "que.kappa");

    const Json& t = j.at("twisted");
    c.twisted.w = t.at("w").get<unsigned long>();
    c.twisted.drange = t.at("drange").get<double>();
    c.twisted.window = windowFromJson(t.at("window"), "twisted.window");
    c.twisted.etaList = intList<int>(t.at("etaList"), "twisted.etaList");
    for (int eta : c.twisted.etaList)
        if (eta != 1 && eta != 5 && eta != 8 && eta != 9 && eta != 12 && eta != 13)
            throw std::invalid_argument("config: twisted.etaList entries must lie in {1,5,8,9,12,13}");

    const Json& o = j.at("offdiag");
    c.offdiag.kList = intList<unsigned long>(o.at("kList"), "offdiag.kList");
    c.offdiag.shifts.clear();
    for (const auto& s : o.at("shifts")) {
        auto trip = intList<std::int64_t>(s, "offdiag.shifts[]");
        if (trip.size() != 3)
            throw std::invalid_argument("config: offdiag.shifts entries must have 3 components");
        c.offdiag.shifts.push_back({trip[0], trip[1], trip[2]});
    }
    c.offdiag.h1 = windowFromJson(o.at("h1"), "offdiag.h1");
    c.offdiag.h2 = windowFromJson(o.at("h2"), "offdiag.h2");
    c.offdiag.h3 = windowFromJson(o.at("h3"), "offdiag.h3");

    const Json& wf = j.at("weightfn");
    c.weightfn.kList = intList<unsigned long>(wf.at("kList"), "weightfn.kList");
    c.weightfn.gateK = wf.at("gateK").get<unsigned long>();
    c.weightfn.v1 = wf.at("v1").get<double>();
    c.weightfn.v2 = wf.at("v2").get<double>();
    c.weightfn.v3 = wf.at("v3").get<double>();
    c.weightfn.phi1 = windowFromJson(wf.at("phi1"), "weightfn.phi1");
    c.weightfn.phi2 = windowFromJson(wf.at("phi2"), "weightfn.phi2");
    c.weightfn.phi3 = windowFromJson(wf.at("phi3"), "weightfn.phi3");

    const Json& cs = j.at("charsum");
    c.charsum.pmaxLocal = cs.at("pmaxLocal").get<std::int64_t>();
    c.charsum.pmaxMain = cs.at("pmaxMain").get<std::int64_t>();
    c.charsum.poissonK = cs.at("poissonK").get<double>();
    c.charsum.poissonST.clear();
    for (const auto& s : cs.at("poissonST")) {
        auto pair = intList<std::int64_t>(s, "charsum.poissonST[]");
        if (pair.size() != 2)
            throw std::invalid_argument("config: charsum.poissonST entries must have 2 components");
        c.charsum.poissonST.push_back({pair[0], pair[1]});
    }
    c.charsum.localBoundC = cs.at("localBoundC").get<double>();

    const Json& sg = j.at("siegel");
    c.siegel.instances = sg.at("instances").get<int>();
    c.siegel.seed = sg.at("seed").get<std::uint64_t>();

    const Json& tl = j.at("tolerances");
    c.tol.waldspurgerFast = tl.at("waldspurgerFast").get<double>();
    c.tol.waldspurgerExtended = tl.at("waldspurgerExtended").get<double>();
    c.tol.classNumberClosure = tl.at("classNumberClosure").get<double>();
    c.tol.poissonMain = tl.at("poissonMain").get<double>();
    c.tol.siegelGamma = tl.at("siegelGamma").get<double>();
    c.tol.offDiagMain = tl.at("offDiagMain").get<double>();
    c.tol.offDiagSlopeLo = tl.at("offDiagSlopeLo").get<double>();
    c.tol.offDiagSlopeHi = tl.at("offDiagSlopeHi").get<double>();
    c.tol.residue = tl.at("residue").get<double>();
    c.tol.twisted = tl.at("twisted").get<double>();
    c.tol.queFinal = tl.at("queFinal").get<double>();
    c.tol.afeReflection = tl.at("afeReflection").get<double>();
    c.tol.contentBoundC = tl.at("contentBoundC").get<double>();

    for (unsigned long k : c.que.kList)
        if (k != 10 && k != 12 && k != 14)
            throw std::invalid_argument("config: que.kList entries must lie in {10,12,14}");
    for (unsigned long k : c.offdiag.kList)
        if (k != 10 && k != 12 && k != 14)
            throw std::invalid_argument("config: offdiag.kList entries must lie in {10,12,14}");
    return c;
}

void mergeChecked(Json& base, const Json& patch, const std::string& path) {
    if (!patch.is_object())
        throw std::invalid_argument("config: " + (path.empty() ? std::string("top level") : path) +
                                    " must be an object");
    for (const auto& [key, val] : patch.items()) {
        std::string where = path.empty() ? key : path + "." + key;
        if (!base.contains(key))
            throw std::invalid_argument("config: unknown key " + where);
        Json& slot = base[key];
        if (slot.is_object()) {
            mergeChecked(slot, val, where);
            continue;
        }
        bool ok = (slot.is_string() && val.is_string()) ||
                  (slot.is_boolean() && val.is_boolean()) ||
                  (slot.is_array() && val.is_array()) ||
                  (slot.is_number() && val.is_number());
        if (slot.is_number_integer() && val.is_number_float()) ok = false;
        if (!ok) throw std::invalid_argument("config: type mismatch at " + where);
        slot = val;
    }
}

}  // namespace

TestWindow WindowSpec::window() const {
    if (scale <= 0.0) throw std::invalid_argument("window: scale must be positive");
    if (kind == "bump") return {TestWindow::Kind::bump, center, scale};
    if (kind == "gaussian") return {TestWindow::Kind::gaussian, center, scale};
    throw std::invalid_argument("window: unknown kind " + kind);
}

Config defaultConfig() { return Config{}; }

Config parseConfig(const std::string& jsonText) {
    Json patch;
    try {
        patch = Json::parse(jsonText);
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument(std::string("config: not valid JSON: ") + e.what());
    }
    Json base = toJson(Config{});
    mergeChecked(base, patch, "");
    return fromJson(base);
}

Config loadConfig(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parseConfig(buf.str());
}

std::string configJson(const Config& cfg) { return toJson(cfg).dump(); }

std::uint64_t configHash(const Config& cfg) { return fnv1a(configJson(cfg)); }

}  // namespace skque
