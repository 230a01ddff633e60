#include "skque/cache.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace skque {

namespace {

using Json = nlohmann::json;

bool readJson(const std::string& path, Json& out) {
    std::ifstream in(path);
    if (!in) return false;
    std::ostringstream buf;
    buf << in.rdbuf();
    out = Json::parse(buf.str(), nullptr, false);
    return !out.is_discarded();
}

bool headerMatches(const Json& j, unsigned long w, const std::string& kind) {
    return j.is_object() && j.contains("w") && j.contains("kind") && j.contains("values") &&
           j["w"].is_number() && j["w"].get<unsigned long>() == w && j["kind"] == kind &&
           j["values"].is_object();
}

}  // namespace

void atomicWriteFile(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cache: cannot write " + tmp);
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

Cache::Cache(const std::string& dir) : dir_(dir) {
    for (const char* sub : {"qexp", "jacobi", "lvalues", "classes"})
        std::filesystem::create_directories(std::filesystem::path(dir_) / sub);
}

std::string Cache::resolveDir(const std::string& flagDir) {
    if (!flagDir.empty()) return flagDir;
    const char* env = std::getenv("SKQUELAB_CACHE");
    if (env != nullptr && env[0] != '\0') return env;
    return "cache";
}

std::string Cache::path(const std::string& sub, const std::string& name) const {
    return (std::filesystem::path(dir_) / sub / (name + ".json")).string();
}

bool Cache::loadReal(const std::string& sub, const std::string& name, unsigned long w,
                     const std::string& kind,
                     std::map<std::int64_t, std::array<double, 2>>& out) const {
    Json j;
    if (!readJson(path(sub, name), j) || !headerMatches(j, w, kind)) return false;
    std::map<std::int64_t, std::array<double, 2>> parsed;
    for (const auto& [key, val] : j["values"].items()) {
        if (!val.is_array() || val.size() != 2 || !val[0].is_number() || !val[1].is_number())
            return false;
        parsed[std::stoll(key)] = {val[0].get<double>(), val[1].get<double>()};
    }
    out = std::move(parsed);
    return true;
}

void Cache::storeReal(const std::string& sub, const std::string& name, unsigned long w,
                      const std::string& kind,
                      const std::map<std::int64_t, std::array<double, 2>>& values) const {
    Json j;
    j["w"] = w;
    j["kind"] = kind;
    Json& v = j["values"] = Json::object();
    for (const auto& [key, val] : values) v[std::to_string(key)] = {val[0], val[1]};
    atomicWriteFile(path(sub, name), j.dump());
}

bool Cache::loadInt(const std::string& sub, const std::string& name, unsigned long w,
                    const std::string& kind, std::map<std::int64_t, Int>& out) const {
    Json j;
    if (!readJson(path(sub, name), j) || !headerMatches(j, w, kind)) return false;
    std::map<std::int64_t, Int> parsed;
    for (const auto& [key, val] : j["values"].items()) {
        if (!val.is_string()) return false;
        Int z;
        if (z.set_str(val.get<std::string>(), 10) != 0) return false;
        parsed[std::stoll(key)] = z;
    }
    out = std::move(parsed);
    return true;
}

void Cache::storeInt(const std::string& sub, const std::string& name, unsigned long w,
                     const std::string& kind, const std::map<std::int64_t, Int>& values) const {
    Json j;
    j["w"] = w;
    j["kind"] = kind;
    Json& v = j["values"] = Json::object();
    for (const auto& [key, val] : values) v[std::to_string(key)] = val.get_str();
    atomicWriteFile(path(sub, name), j.dump());
}

}  // namespace skque
