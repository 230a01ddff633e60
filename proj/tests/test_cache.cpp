#include "skque/cache.hpp"

#include <array>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>

#include "doctest.h"

using namespace skque;
namespace fs = std::filesystem;

namespace {

std::string freshDir(const char* leaf) {
    fs::path p = fs::temp_directory_path() / leaf;
    fs::remove_all(p);
    return p.string();
}

}  // namespace

TEST_CASE("constructor lays out the four subdirectories") {
    std::string dir = freshDir("skque_cache_layout");
    Cache cache(dir);
    for (const char* sub : {"qexp", "jacobi", "lvalues", "classes"})
        CHECK(fs::is_directory(fs::path(dir) / sub));
    CHECK(cache.dir() == dir);
}

TEST_CASE("real payload round-trip") {
    Cache cache(freshDir("skque_cache_real"));
    std::map<std::int64_t, std::array<double, 2>> in{
        {-3, {1.5, 0.0}}, {-20, {2.5e-3, 1e-9}}, {-499, {-0.75, 0.0}}};
    cache.storeReal("lvalues", "twist_w18", 18, "central", in);

    std::map<std::int64_t, std::array<double, 2>> out;
    CHECK(cache.loadReal("lvalues", "twist_w18", 18, "central", out));
    CHECK(out == in);

    // header mismatches are misses
    out.clear();
    CHECK_FALSE(cache.loadReal("lvalues", "twist_w18", 22, "central", out));
    CHECK_FALSE(cache.loadReal("lvalues", "twist_w18", 18, "aptrace", out));
    CHECK_FALSE(cache.loadReal("lvalues", "absent", 18, "central", out));
}

TEST_CASE("integer payload round-trip is exact") {
    Cache cache(freshDir("skque_cache_int"));
    Int big("123456789012345678901234567890123456789");
    std::map<std::int64_t, Int> in{{2, -528}, {3, big}, {5, 0}};
    cache.storeInt("lvalues", "ap_w18", 18, "aptrace", in);

    std::map<std::int64_t, Int> out;
    CHECK(cache.loadInt("lvalues", "ap_w18", 18, "aptrace", out));
    CHECK(out.size() == 3);
    CHECK(out.at(2) == -528);
    CHECK(out.at(3) == big);
    CHECK(out.at(5) == 0);
}

TEST_CASE("corrupt files are misses, not errors") {
    std::string dir = freshDir("skque_cache_corrupt");
    Cache cache(dir);
    std::map<std::int64_t, Int> payload{{2, 1}};
    cache.storeInt("jacobi", "tbl", 10, "kohnen", payload);
    {
        std::ofstream f(fs::path(dir) / "jacobi" / "tbl.json", std::ios::trunc);
        f << "{ truncated";
    }
    std::map<std::int64_t, Int> out;
    CHECK_FALSE(cache.loadInt("jacobi", "tbl", 10, "kohnen", out));
}

TEST_CASE("atomic write leaves no temp file behind") {
    std::string dir = freshDir("skque_cache_atomic");
    fs::create_directories(dir);
    fs::path target = fs::path(dir) / "x.json";
    atomicWriteFile(target.string(), "{\"a\": 1}");
    CHECK(fs::exists(target));
    CHECK_FALSE(fs::exists(target.string() + ".tmp"));
    std::ifstream f(target);
    std::string body((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    CHECK(body == "{\"a\": 1}");
}

TEST_CASE("cache dir resolution order") {
    unsetenv("SKQUELAB_CACHE");
    CHECK(Cache::resolveDir("") == "cache");
    setenv("SKQUELAB_CACHE", "/tmp/envcache", 1);
    CHECK(Cache::resolveDir("") == "/tmp/envcache");
    CHECK(Cache::resolveDir("/tmp/flagcache") == "/tmp/flagcache");
    unsetenv("SKQUELAB_CACHE");
}
