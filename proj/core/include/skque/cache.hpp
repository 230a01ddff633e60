#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "skque/rational.hpp"

namespace skque {

/// Atomic file write: content goes to <path>.tmp, then rename.
void atomicWriteFile(const std::string& path, const std::string& content);

/// On-disk JSON cache with the fixed layout <dir>/{qexp,jacobi,lvalues,classes}.
/// Each file holds {"w": <int>, "kind": "<kind>", "values": {...}}; a missing
/// or malformed file, or one whose w/kind disagree, is a miss. Deleting the
/// cache never changes results, only runtime.
class Cache {
  public:
    /// Creates the directory and its four subdirectories.
    explicit Cache(const std::string& dir);

    const std::string& dir() const { return dir_; }

    /// --cache flag beats SKQUELAB_CACHE beats ./cache.
    static std::string resolveDir(const std::string& flagDir);

    /// values maps an integer key (d, n, p, ...) to [value, errEstimate].
    bool loadReal(const std::string& sub, const std::string& name, unsigned long w,
                  const std::string& kind,
                  std::map<std::int64_t, std::array<double, 2>>& out) const;
    void storeReal(const std::string& sub, const std::string& name, unsigned long w,
                   const std::string& kind,
                   const std::map<std::int64_t, std::array<double, 2>>& values) const;

    /// Exact integer payloads, stored as decimal strings.
    bool loadInt(const std::string& sub, const std::string& name, unsigned long w,
                 const std::string& kind, std::map<std::int64_t, Int>& out) const;
    void storeInt(const std::string& sub, const std::string& name, unsigned long w,
                  const std::string& kind, const std::map<std::int64_t, Int>& values) const;

  private:
    std::string path(const std::string& sub, const std::string& name) const;

    std::string dir_;
};

}  // namespace skque
