#pragma once

// JSON disk cache for expensive polynomial artifacts.  Writes go to a temp
// file followed by an atomic rename; every file carries a content checksum so
// torn or tampered files degrade to recomputation (with a warning) instead of
// silently feeding bad data downstream.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "deuring/common.hpp"

namespace deuring {

struct CachedPoly {
    std::vector<Int> coeffs;  // low degree first
    long precision_bits = 0;
};

class DiskCache {
public:
    explicit DiskCache(std::filesystem::path dir);

    // kind is a short tag ("hd" for class polynomials keyed by D, "ssp" for
    // supersingular polynomials keyed by p); key names the object.
    void store(const std::string& kind, i64 key, const CachedPoly& value);
    // nullopt on miss or on a corrupt/mismatched file (warning to stderr).
    std::optional<CachedPoly> load(const std::string& kind, i64 key);

    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path file_for(const std::string& kind, i64 key) const;
    std::filesystem::path dir_;
};

// Process-global cache used by the polynomial producers; null disables disk
// caching.  The caller keeps ownership.
DiskCache* active_cache();
void set_active_cache(DiskCache* cache);

}  // namespace deuring
