#include "deuring/cache.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

namespace deuring {

namespace {

u64 fnv1a(const std::string& s) {
    u64 h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string checksum_payload(const std::string& kind, i64 key, const CachedPoly& v) {
    std::ostringstream os;
    os << kind << '|' << key << '|' << v.coeffs.size() << '|';
    for (const Int& c : v.coeffs) os << c.get_str() << ',';
    return os.str();
}

std::atomic<unsigned> g_tmp_counter{0};

}  // namespace

DiskCache::DiskCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path DiskCache::file_for(const std::string& kind, i64 key) const {
    return dir_ / (kind + "_" + std::to_string(key) + ".json");
}

void DiskCache::store(const std::string& kind, i64 key, const CachedPoly& value) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);  // first write creates the dir

    nlohmann::json doc;
    // Field names follow the class-polynomial layout; other kinds mirror it.
    doc[kind == "ssp" ? "p" : "D"] = key;
    doc["h"] = value.coeffs.empty() ? 0 : (i64)value.coeffs.size() - 1;
    std::vector<std::string> cs;
    cs.reserve(value.coeffs.size());
    for (const Int& c : value.coeffs) cs.push_back(c.get_str());
    doc["coeffs"] = cs;
    doc["precision_bits"] = value.precision_bits;
    char hex[32];
    std::snprintf(hex, sizeof hex, "%016llx",
                  (unsigned long long)fnv1a(checksum_payload(kind, key, value)));
    doc["checksum"] = hex;

    auto tmp = dir_ / ("tmp_" + std::to_string(::getpid()) + "_" +
                       std::to_string(g_tmp_counter.fetch_add(1)) + ".json");
    {
        std::ofstream out(tmp);
        if (!out) throw Error("cache: cannot write " + tmp.string());
        out << doc.dump(1) << '\n';
    }
    std::filesystem::rename(tmp, file_for(kind, key), ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error("cache: atomic rename failed for " + file_for(kind, key).string());
    }
}

std::optional<CachedPoly> DiskCache::load(const std::string& kind, i64 key) {
    auto path = file_for(kind, key);
    std::ifstream in(path);
    if (!in) return std::nullopt;

    auto complain = [&](const char* what) {
        std::fprintf(stderr, "warning: cache file %s %s; recomputing\n", path.string().c_str(),
                     what);
        return std::nullopt;
    };

    nlohmann::json doc = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) return complain("is not valid JSON");

    CachedPoly v;
    try {
        i64 stored_key = doc.at(kind == "ssp" ? "p" : "D").get<i64>();
        if (stored_key != key) return complain("has mismatched key");
        for (const auto& s : doc.at("coeffs")) v.coeffs.emplace_back(s.get<std::string>());
        v.precision_bits = doc.at("precision_bits").get<long>();
        char hex[32];
        std::snprintf(hex, sizeof hex, "%016llx",
                      (unsigned long long)fnv1a(checksum_payload(kind, key, v)));
        if (doc.at("checksum").get<std::string>() != hex) return complain("fails its checksum");
    } catch (const std::exception&) {
        return complain("has missing or malformed fields");
    }
    return v;
}

namespace {
DiskCache* g_cache = nullptr;
}

DiskCache* active_cache() { return g_cache; }
void set_active_cache(DiskCache* cache) { g_cache = cache; }

}  // namespace deuring
