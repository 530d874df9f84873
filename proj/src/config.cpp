#include "deuring/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace deuring {

void Config::validate() const {
    if (series_order < 10) throw BadConfig("series_order must be at least 10");
    if (margin_bits < 0) throw BadConfig("margin_bits must be nonnegative");
    if (oracle_prime_bound < 5) throw BadConfig("oracle_prime_bound must be at least 5");
    if (survey_dmax < 0) throw BadConfig("survey_dmax must be nonnegative (0 = automatic)");
    if (parallel < 1) throw BadConfig("parallel must be at least 1");
}

Config load_config_file(const std::string& path, Config base) {
    std::ifstream in(path);
    if (!in) throw BadConfig("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        size_t b = line.find_last_not_of(" \t\r");
        line = line.substr(a, b - a + 1);
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw BadConfig("config line " + std::to_string(lineno) + ": expected key=value");
        auto trim = [](std::string s) {
            size_t x = s.find_first_not_of(" \t");
            size_t y = s.find_last_not_of(" \t");
            return x == std::string::npos ? std::string() : s.substr(x, y - x + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        auto as_int = [&](const std::string& v) -> long long {
            size_t pos = 0;
            long long x = 0;
            try {
                x = std::stoll(v, &pos);
            } catch (const std::exception&) {
                pos = std::string::npos;
            }
            if (pos != v.size())
                throw BadConfig("config line " + std::to_string(lineno) + ": bad integer '" + v + "'");
            return x;
        };
        if (key == "series_order")
            base.series_order = as_int(val);
        else if (key == "margin_bits")
            base.margin_bits = long(as_int(val));
        else if (key == "oracle_prime_bound")
            base.oracle_prime_bound = u64(as_int(val));
        else if (key == "survey_dmax")
            base.survey_dmax = as_int(val);
        else if (key == "cache_dir")
            base.cache_dir = val;
        else if (key == "parallel")
            base.parallel = int(as_int(val));
        else
            throw BadConfig("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    base.validate();
    return base;
}

void apply_env(Config& cfg) {
    if (const char* dir = std::getenv("DEURING_CACHE_DIR"))
        if (*dir) cfg.cache_dir = dir;
}

}  // namespace deuring
