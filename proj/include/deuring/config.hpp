#pragma once

// Runtime configuration shared by the CLI subcommands: series truncation,
// precision margins, oracle bounds, survey ranges, caching, and parallel
// width.  Values come from (in increasing precedence) defaults, a key=value
// config file, the DEURING_CACHE_DIR environment variable, and command-line
// flags.

#include <string>

#include "deuring/common.hpp"

namespace deuring {

struct BadConfig : DomainError {
    using DomainError::DomainError;
};

struct Config {
    i64 series_order = 200;      // q-expansion window for certificates
    long margin_bits = 64;       // extra float precision for CM evaluation
    u64 oracle_prime_bound = 60; // largest p the point-count oracle accepts
    i64 survey_dmax = 0;         // 0 = choose 3 p^2 automatically
    std::string cache_dir;       // empty = no disk cache
    int parallel = 1;            // worker width for surveys

    void validate() const;  // throws BadConfig on nonpositive values
};

// Parse a key=value file ('#' comments, blank lines ignored).  Unknown keys
// are rejected so typos fail loudly.
Config load_config_file(const std::string& path, Config base = Config());

// Apply DEURING_CACHE_DIR if set.
void apply_env(Config& cfg);

}  // namespace deuring
