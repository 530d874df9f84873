#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace deuring {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

using Int = mpz_class;
using Rat = mpq_class;

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Argument violates a documented precondition (bad modulus, bad discriminant, ...).
struct DomainError : Error {
    using Error::Error;
};

// A quantity that should be invertible is not.
struct ZeroInverse : Error {
    using Error::Error;
};

// Requested working precision exceeds the hard cap.
struct PrecisionOverflow : Error {
    using Error::Error;
};

// Floating computation did not settle to an integer within tolerance, even after retry.
struct PrecisionInsufficient : Error {
    using Error::Error;
};

// A series operation would need more coefficients than the configured limit.
struct OrderOverflow : Error {
    using Error::Error;
};

// An internal cross-check failed; indicates a bug, not bad input.
struct InternalInconsistency : Error {
    using Error::Error;
};

inline i64 floor_div(i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline i64 ceil_div(i64 a, i64 b) { return -floor_div(-a, b); }

}  // namespace deuring
