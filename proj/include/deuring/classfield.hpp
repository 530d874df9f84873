#pragma once

// Positive definite binary quadratic forms of discriminant -D, class numbers,
// Hurwitz class numbers and their prime-weighted variant.

#include <utility>
#include <vector>

#include "deuring/common.hpp"

namespace deuring {

struct BadDiscriminant : DomainError {
    using DomainError::DomainError;
};
struct NotFundamental : DomainError {
    using DomainError::DomainError;
};

// (a, b, c) with b^2 - 4ac = -D, a > 0
struct QuadForm {
    i64 a, b, c;
    bool operator==(const QuadForm&) const = default;
};

// -D is a valid (negative) discriminant: D > 0 and -D = 0 or 1 mod 4
bool is_valid_disc(i64 D);
// -D is a fundamental discriminant
bool is_fundamental(i64 D);
// -D = f^2 * (-d0) with -d0 fundamental; returns {f, d0}
std::pair<i64, i64> fundamental_part(i64 D);

// all reduced forms of discriminant -D, sorted by (a, b)
std::vector<QuadForm> reduced_forms(i64 D);
i64 class_number(i64 D);

// half the unit count of the order of discriminant -D: 3, 2, or 1
int units_half(i64 D);

// Hurwitz class number H(m) = sum over -m = f^2 * disc of h(disc)/u(disc)
Rat hurwitz_h(i64 m);

// H_p(D) = (1 - (-D|p))/2 * h(-D)/u(D) for fundamental D
Rat eisenstein_hp(i64 D, u64 p);

}  // namespace deuring
