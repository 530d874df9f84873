#pragma once

// Reconstruction of the degree-lowering operator mod p on the j-line.
//
// The series d(q) = (j(pz) - j(z)^p)/p is integral; mod p it is a rational
// function N_p(j)/s_tilde(j) whose denominator is the reduced supersingular
// polynomial.  delta_p recovers the numerator N_p from the q-expansion and
// verify_frobenius_expansion checks the induced identity
//
//   s~(j) F(j(pz)) === s~(j) F(j^p) + p F'(j^p) N_p(j)   (mod p^2)
//
// for a supplied integer polynomial F, with no series inversions: both sides
// are multiplied through by the denominator.

#include "deuring/common.hpp"
#include "deuring/poly.hpp"

namespace deuring {

// raised when (j(pz) - j^p) fails divisibility by p (implementation bug)
struct NotDivisibleByP : Error {
    using Error::Error;
};

// raised when the series that must be polynomial in j is not (bug signal)
struct NotPolynomial : Error {
    using Error::Error;
};

struct RationalJFunction {
    u64 p = 0;
    ModPoly numerator;    // N_p over F_p
    ModPoly denominator;  // s_tilde over F_p
    ModPoly common;       // gcd(numerator, denominator), recorded not removed
    i64 verified_through = 0;
};

// Recover N_p by expanding d(q) * s_tilde(j(q)) mod p through q^N and
// expressing it as a polynomial in j.  Requires N >= deg s_tilde + 20.
RationalJFunction delta_p(u64 p, i64 N);

// Check the displayed congruence mod p^2 through q^N for the polynomial F.
bool verify_frobenius_expansion(const IntPoly& F, u64 p, i64 N);

}  // namespace deuring
