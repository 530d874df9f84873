#pragma once

// Supersingular locus polynomials in F_p[x] via the Hasse-invariant method,
// with a naive point-counting oracle for cross-validation.

#include <vector>

#include "deuring/arith.hpp"
#include "deuring/common.hpp"
#include "deuring/poly.hpp"

namespace deuring {

struct BadPrime : DomainError {
    using DomainError::DomainError;
};
struct OracleBoundExceeded : DomainError {
    using DomainError::DomainError;
};

struct SupersingularData {
    u64 p;
    ModPoly s_tilde;         // monic; supersingular j-invariants outside {0,1728}
    ModPoly s;               // s_tilde * x^e0 * (x-1728)^e1
    int e0 = 0, e1 = 0;      // j=0 / j=1728 supersingular flags
    std::vector<Fp2> roots;  // all roots of s in F_{p^2}, each of multiplicity 1
};

// Coefficient of x^{p-1} in (x^3 + A(t)x + B(t))^{(p-1)/2} over F_p, where
// A = 3t(1728-t) and B = 2t(1728-t)^2 give a curve of j-invariant t.
// Vanishing at t = j0 (j0 != 0,1728) detects supersingularity.
ModPoly hasse_polynomial(u64 p);

// Assembles S_p and the tilde variant; asserts deg = floor(p/12), squarefree.
// p = 2, 3 are handled by table (single supersingular invariant j = 0).
SupersingularData ss_polynomials(u64 p);

// Counts points of a j0-parametrized curve over F_{p^2}; true iff trace = 0
// mod p.  Exhaustive, so p is capped by oracle_bound.
bool is_supersingular_oracle(const Fp2Ctx& F, const Fp2& j0, u64 oracle_bound = 60);

}  // namespace deuring
