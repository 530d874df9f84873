#pragma once

// Evaluation of the modular j-function at CM points and assembly of Hilbert
// class polynomials with a rounding-residual acceptance gate.

#include "deuring/arith.hpp"
#include "deuring/common.hpp"
#include "deuring/poly.hpp"

namespace deuring {

// j(tau) for Im tau >= sqrt(3)/2 via the integer q-expansion; the truncation
// point is chosen from the coefficient bound |c(n)| < e^{4 pi sqrt(n)} so that
// |result - j(tau)| <= 2^{16-precision} * max(1, |j(tau)|).
BigComplex eval_j(const BigComplex& tau, long precision);

// Monic integer polynomial of degree h(-D) whose roots are the j-invariants
// of the CM points of discriminant -D.  Every coefficient must round to an
// integer with residual < 0.01 or the computation is retried once at doubled
// precision and then rejected (PrecisionInsufficient).
// extra_bits > 0 adds margin to the precision heuristic and bypasses the memo
// (used by the stability property test).
IntPoly hilbert_class_poly(i64 D, long extra_bits = 0);

// Coefficientwise reduction into F_p[x].
ModPoly reduce_mod_p(const IntPoly& f, u64 p);

// Drop the in-process memo (test isolation).
void hilbert_memo_clear();

}  // namespace deuring
