#pragma once

// The definite rational quaternion algebra ramified at one finite prime p,
// a maximal order R inside it, and the arithmetic read off from R:
//
//   * the inseparable two-sided ideal (the kernel of the norm form mod p),
//   * the rank-3 lattice L = (Z + 2R) intersected with trace zero, with the
//     reduced norm as its quadratic form,
//   * theta coefficients a(m) = #{v in L : nrd(v) = m},
//   * optimal-embedding counts h(O_m, R) obtained by Moebius-style inversion
//     of a(m) against the unit group of R,
//   * a cross-check of those counts against root multiplicities of class
//     polynomials at supersingular j-invariants.
//
// All lattice computations are exact (GMP rationals + integer Hermite normal
// form); enumerations use floating-point boxes only to bound the search and
// re-verify membership with exact integer arithmetic.

#include <array>
#include <optional>
#include <vector>

#include "deuring/common.hpp"
#include "deuring/poly.hpp"

namespace deuring {

struct ConstructionFailed : Error {
    using Error::Error;
};
struct SaturationStalled : Error {
    using Error::Error;
};
struct IdealCheckFailed : Error {
    using Error::Error;
};
struct InversionNonIntegral : Error {
    using Error::Error;
};
struct CrossCheckFailed : Error {
    using Error::Error;
};

// quaternion with basis 1, i, j, k; i^2 = -alpha, j^2 = -beta, k = ij = -ji
using Quat = std::array<Rat, 4>;

struct QuaternionAlgebra {
    u64 p = 0;       // the finite ramified prime
    Int alpha, beta; // both positive (definite algebra)
};

Quat qa_mul(const QuaternionAlgebra& A, const Quat& x, const Quat& y);
Quat qa_conj(const Quat& x);
Rat qa_trd(const Quat& x);
Rat qa_nrd(const QuaternionAlgebra& A, const Quat& x);

// Hilbert symbol (a, b)_v of the form <a, b>: +1 split, -1 ramified.
// v = 0 denotes the infinite place, otherwise v must be prime.
int hilbert_symbol(const Int& a, const Int& b, const Int& v);

// Definite algebra ramified exactly at {p, infinity}; the ramification set is

// certified via Hilbert symbols at every relevant place before returning.
QuaternionAlgebra build_algebra(u64 p);

struct QuaternionOrder {
    QuaternionAlgebra alg;
    std::array<Quat, 4> basis;  // Z-basis in Hermite normal form
    Int discriminant;           // reduced discriminant; equals p when maximal
};

// Maximal order containing Z<1,i,j,k>, found by saturating the lattice at
// primes dividing the discriminant defect.  Postcondition: disc == p.
// Results are memoized per p.
QuaternionOrder maximal_order(u64 p);

// Basis of the unique two-sided ideal of reduced norm p (elements of R whose
// reduced norm is divisible by p).  Verifies index p^2 in R, two-sidedness,
// and pi^2 = pR.
std::array<Quat, 4> inseparable_ideal(const QuaternionOrder& R);

struct TraceZeroLattice {
    QuaternionAlgebra alg;
    std::array<Quat, 3> basis;               // basis of (Z + 2R) with trd = 0
    std::array<std::array<Int, 3>, 3> gram;  // of the reduced norm (integral)
    Int det;                                 // det(gram); 4 p^2 in every observed case
};

TraceZeroLattice trace_zero_lattice(const QuaternionOrder& R);

// a[m] = #{v in L : nrd(v) = m} for 0 <= m <= M (a[0] = 1)
std::vector<i64> theta_coefficients(const TraceZeroLattice& L, i64 M);

// #R^* = #{x in R : nrd(x) = 1}
i64 unit_count(const QuaternionOrder& R);

struct EmbeddingTable {
    u64 p = 0;
    i64 M = 0;
    i64 units = 0;        // #R^*
    std::vector<i64> a;   // theta coefficients, 0..M
    std::vector<i64> h;   // h(O_m, R) for -m a valid discriminant, else 0
};

// Invert a(m) = (#R^*/2) * sum_{f^2 | m} h(O_{m/f^2}, R) / u(m/f^2) for
// ascending m (u = half the unit count of the quadratic order: 3, 2 or 1).
// Every h must come out a nonnegative integer (InversionNonIntegral) and must
// vanish when the fundamental part of -m splits at p.
EmbeddingTable embedding_numbers(const QuaternionOrder& R, i64 M);

struct DeuringReport {
    i64 D = 0;
    u64 p = 0;
    bool ramified = false;      // p | D (eps = 1), else inert (eps = 1/2)
    i64 class_number = 0;       // h(-D)
    i64 ss_total = 0;           // sum of root multiplicities of H_D mod p
    bool aggregate_ok = false;  // ss_total == class_number
    bool type1 = false;         // unique supersingular invariant
    i64 mult_at_unique = 0;     // its multiplicity (type1 only)
    i64 embedding_count = 0;    // h(O_D, R)
    bool per_curve_ok = true;   // mult == eps * h(O_D, R) (type1 only)
};

// Compare class-polynomial factorization mod p with embedding counts for one
// fundamental D with kronecker(-D, p) != 1.  Throws CrossCheckFailed when a
// comparison fails.
DeuringReport deuring_cross_check(i64 D, u64 p);

// Same check across every fundamental 3 <= D <= dmax with kronecker != 1,
// building the embedding table once.
std::vector<DeuringReport> deuring_scan(u64 p, i64 dmax);

}  // namespace deuring
