#pragma once

// Certified congruences between U(p)-images of class polynomials evaluated at
// j and low-degree polynomials in j.  The certificate pipeline is:
//
//   1. reduce the class polynomial of discriminant -D mod p,
//   2. expand it as a q-series via the j-expansion and apply U(p),
//   3. greedily eliminate the principal part by powers of j,
//   4. a certificate exists iff the eliminated series is identically zero
//      through its window of validity.
//
// The divisibility side condition tracked alongside is s_tilde(p)^2 | H_D
// over F_p, where s_tilde is the reduced supersingular polynomial (the factor
// of the supersingular polynomial away from j = 0 and j = 1728).

#include <vector>

#include "deuring/arith.hpp"
#include "deuring/common.hpp"
#include "deuring/poly.hpp"
#include "deuring/qseries.hpp"

namespace deuring {

// thrown when a series has too little precision left to certify anything
struct InsufficientOrder : Error {
    using Error::Error;
};

// ---------------------------------------------------------------------------
// root multiplicities of H_D mod p at supersingular invariants

struct RootMultiplicity {
    Fp2 root;         // supersingular j-invariant in F_{p^2}
    bool in_base;     // true if the root lies in F_p
    i64 multiplicity; // multiplicity as a root of H_D mod p (0 if not a root)
};

struct MultiplicityReport {
    i64 D = 0;
    u64 p = 0;
    i64 class_number = 0;              // degree of H_D
    std::vector<RootMultiplicity> roots;
    i64 ss_total = 0;                  // sum of multiplicities over all rows

    bool all_at_least(i64 t) const;
};

// multiplicity of every supersingular invariant of F_{p^2} in H_D mod p
MultiplicityReport multiplicity_report(i64 D, u64 p);

// whether S^t divides H_D over F_p, where S is the full supersingular
// polynomial when `full` is true and the reduced one (s_tilde) otherwise.
// Performed by repeated exact polynomial division.
bool divisibility_check(i64 D, u64 p, int t, bool full);

// ---------------------------------------------------------------------------
// U(p) reduction and certification

// (H_D(j) mod p) | U(p), accurate through q^N
QSeries up_reduction(i64 D, u64 p, i64 N);

// Greedy elimination of the principal part of `s` by subtracting monic-in-q
// images of powers of j: if the leading term is c q^{-n} with n > 0, subtract
// c * j(q)^n and repeat.  Succeeds when the remainder is constant through the
// window; fails (ok = false) when a nonpositive power of q with a nonzero
// coefficient other than q^0 survives, i.e. the series is not a polynomial
// in j.  Requires the post-elimination window to retain at least 10
// observable coefficients (InsufficientOrder otherwise).
struct ExpressInJ {
    bool ok = false;
    ModPoly poly;                // filled when ok
    i64 offending_exponent = 0;  // first q-exponent that breaks polynomiality
};
ExpressInJ express_in_j(const QSeries& s);

struct CongruenceCertificate {
    i64 D = 0;
    u64 p = 0;
    i64 class_number = 0;

    // s_tilde^2 | H_D over F_p
    bool divisibility_holds = false;

    // the U(p) image is a polynomial in j through the verified window
    bool expressible = false;
    ModPoly g;          // that polynomial, when expressible
    bool is_constant = false;

    // constant term of the q-expansion of H_D(j) mod p (the predicted
    // constant when the congruence degenerates)
    u64 c0 = 0;

    // certificate = divisibility + expressibility
    bool certified = false;

    i64 verified_through = 0;   // q-order through which the claim was checked
    i64 observed_valuation = 0; // valuation of the U(p) image
    std::vector<u64> observed;  // coefficients of q^0..q^7 of the U(p) image
    bool principal_vanishes = false; // no negative q-powers survive U(p)
};

// Certify H_D(j)|U(p) ~ G(j) mod p through q^N (N defaults to 50 in the CLI).
CongruenceCertificate certify_congruence(i64 D, u64 p, i64 N);

// ---------------------------------------------------------------------------
// surveys

// discriminant family attached to p: fundamental -D with p/6 < h(-D) < p and
// kronecker(-D, p) != 1
bool family_member(i64 D, u64 p);

struct OmegaSurvey {
    u64 p = 0;
    i64 dmax = 0;
    i64 N = 0;
    std::vector<i64> members;
    std::vector<i64> constant_members;    // certified with constant G
    std::vector<i64> polynomial_members;  // certified with deg G >= 1
    std::vector<i64> refused;             // no certificate
};

// certify every family member with D <= dmax (dmax <= 0 selects 3 p^2)
OmegaSurvey survey_family(u64 p, i64 dmax, i64 N);

struct DecileRow {
    i64 lo = 0, hi = 0;   // discriminant range covered (inclusive)
    i64 qualifying = 0;   // fundamental, non-split discriminants seen
    i64 exceptions = 0;   // of those, failures of S^t | H_D
};

struct SurjectivityScan {
    u64 p = 0;
    int t = 0;
    i64 dmin = 0, dmax = 0;
    i64 qualifying = 0;
    std::vector<i64> exceptions;
    std::vector<DecileRow> deciles;  // ten equal slices of [dmin, dmax]
};

// Test S_p^t | H_D (full polynomial) for every fundamental D in [dmin, dmax]
// with kronecker(-D, p) != 1, tabulating exceptions by decile.
SurjectivityScan scan_surjectivity(u64 p, int t, i64 dmin, i64 dmax);

}  // namespace deuring
