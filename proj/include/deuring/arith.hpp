#pragma once

// Word-size prime fields, F_p^2, and fixed-point big arithmetic used by the
// complex-multiplication evaluation code.

#include <climits>
#include <optional>

#include "deuring/common.hpp"

namespace deuring {

u64 mul_mod(u64 a, u64 b, u64 m);
u64 pow_mod(u64 a, u64 e, u64 m);

// Inverse of a modulo m (m not necessarily prime); throws ZeroInverse if gcd != 1.
u64 mod_inverse(u64 a, u64 m);
Int mod_inverse(const Int& a, const Int& m);

// Kronecker symbol (a|n), the usual extension of the Legendre symbol.
int kronecker(const Int& a, const Int& n);
int kronecker(i64 a, i64 n);

// Smaller of the two square roots of a mod an odd prime p, if a is a residue.
std::optional<u64> sqrt_mod_p(u64 a, u64 p);

u64 least_nonresidue(u64 p);

struct FpCtx {
    u64 p;
    explicit FpCtx(u64 p_) : p(p_) {
        if (p < 2) throw DomainError("FpCtx: modulus must be >= 2");
    }
    u64 add(u64 a, u64 b) const {
        u64 s = a + b;
        return s >= p ? s - p : s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
    u64 neg(u64 a) const { return a == 0 ? 0 : p - a; }
    u64 mul(u64 a, u64 b) const { return (u64)((u128)a * b % p); }
    u64 inv(u64 a) const { return mod_inverse(a, p); }
    u64 pow(u64 a, u64 e) const { return pow_mod(a, e, p); }
    u64 reduce(const Int& v) const { return mpz_fdiv_ui(v.get_mpz_t(), p); }
    u64 reduce_signed(i64 v) const {
        i64 r = v % (i64)p;
        return r < 0 ? (u64)(r + (i64)p) : (u64)r;
    }
};

// Quadratic extension F_p(w) with w^2 = nr, nr the least positive nonresidue.
struct Fp2 {
    u64 a = 0, b = 0;
    bool operator==(const Fp2&) const = default;
};

struct Fp2Ctx {
    FpCtx fp;
    u64 nr;
    explicit Fp2Ctx(u64 p_) : fp(p_), nr(least_nonresidue(p_)) {
        if (p_ == 2) throw DomainError("Fp2Ctx: p must be odd");
    }
    u64 p() const { return fp.p; }
    Fp2 embed(u64 a) const { return {a % fp.p, 0}; }
    bool in_base(const Fp2& x) const { return x.b == 0; }
    bool is_zero(const Fp2& x) const { return x.a == 0 && x.b == 0; }
    Fp2 add(const Fp2& x, const Fp2& y) const { return {fp.add(x.a, y.a), fp.add(x.b, y.b)}; }
    Fp2 sub(const Fp2& x, const Fp2& y) const { return {fp.sub(x.a, y.a), fp.sub(x.b, y.b)}; }
    Fp2 neg(const Fp2& x) const { return {fp.neg(x.a), fp.neg(x.b)}; }
    Fp2 mul(const Fp2& x, const Fp2& y) const {
        u64 aa = fp.mul(x.a, y.a), bb = fp.mul(x.b, y.b);
        u64 ab = fp.mul(x.a, y.b), ba = fp.mul(x.b, y.a);
        return {fp.add(aa, fp.mul(nr, bb)), fp.add(ab, ba)};
    }
    Fp2 sqr(const Fp2& x) const { return mul(x, x); }
    // Conjugate, which is also the p-power Frobenius.
    Fp2 frobenius(const Fp2& x) const { return {x.a, fp.neg(x.b)}; }
    u64 norm(const Fp2& x) const { return fp.sub(fp.mul(x.a, x.a), fp.mul(nr, fp.mul(x.b, x.b))); }
    Fp2 inv(const Fp2& x) const {
        u64 n = norm(x);
        if (n == 0) throw ZeroInverse("Fp2Ctx::inv of zero");
        u64 ni = fp.inv(n);
        return {fp.mul(x.a, ni), fp.mul(fp.neg(x.b), ni)};
    }
    Fp2 pow(Fp2 x, u64 e) const {
        Fp2 r = embed(1);
        while (e) {
            if (e & 1) r = mul(r, x);
            x = sqr(x);
            e >>= 1;
        }
        return r;
    }
};

// ---------------------------------------------------------------------------
// Fixed-point reals: value = man * 2^exp.  Every rounding step truncates the
// mantissa toward zero; `prec` is the number of mantissa bits retained.

inline constexpr long kMaxPrecisionBits = 1L << 22;

class BigFixed {
public:
    Int man;
    long exp = 0;

    BigFixed() = default;
    BigFixed(Int m, long e) : man(std::move(m)), exp(e) {}

    static BigFixed from_int(const Int& v) { return BigFixed(v, 0); }
    static BigFixed from_ratio(const Int& num, const Int& den, long prec);

    bool is_zero() const { return man == 0; }
    int sign() const { return sgn(man); }
    // ~ floor(log2 |x|) + 1; very small sentinel for zero.
    long mag2() const {
        if (man == 0) return LONG_MIN / 2;
        return exp + (long)mpz_sizeinbase(man.get_mpz_t(), 2);
    }
    void round(long prec);
    double to_double() const;
};

void check_precision(long prec);

BigFixed bf_add(const BigFixed& a, const BigFixed& b, long prec);
BigFixed bf_sub(const BigFixed& a, const BigFixed& b, long prec);
BigFixed bf_mul(const BigFixed& a, const BigFixed& b, long prec);
BigFixed bf_div(const BigFixed& a, const BigFixed& b, long prec);
BigFixed bf_div_int(const BigFixed& a, const Int& n, long prec);
BigFixed bf_neg(const BigFixed& a);
BigFixed bf_sqrt(const BigFixed& a, long prec);
// sign of |a| - num/den  (den > 0)
int bf_cmp_abs_ratio(const BigFixed& a, const Int& num, const Int& den);
// nearest integer; *residual receives the exact difference x - n
Int bf_round_to_int(const BigFixed& x, BigFixed* residual);

struct BigComplex {
    BigFixed re, im;
};

BigComplex cx_add(const BigComplex& a, const BigComplex& b, long prec);
BigComplex cx_sub(const BigComplex& a, const BigComplex& b, long prec);
BigComplex cx_mul(const BigComplex& a, const BigComplex& b, long prec);
BigComplex cx_div(const BigComplex& a, const BigComplex& b, long prec);
BigComplex cx_scale(const BigComplex& a, const BigFixed& s, long prec);
BigComplex cx_conj(const BigComplex& a);
BigFixed cx_norm(const BigComplex& a, long prec);
long cx_mag2(const BigComplex& a);

// floor(pi * 2^prec); cached per precision
Int pi_scaled(long prec);
BigFixed pi_fixed(long prec);

// exp(z) with |result - exp(z)| <= 2^(8-prec) * exp(Re z)
BigComplex complex_exp(const BigComplex& z, long prec);

}  // namespace deuring
