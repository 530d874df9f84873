#pragma once

// Truncated Laurent q-expansions with exact coefficient tracking.  A series
// carries its valuation, the highest exponent it is accurate through
// (`order`, inclusive), and an optional modulus (0 = integer coefficients).
// Every arithmetic operation computes the exact order of validity of its
// result from the operands; reading past it throws.

#include <vector>

#include "deuring/common.hpp"

namespace deuring {

inline constexpr i64 kMaxSeriesOrder = 1 << 23;

class QSeries {
public:
    QSeries() : val_(1), order_(0), mod_(0) {}

    static QSeries zero(i64 order, const Int& mod);
    static QSeries monomial(const Int& c, i64 expo, i64 order, const Int& mod);
    static QSeries from_coeffs(std::vector<Int> coeffs, i64 val, i64 order, const Int& mod);

    bool is_zero() const { return c_.empty(); }
    // valuation of a zero series is reported as order()+1
    i64 valuation() const { return val_; }
    i64 order() const { return order_; }
    const Int& mod() const { return mod_; }
    Int coeff(i64 n) const;
    const std::vector<Int>& raw() const { return c_; }

    void normalize();

private:
    i64 val_;
    i64 order_;
    std::vector<Int> c_;  // c_[i] = coefficient of q^(val_+i)
    Int mod_;

    friend QSeries qs_add(const QSeries&, const QSeries&);
    friend QSeries qs_neg(const QSeries&);
    friend QSeries qs_mul(const QSeries&, const QSeries&);
    friend QSeries qs_scale(const QSeries&, const Int&);
    friend QSeries qs_truncate(const QSeries&, i64);
    friend QSeries qs_shift(const QSeries&, i64);
    friend QSeries qs_inverse(const QSeries&);
    friend QSeries qs_apply_up(const QSeries&, u64);
    friend QSeries qs_apply_vp(const QSeries&, u64);
    friend QSeries qs_reduce_mod(const QSeries&, const Int&);
};

QSeries qs_add(const QSeries& a, const QSeries& b);
QSeries qs_sub(const QSeries& a, const QSeries& b);
QSeries qs_neg(const QSeries& a);
QSeries qs_mul(const QSeries& a, const QSeries& b);
QSeries qs_scale(const QSeries& a, const Int& s);
QSeries qs_truncate(const QSeries& a, i64 order);
QSeries qs_shift(const QSeries& a, i64 k);
// requires valuation 0 and invertible constant term
QSeries qs_inverse(const QSeries& a);
QSeries qs_pow(const QSeries& a, u64 e);
// U(p): picks coefficients of q^(pn); valuation ceil(v/p), order floor(N/p)
QSeries qs_apply_up(const QSeries& a, u64 p);
// V(p): substitutes q -> q^p; order scales by p
QSeries qs_apply_vp(const QSeries& a, u64 p);
QSeries qs_reduce_mod(const QSeries& a, const Int& m);

// eta-quotient building blocks
QSeries delta_series(i64 order, const Int& mod);
QSeries e4_series(i64 order, const Int& mod);
QSeries j_series(i64 order, const Int& mod);
// process-wide memo of j; returns a truncated copy
QSeries j_series_cached(i64 order, const Int& mod);

// F(j) for F = sum coeffs[k] x^k, accurate through `order`
QSeries poly_in_j(const std::vector<Int>& coeffs, i64 order, const Int& mod);
// p*(F(j)|U(p)) + F(j(pz)), over the ring given by mod
QSeries hecke_t0(const std::vector<Int>& coeffs, u64 p, i64 order, const Int& mod);

}  // namespace deuring
