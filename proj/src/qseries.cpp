#include "deuring/qseries.hpp"

#include "deuring/arith.hpp"

#include <map>
#include <mutex>

namespace deuring {

namespace {

Int reduce_coeff(const Int& v, const Int& m) {
    if (m == 0) return v;
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    return r;
}

bool small_mod(const Int& m) { return m > 0 && m < (Int(1) << 31); }

void check_order(i64 n) {
    if (n > kMaxSeriesOrder || n < -kMaxSeriesOrder)
        throw OrderOverflow("series order beyond cap: " + std::to_string(n));
}

void check_same_mod(const QSeries& a, const QSeries& b) {
    if (a.mod() != b.mod()) throw DomainError("QSeries: mixed coefficient rings");
}

}  // namespace

void QSeries::normalize() {
    if (mod_ != 0)
        for (auto& x : c_) x = reduce_coeff(x, mod_);
    size_t lead = 0;
    while (lead < c_.size() && c_[lead] == 0) ++lead;
    if (lead > 0) {
        c_.erase(c_.begin(), c_.begin() + lead);
        val_ += (i64)lead;
    }
    if (c_.empty()) val_ = order_ + 1;
}

QSeries QSeries::zero(i64 order, const Int& mod) {
    check_order(order);
    QSeries s;
    s.val_ = order + 1;
    s.order_ = order;
    s.mod_ = mod;
    return s;
}

QSeries QSeries::monomial(const Int& c, i64 expo, i64 order, const Int& mod) {
    check_order(order);
    QSeries s = zero(order, mod);
    if (expo <= order) {
        s.val_ = expo;
        s.c_.assign(1, c);
        s.c_.resize(order - expo + 1, Int(0));
        s.normalize();
    }
    return s;
}

QSeries QSeries::from_coeffs(std::vector<Int> coeffs, i64 val, i64 order, const Int& mod) {
    check_order(order);
    if ((i64)coeffs.size() != order - val + 1)
        throw DomainError("QSeries::from_coeffs: size mismatch");
    QSeries s;
    s.val_ = val;
    s.order_ = order;
    s.c_ = std::move(coeffs);
    s.mod_ = mod;
    s.normalize();
    return s;
}

Int QSeries::coeff(i64 n) const {
    if (n > order_)
        throw OrderOverflow("QSeries::coeff: index " + std::to_string(n) +
                            " beyond order " + std::to_string(order_));
    if (n < val_) return Int(0);
    return c_[n - val_];
}

QSeries qs_add(const QSeries& a, const QSeries& b) {
    check_same_mod(a, b);
    QSeries r;
    r.mod_ = a.mod_;
    r.order_ = std::min(a.order_, b.order_);
    i64 v = std::min(a.val_, b.val_);
    if (v > r.order_) {
        r.val_ = r.order_ + 1;
        return r;
    }
    r.val_ = v;
    r.c_.assign(r.order_ - v + 1, Int(0));
    for (i64 n = std::max(v, a.val_); n <= std::min(r.order_, a.order_); ++n)
        r.c_[n - v] = a.c_[n - a.val_];
    for (i64 n = std::max(v, b.val_); n <= std::min(r.order_, b.order_); ++n)
        r.c_[n - v] += b.c_[n - b.val_];
    r.normalize();
    return r;
}

QSeries qs_neg(const QSeries& a) {
    QSeries r = a;
    for (auto& x : r.c_) x = -x;
    r.normalize();
    return r;
}

QSeries qs_sub(const QSeries& a, const QSeries& b) { return qs_add(a, qs_neg(b)); }

QSeries qs_mul(const QSeries& a, const QSeries& b) {
    check_same_mod(a, b);
    QSeries r;
    r.mod_ = a.mod_;
    // each factor is exact through its order; the product is exact through
    // min(order_a + val_b, order_b + val_a)
    r.order_ = std::min(a.order_ + b.val_, b.order_ + a.val_);
    check_order(r.order_);
    if (a.is_zero() || b.is_zero()) {
        r.val_ = r.order_ + 1;
        return r;
    }
    i64 v = a.val_ + b.val_;
    if (v > r.order_) {
        r.val_ = r.order_ + 1;
        return r;
    }
    r.val_ = v;
    i64 len = r.order_ - v + 1;
    if (small_mod(r.mod_)) {
        u64 m = r.mod_.get_ui();
        std::vector<u64> av(a.c_.size()), bv(b.c_.size()), rv(len, 0);
        for (size_t i = 0; i < a.c_.size(); ++i) av[i] = mpz_fdiv_ui(a.c_[i].get_mpz_t(), m);
        for (size_t i = 0; i < b.c_.size(); ++i) bv[i] = mpz_fdiv_ui(b.c_[i].get_mpz_t(), m);
        std::vector<u128> acc(len, 0);
        for (size_t i = 0; i < av.size() && (i64)i < len; ++i) {
            if (av[i] == 0) continue;
            size_t jmax = std::min(bv.size(), (size_t)(len - (i64)i));
            const u64 ai = av[i];
            for (size_t j = 0; j < jmax; ++j) acc[i + j] += (u128)ai * bv[j];
        }
        r.c_.resize(len);
        for (i64 i = 0; i < len; ++i) r.c_[i] = (unsigned long)(acc[i] % m);
    } else {
        r.c_.assign(len, Int(0));
        for (size_t i = 0; i < a.c_.size() && (i64)i < len; ++i) {
            if (a.c_[i] == 0) continue;
            size_t jmax = std::min(b.c_.size(), (size_t)(len - (i64)i));
            for (size_t j = 0; j < jmax; ++j)
                mpz_addmul(r.c_[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
        }
    }
    r.normalize();
    return r;
}

QSeries qs_scale(const QSeries& a, const Int& s) {
    QSeries r = a;
    for (auto& x : r.c_) x *= s;
    r.normalize();
    return r;
}

QSeries qs_truncate(const QSeries& a, i64 order) {
    check_order(order);
    QSeries r = a;
    if (order < r.order_) {
        if (order < r.val_) {
            r.c_.clear();
            r.val_ = order + 1;
        } else {
            r.c_.resize(order - r.val_ + 1);
        }
        r.order_ = order;
    }
    r.normalize();
    return r;
}

QSeries qs_shift(const QSeries& a, i64 k) {
    QSeries r = a;
    r.val_ += k;
    r.order_ += k;
    check_order(r.order_);
    return r;
}

QSeries qs_inverse(const QSeries& a) {
    if (a.is_zero() || a.val_ != 0)
        throw DomainError("qs_inverse: series must have valuation 0");
    i64 n = a.order_;
    QSeries r;
    r.mod_ = a.mod_;
    r.val_ = 0;
    r.order_ = n;
    if (small_mod(a.mod_)) {
        u64 m = a.mod_.get_ui();
        u64 a0 = mpz_fdiv_ui(a.c_[0].get_mpz_t(), m);
        u64 ai = mod_inverse(a0, m);
        std::vector<u64> av(n + 1, 0), bv(n + 1, 0);
        for (size_t i = 0; i < a.c_.size() && (i64)i <= n; ++i)
            av[i] = mpz_fdiv_ui(a.c_[i].get_mpz_t(), m);
        bv[0] = ai;
        for (i64 k = 1; k <= n; ++k) {
            u128 acc = 0;
            for (i64 j = 1; j <= k; ++j) acc += (u128)av[j] * bv[k - j];
            u64 s = (u64)(acc % m);
            bv[k] = mul_mod(m - s, ai, m) % m;
        }
        r.c_.resize(n + 1);
        for (i64 i = 0; i <= n; ++i) r.c_[i] = (unsigned long)bv[i];
    } else {
        Int a0 = a.c_[0];
        Int a0i;
        if (a.mod_ == 0) {
            if (a0 != 1 && a0 != -1)
                throw ZeroInverse("qs_inverse: integer series needs unit constant term");
            a0i = a0;
        } else {
            a0i = mod_inverse(a0, a.mod_);
        }
        r.c_.assign(n + 1, Int(0));
        r.c_[0] = a0i;
        for (i64 k = 1; k <= n; ++k) {
            Int acc = 0;
            for (i64 j = 1; j <= k && j < (i64)a.c_.size(); ++j)
                mpz_addmul(acc.get_mpz_t(), a.c_[j].get_mpz_t(), r.c_[k - j].get_mpz_t());
            r.c_[k] = reduce_coeff(-acc * a0i, a.mod_);
        }
    }
    r.normalize();
    return r;
}

QSeries qs_pow(const QSeries& a, u64 e) {
    if (e == 0) return QSeries::monomial(Int(1), 0, std::max(a.order(), i64(0)), a.mod());
    QSeries r = a;
    for (u64 i = 1; i < e; ++i) r = qs_mul(r, a);
    return r;
}

QSeries qs_apply_up(const QSeries& a, u64 p) {
    if (p < 2) throw DomainError("qs_apply_up: p must be >= 2");
    QSeries r;
    r.mod_ = a.mod_;
    r.order_ = floor_div(a.order_, (i64)p);
    i64 v = ceil_div(a.val_, (i64)p);
    if (a.is_zero() || v > r.order_) {
        r.val_ = r.order_ + 1;
        return r;
    }
    r.val_ = v;
    r.c_.reserve(r.order_ - v + 1);
    for (i64 n = v; n <= r.order_; ++n) r.c_.push_back(a.coeff(n * (i64)p));
    r.normalize();
    return r;
}

QSeries qs_apply_vp(const QSeries& a, u64 p) {
    if (p < 2) throw DomainError("qs_apply_vp: p must be >= 2");
    QSeries r;
    r.mod_ = a.mod_;
    r.order_ = a.order_ * (i64)p;
    check_order(r.order_);
    if (a.is_zero()) {
        r.val_ = r.order_ + 1;
        return r;
    }
    r.val_ = a.val_ * (i64)p;
    r.c_.assign(r.order_ - r.val_ + 1, Int(0));
    for (size_t i = 0; i < a.c_.size(); ++i) r.c_[i * p] = a.c_[i];
    r.normalize();
    return r;
}

QSeries qs_reduce_mod(const QSeries& a, const Int& m) {
    QSeries r = a;
    r.mod_ = m;
    r.normalize();
    return r;
}

// ---------------------------------------------------------------------------

namespace {

// prod_{n>=1} (1 - q^n) by the pentagonal number theorem
QSeries euler_product(i64 order, const Int& mod) {
    if (order < 0) throw DomainError("euler_product: negative order");
    check_order(order);
    std::vector<Int> c(order + 1, Int(0));
    for (i64 k = 0;; ++k) {
        i64 g1 = k * (3 * k - 1) / 2;
        i64 g2 = k * (3 * k + 1) / 2;
        if (g1 > order && g2 > order) break;
        Int s = (k % 2 == 0) ? 1 : -1;
        if (g1 <= order) c[g1] += s;
        if (k > 0 && g2 <= order) c[g2] += s;
    }
    return QSeries::from_coeffs(std::move(c), 0, order, mod);
}

QSeries eta_pow24(i64 order, const Int& mod) {
    QSeries p1 = euler_product(order, mod);
    QSeries p2 = qs_truncate(qs_mul(p1, p1), order);
    QSeries p4 = qs_truncate(qs_mul(p2, p2), order);
    QSeries p8 = qs_truncate(qs_mul(p4, p4), order);
    QSeries p16 = qs_truncate(qs_mul(p8, p8), order);
    return qs_truncate(qs_mul(p16, p8), order);
}

}  // namespace

QSeries delta_series(i64 order, const Int& mod) {
    return qs_truncate(qs_shift(eta_pow24(order, mod), 1), order);
}

QSeries e4_series(i64 order, const Int& mod) {
    if (order < 0) throw DomainError("e4_series: negative order");
    check_order(order);
    std::vector<Int> c(order + 1, Int(0));
    c[0] = 1;
    for (i64 d = 1; d <= order; ++d) {
        Int d3 = Int(d) * d * d;
        for (i64 n = d; n <= order; n += d) c[n] += d3;
    }
    for (i64 n = 1; n <= order; ++n) c[n] *= 240;
    return QSeries::from_coeffs(std::move(c), 0, order, mod);
}

QSeries j_series(i64 order, const Int& mod) {
    i64 m = order + 1;
    QSeries e4 = e4_series(m, mod);
    QSeries e43 = qs_truncate(qs_mul(qs_truncate(qs_mul(e4, e4), m), e4), m);
    QSeries dq = eta_pow24(m, mod);  // Delta / q
    QSeries j = qs_mul(e43, qs_inverse(dq));
    return qs_truncate(qs_shift(j, -1), order);
}

QSeries j_series_cached(i64 order, const Int& mod) {
    static std::map<Int, QSeries> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(mod);
    if (it == cache.end() || it->second.order() < order) {
        // grow in chunks so repeated slightly-larger requests don't thrash
        i64 n = order + order / 4 + 16;
        cache[mod] = j_series(n, mod);
        it = cache.find(mod);
    }
    return qs_truncate(it->second, order);
}

QSeries poly_in_j(const std::vector<Int>& coeffs, i64 order, const Int& mod) {
    i64 d = (i64)coeffs.size() - 1;
    while (d > 0 && coeffs[d] == 0) --d;
    if (d < 0 || (d == 0 && coeffs.empty()))
        return QSeries::zero(order, mod);
    QSeries j = j_series_cached(order + d, mod);
    QSeries s = QSeries::monomial(coeffs[d], 0, order + d, mod);
    for (i64 k = d - 1; k >= 0; --k) {
        s = qs_mul(s, j);
        s = qs_add(s, QSeries::monomial(coeffs[k], 0, s.order(), mod));
    }
    return qs_truncate(s, order);
}

QSeries hecke_t0(const std::vector<Int>& coeffs, u64 p, i64 order, const Int& mod) {
    QSeries up = qs_apply_up(poly_in_j(coeffs, order * (i64)p, mod), p);
    QSeries vp = qs_apply_vp(poly_in_j(coeffs, ceil_div(order, (i64)p), mod), p);
    return qs_truncate(qs_add(qs_scale(up, Int(p)), vp), order);
}

}  // namespace deuring
