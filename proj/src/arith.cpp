#include "deuring/arith.hpp"

#include <cmath>

#include <map>
#include <mutex>

namespace deuring {

u64 mul_mod(u64 a, u64 b, u64 m) { return (u64)((u128)a * b % m); }

u64 pow_mod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mul_mod(r, a, m);
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 mod_inverse(u64 a, u64 m) {
    a %= m;
    // extended gcd on (a, m)
    i64 t = 0, newt = 1;
    u64 r = m, newr = a;
    while (newr != 0) {
        u64 q = r / newr;
        i64 tt = t - (i64)q * newt;
        t = newt;
        newt = tt;
        u64 rr = r - q * newr;
        r = newr;
        newr = rr;
    }
    if (r != 1) throw ZeroInverse("mod_inverse: argument not invertible");
    return t < 0 ? (u64)(t + (i64)m) : (u64)t;
}

Int mod_inverse(const Int& a, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw ZeroInverse("mod_inverse: argument not invertible");
    return r;
}

int kronecker(const Int& a, const Int& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

int kronecker(i64 a, i64 n) {
    Int za(a);
    return mpz_kronecker_si(za.get_mpz_t(), n);
}

std::optional<u64> sqrt_mod_p(u64 a, u64 p) {
    a %= p;
    if (p == 2) return a;
    if (a == 0) return 0;
    if (pow_mod(a, (p - 1) / 2, p) != 1) return std::nullopt;
    u64 r;
    if (p % 4 == 3) {
        r = pow_mod(a, (p + 1) / 4, p);
    } else {
        // Tonelli-Shanks
        u64 q = p - 1;
        unsigned s = 0;
        while ((q & 1) == 0) {
            q >>= 1;
            ++s;
        }
        u64 z = least_nonresidue(p);
        u64 m = s;
        u64 c = pow_mod(z, q, p);
        u64 t = pow_mod(a, q, p);
        r = pow_mod(a, (q + 1) / 2, p);
        while (t != 1) {
            u64 t2 = t;
            u64 i = 0;
            while (t2 != 1) {
                t2 = mul_mod(t2, t2, p);
                ++i;
            }
            u64 b = c;
            for (u64 j = 0; j + i + 1 < m; ++j) b = mul_mod(b, b, p);
            m = i;
            c = mul_mod(b, b, p);
            t = mul_mod(t, c, p);
            r = mul_mod(r, b, p);
        }
    }
    return std::min(r, p - r);
}

u64 least_nonresidue(u64 p) {
    if (p == 2) throw DomainError("least_nonresidue: p must be odd");
    for (u64 n = 2; n < p; ++n)
        if (pow_mod(n, (p - 1) / 2, p) == p - 1) return n;
    throw DomainError("least_nonresidue: modulus not an odd prime?");
}

// ---------------------------------------------------------------------------

void check_precision(long prec) {
    if (prec < 4 || prec > kMaxPrecisionBits)
        throw PrecisionOverflow("precision out of range: " + std::to_string(prec));
}

void BigFixed::round(long prec) {
    if (man == 0) {
        exp = 0;
        return;
    }
    long nbits = (long)mpz_sizeinbase(man.get_mpz_t(), 2);
    if (nbits > prec) {
        long shift = nbits - prec;
        mpz_tdiv_q_2exp(man.get_mpz_t(), man.get_mpz_t(), shift);
        exp += shift;
    }
}

double BigFixed::to_double() const {
    if (man == 0) return 0.0;
    long e2;
    double d = mpz_get_d_2exp(&e2, man.get_mpz_t());
    long e = e2 + exp;
    if (e > 1020) return man < 0 ? -1e308 : 1e308;
    if (e < -1020) return 0.0;
    return std::ldexp(d, (int)e);
}

BigFixed BigFixed::from_ratio(const Int& num, const Int& den, long prec) {
    check_precision(prec);
    if (den == 0) throw ZeroInverse("BigFixed::from_ratio: zero denominator");
    long shift = prec + (long)mpz_sizeinbase(den.get_mpz_t(), 2) + 4;
    Int q = (num << shift) / den;
    BigFixed r(q, -shift);
    r.round(prec);
    return r;
}

BigFixed bf_add(const BigFixed& a, const BigFixed& b, long prec) {
    check_precision(prec);
    if (a.is_zero()) {
        BigFixed r = b;
        r.round(prec);
        return r;
    }
    if (b.is_zero()) {
        BigFixed r = a;
        r.round(prec);
        return r;
    }
    // Drop an operand entirely once it sits below the kept window.
    if (a.mag2() - b.mag2() > prec + 8) {
        BigFixed r = a;
        r.round(prec);
        return r;
    }
    if (b.mag2() - a.mag2() > prec + 8) {
        BigFixed r = b;
        r.round(prec);
        return r;
    }
    long e = std::min(a.exp, b.exp);
    Int ma = a.man << (a.exp - e);
    Int mb = b.man << (b.exp - e);
    BigFixed r(ma + mb, e);
    r.round(prec);
    return r;
}

BigFixed bf_neg(const BigFixed& a) { return BigFixed(-a.man, a.exp); }

BigFixed bf_sub(const BigFixed& a, const BigFixed& b, long prec) {
    return bf_add(a, bf_neg(b), prec);
}

BigFixed bf_mul(const BigFixed& a, const BigFixed& b, long prec) {
    check_precision(prec);
    BigFixed r(a.man * b.man, a.exp + b.exp);
    r.round(prec);
    return r;
}

BigFixed bf_div(const BigFixed& a, const BigFixed& b, long prec) {
    check_precision(prec);
    if (b.is_zero()) throw ZeroInverse("bf_div: division by zero");
    if (a.is_zero()) return BigFixed();
    long la = (long)mpz_sizeinbase(a.man.get_mpz_t(), 2);
    long lb = (long)mpz_sizeinbase(b.man.get_mpz_t(), 2);
    long shift = prec + lb - la + 8;
    if (shift < 0) shift = 0;
    Int q;
    Int num = a.man << shift;
    mpz_tdiv_q(q.get_mpz_t(), num.get_mpz_t(), b.man.get_mpz_t());
    BigFixed r(q, a.exp - b.exp - shift);
    r.round(prec);
    return r;
}

BigFixed bf_div_int(const BigFixed& a, const Int& n, long prec) {
    return bf_div(a, BigFixed::from_int(n), prec);
}

BigFixed bf_sqrt(const BigFixed& a, long prec) {
    check_precision(prec);
    if (a.man < 0) throw DomainError("bf_sqrt: negative argument");
    if (a.is_zero()) return BigFixed();
    long la = (long)mpz_sizeinbase(a.man.get_mpz_t(), 2);
    long shift = 2 * prec + 8 - la;
    if (shift < 0) shift = 0;
    if ((a.exp - shift) & 1) ++shift;
    Int m = a.man << shift;
    Int r;
    mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
    BigFixed out(r, (a.exp - shift) / 2);
    out.round(prec);
    return out;
}

int bf_cmp_abs_ratio(const BigFixed& a, const Int& num, const Int& den) {
    // compare |man|*2^exp against num/den exactly
    Int lhs = abs(a.man), rhs = num;
    if (a.exp >= 0)
        lhs <<= a.exp;
    else
        rhs <<= -a.exp;
    lhs *= den;
    return cmp(lhs, rhs);
}

Int bf_round_to_int(const BigFixed& x, BigFixed* residual) {
    Int n;
    if (x.exp >= 0) {
        n = x.man << x.exp;
        if (residual) *residual = BigFixed();
        return n;
    }
    Int half = Int(1) << (-x.exp - 1);
    Int num = x.man + half;
    mpz_fdiv_q_2exp(n.get_mpz_t(), num.get_mpz_t(), -x.exp);
    if (residual) *residual = BigFixed(x.man - (n << -x.exp), x.exp);
    return n;
}

BigComplex cx_add(const BigComplex& a, const BigComplex& b, long prec) {
    return {bf_add(a.re, b.re, prec), bf_add(a.im, b.im, prec)};
}

BigComplex cx_sub(const BigComplex& a, const BigComplex& b, long prec) {
    return {bf_sub(a.re, b.re, prec), bf_sub(a.im, b.im, prec)};
}

BigComplex cx_mul(const BigComplex& a, const BigComplex& b, long prec) {
    BigFixed rr = bf_sub(bf_mul(a.re, b.re, prec + 4), bf_mul(a.im, b.im, prec + 4), prec);
    BigFixed ii = bf_add(bf_mul(a.re, b.im, prec + 4), bf_mul(a.im, b.re, prec + 4), prec);
    return {rr, ii};
}

BigComplex cx_conj(const BigComplex& a) { return {a.re, bf_neg(a.im)}; }

BigFixed cx_norm(const BigComplex& a, long prec) {
    return bf_add(bf_mul(a.re, a.re, prec + 4), bf_mul(a.im, a.im, prec + 4), prec);
}

BigComplex cx_scale(const BigComplex& a, const BigFixed& s, long prec) {
    return {bf_mul(a.re, s, prec), bf_mul(a.im, s, prec)};
}

BigComplex cx_div(const BigComplex& a, const BigComplex& b, long prec) {
    BigFixed n = cx_norm(b, prec + 8);
    if (n.is_zero()) throw ZeroInverse("cx_div: division by zero");
    BigComplex t = cx_mul(a, cx_conj(b), prec + 8);
    return {bf_div(t.re, n, prec), bf_div(t.im, n, prec)};
}

long cx_mag2(const BigComplex& a) { return std::max(a.re.mag2(), a.im.mag2()); }

// ---------------------------------------------------------------------------

namespace {

Int machin_atan_inv(u64 m, long prec) {
    // floor-ish of atan(1/m) * 2^prec via the alternating Taylor series
    Int one = Int(1) << prec;
    Int pw(m);
    Int m2 = Int(m) * m;
    Int sum = 0;
    bool add = true;
    for (u64 j = 0;; ++j) {
        Int term = one / (pw * (2 * j + 1));
        if (term == 0) break;
        if (add)
            sum += term;
        else
            sum -= term;
        add = !add;
        pw *= m2;
    }
    return sum;
}

}  // namespace

Int pi_scaled(long prec) {
    check_precision(prec);
    static std::map<long, Int> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(prec);
        if (it != cache.end()) return it->second;
    }
    long wp = prec + 16;
    Int v = 16 * machin_atan_inv(5, wp) - 4 * machin_atan_inv(239, wp);
    v >>= 16;
    std::lock_guard<std::mutex> lk(mu);
    cache[prec] = v;
    return v;
}

BigFixed pi_fixed(long prec) { return BigFixed(pi_scaled(prec), -prec); }

BigComplex complex_exp(const BigComplex& z, long prec) {
    check_precision(prec);
    long mag = cx_mag2(z);
    long k = mag + 4 > 0 ? mag + 4 : 0;
    long wp = prec + 64 + 2 * k;
    check_precision(wp);
    BigComplex zs{BigFixed(z.re.man, z.re.exp - k), BigFixed(z.im.man, z.im.exp - k)};
    BigComplex one{BigFixed::from_int(1), BigFixed()};
    BigComplex sum = one;
    BigComplex term = one;
    for (u64 n = 1;; ++n) {
        term = cx_mul(term, zs, wp);
        term = {bf_div_int(term.re, Int(n), wp), bf_div_int(term.im, Int(n), wp)};
        sum = cx_add(sum, term, wp);
        if (cx_mag2(term) < -(prec + 48 + 2 * k)) break;
        if (n > (u64)wp + 64) throw InternalInconsistency("complex_exp: series failed to converge");
    }
    for (long i = 0; i < k; ++i) sum = cx_mul(sum, sum, wp);
    sum.re.round(prec);
    sum.im.round(prec);
    return sum;
}

}  // namespace deuring
