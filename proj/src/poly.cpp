#include "deuring/poly.hpp"

namespace deuring {

namespace {
void check_mod(const ModPoly& a, const ModPoly& b) {
    if (a.m != b.m) throw DomainError("ModPoly: mixed moduli");
}
}  // namespace

ModPoly mp_add(const ModPoly& a, const ModPoly& b) {
    check_mod(a, b);
    FpCtx f(a.m);
    ModPoly r(a.m);
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = f.add(a.coeff(i), b.coeff(i));
    r.normalize();
    return r;
}

ModPoly mp_sub(const ModPoly& a, const ModPoly& b) {
    check_mod(a, b);
    FpCtx f(a.m);
    ModPoly r(a.m);
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = f.sub(a.coeff(i), b.coeff(i));
    r.normalize();
    return r;
}

ModPoly mp_mul(const ModPoly& a, const ModPoly& b) {
    check_mod(a, b);
    if (a.is_zero() || b.is_zero()) return ModPoly(a.m);
    ModPoly r(a.m);
    std::vector<u128> acc(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j) acc[i + j] += (u128)a.c[i] * b.c[j];
    }
    r.c.resize(acc.size());
    for (size_t i = 0; i < acc.size(); ++i) r.c[i] = (u64)(acc[i] % a.m);
    r.normalize();
    return r;
}

ModPoly mp_scale(const ModPoly& a, u64 s) {
    FpCtx f(a.m);
    ModPoly r = a;
    for (auto& x : r.c) x = f.mul(x, s);
    r.normalize();
    return r;
}

ModPoly mp_monic(const ModPoly& a) {
    if (a.is_zero()) return a;
    FpCtx f(a.m);
    return mp_scale(a, f.inv(a.lead()));
}

ModPoly mp_derivative(const ModPoly& a) {
    ModPoly r(a.m);
    if (a.degree() < 1) return r;
    FpCtx f(a.m);
    r.c.resize(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i) r.c[i - 1] = f.mul(a.c[i], i % a.m);
    r.normalize();
    return r;
}

ModPoly mp_pow(const ModPoly& a, u64 e) {
    ModPoly r(a.m, {1});
    ModPoly base = a;
    while (e) {
        if (e & 1) r = mp_mul(r, base);
        base = mp_mul(base, base);
        e >>= 1;
    }
    return r;
}

DivRem mp_divrem(const ModPoly& a, const ModPoly& b) {
    DivRem out;
    mp_divrem(a, b, &out.q, &out.r);
    return out;
}

void mp_divrem(const ModPoly& a, const ModPoly& b, ModPoly* q, ModPoly* r) {
    check_mod(a, b);
    if (b.is_zero()) throw ZeroInverse("mp_divrem: division by zero polynomial");
    FpCtx f(a.m);
    u64 li = f.inv(b.lead());
    std::vector<u64> rem = a.c;
    i64 db = b.degree();
    std::vector<u64> quo;
    if ((i64)rem.size() - 1 >= db) quo.assign(rem.size() - db, 0);
    for (i64 i = (i64)rem.size() - 1; i >= db; --i) {
        u64 t = f.mul(rem[i], li);
        if (t == 0) continue;
        quo[i - db] = t;
        for (i64 j = 0; j <= db; ++j) rem[i - db + j] = f.sub(rem[i - db + j], f.mul(t, b.c[j]));
    }
    if (q) *q = ModPoly(a.m, std::move(quo));
    if (r) *r = ModPoly(a.m, std::move(rem));
}

ModPoly mp_gcd(ModPoly a, ModPoly b) {
    while (!b.is_zero()) {
        ModPoly r;
        mp_divrem(a, b, nullptr, &r);
        a = std::move(b);
        b = std::move(r);
    }
    return mp_monic(a);
}

u64 mp_eval(const ModPoly& a, u64 x) {
    FpCtx f(a.m);
    u64 r = 0;
    for (size_t i = a.c.size(); i-- > 0;) r = f.add(f.mul(r, x), a.c[i]);
    return r;
}

bool mp_divides(const ModPoly& d, const ModPoly& a) {
    if (a.is_zero()) return true;
    if (d.is_zero()) return false;
    ModPoly r;
    mp_divrem(a, d, nullptr, &r);
    return r.is_zero();
}

std::string mp_to_string(const ModPoly& a, const std::string& var) {
    if (a.is_zero()) return "0";
    std::string out;
    for (i64 i = a.degree(); i >= 0; --i) {
        if (a.c[i] == 0) continue;
        if (!out.empty()) out += " + ";
        if (i == 0 || a.c[i] != 1) out += std::to_string(a.c[i]);
        if (i > 0) {
            if (a.c[i] != 1) out += "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

Fp2 fp2_eval(const Fp2Ctx& F, const ModPoly& a, const Fp2& x) {
    Fp2 r = F.embed(0);
    for (size_t i = a.c.size(); i-- > 0;) r = F.add(F.mul(r, x), F.embed(a.c[i]));
    return r;
}

int multiplicity_at(const Fp2Ctx& F, const ModPoly& a, const Fp2& r) {
    if (a.m != F.p()) throw DomainError("multiplicity_at: modulus mismatch");
    std::vector<Fp2> cur(a.c.size());
    for (size_t i = 0; i < a.c.size(); ++i) cur[i] = F.embed(a.c[i]);
    int mult = 0;
    while (cur.size() > 0) {
        // synthetic division by (x - r)
        std::vector<Fp2> next(cur.size() - 1);
        Fp2 carry = F.embed(0);
        for (size_t i = cur.size(); i-- > 0;) {
            Fp2 v = F.add(cur[i], F.mul(carry, r));
            if (i == 0) {
                if (!F.is_zero(v)) return mult;
            } else {
                next[i - 1] = v;
                carry = v;
            }
        }
        ++mult;
        cur = std::move(next);
    }
    return mult;
}

IntPoly ip_derivative(const IntPoly& a) {
    IntPoly r;
    if (a.degree() < 1) return r;
    r.c.resize(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i) r.c[i - 1] = a.c[i] * (long)i;
    r.normalize();
    return r;
}

Int ip_eval(const IntPoly& a, const Int& x) {
    Int r = 0;
    for (size_t i = a.c.size(); i-- > 0;) r = r * x + a.c[i];
    return r;
}

ModPoly ip_reduce(const IntPoly& a, u64 m) {
    ModPoly r(m);
    r.c.resize(a.c.size());
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = mpz_fdiv_ui(a.c[i].get_mpz_t(), m);
    r.normalize();
    return r;
}

std::string ip_to_string(const IntPoly& a, const std::string& var) {
    if (a.is_zero()) return "0";
    std::string out;
    for (i64 i = a.degree(); i >= 0; --i) {
        if (a.c[i] == 0) continue;
        bool neg = a.c[i] < 0;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        Int av = abs(a.c[i]);
        if (i == 0 || av != 1) out += av.get_str();
        if (i > 0) {
            if (av != 1) out += "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

}  // namespace deuring
