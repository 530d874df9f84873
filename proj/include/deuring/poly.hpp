#pragma once

// Dense univariate polynomials: coefficients mod a word-size modulus, exact
// integer coefficients, and a little F_p^2 root machinery.

#include <optional>
#include <string>
#include <vector>

#include "deuring/arith.hpp"

namespace deuring {

// Polynomial over Z/m, coefficients stored low degree first, m word sized.
// Division, gcd and inversion require m prime.
struct ModPoly {
    u64 m = 0;
    std::vector<u64> c;

    ModPoly() = default;
    explicit ModPoly(u64 mod) : m(mod) {}
    ModPoly(u64 mod, std::vector<u64> coeffs) : m(mod), c(std::move(coeffs)) { normalize(); }

    void normalize() {
        for (auto& x : c) x %= m;
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    i64 degree() const { return (i64)c.size() - 1; }
    u64 lead() const { return c.back(); }
    u64 coeff(size_t i) const { return i < c.size() ? c[i] : 0; }
    bool operator==(const ModPoly& o) const { return m == o.m && c == o.c; }
};

ModPoly mp_add(const ModPoly& a, const ModPoly& b);
ModPoly mp_sub(const ModPoly& a, const ModPoly& b);
ModPoly mp_mul(const ModPoly& a, const ModPoly& b);
ModPoly mp_scale(const ModPoly& a, u64 s);
ModPoly mp_monic(const ModPoly& a);
ModPoly mp_derivative(const ModPoly& a);
ModPoly mp_pow(const ModPoly& a, u64 e);
// quotient/remainder; requires invertible leading coefficient of b
void mp_divrem(const ModPoly& a, const ModPoly& b, ModPoly* q, ModPoly* r);
struct DivRem {
    ModPoly q, r;
};
DivRem mp_divrem(const ModPoly& a, const ModPoly& b);
ModPoly mp_gcd(ModPoly a, ModPoly b);
u64 mp_eval(const ModPoly& a, u64 x);
bool mp_divides(const ModPoly& d, const ModPoly& a);
std::string mp_to_string(const ModPoly& a, const std::string& var = "x");

// multiplicity of root r (in F_p^2) of a polynomial with F_p coefficients
int multiplicity_at(const Fp2Ctx& F, const ModPoly& a, const Fp2& r);
Fp2 fp2_eval(const Fp2Ctx& F, const ModPoly& a, const Fp2& x);

// Exact integer polynomial, low degree first.
struct IntPoly {
    std::vector<Int> c;

    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { normalize(); }

    void normalize() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    i64 degree() const { return (i64)c.size() - 1; }
    bool is_monic() const { return !c.empty() && c.back() == 1; }
    const Int& coeff(size_t i) const {
        static const Int zero(0);
        return i < c.size() ? c[i] : zero;
    }
    bool operator==(const IntPoly& o) const { return c == o.c; }
};

IntPoly ip_derivative(const IntPoly& a);
Int ip_eval(const IntPoly& a, const Int& x);
ModPoly ip_reduce(const IntPoly& a, u64 m);
std::string ip_to_string(const IntPoly& a, const std::string& var = "x");

}  // namespace deuring
