#include "deuring/poly.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace deuring;
using testutil::make_rng;
using testutil::mp_from;
using testutil::rand_below;
using testutil::random_poly;

TEST_SUITE_BEGIN("poly");

TEST_CASE("division with remainder satisfies a = qb + r, deg r < deg b") {
    auto rng = make_rng(20);
    const u64 p = 101;
    for (int t = 0; t < 1000; ++t) {
        ModPoly a = random_poly(rng, p, 1 + rand_below(rng, 12));
        ModPoly b = random_poly(rng, p, 1 + rand_below(rng, 8));
        if (b.is_zero()) continue;
        DivRem d = mp_divrem(a, b);
        CHECK(mp_add(mp_mul(d.q, b), d.r) == a);
        CHECK(d.r.degree() < b.degree());
    }
}

TEST_CASE("gcd divides both arguments and absorbs common factors") {
    auto rng = make_rng(21);
    const u64 p = 13;
    for (int t = 0; t < 300; ++t) {
        ModPoly g = mp_monic(random_poly(rng, p, 2 + rand_below(rng, 3)));
        if (g.is_zero()) continue;
        ModPoly a = mp_mul(g, random_poly(rng, p, 1 + rand_below(rng, 5)));
        ModPoly b = mp_mul(g, random_poly(rng, p, 1 + rand_below(rng, 5)));
        ModPoly d = mp_gcd(a, b);
        if (a.is_zero() && b.is_zero()) continue;
        CHECK(mp_divides(d, a));
        CHECK(mp_divides(d, b));
        CHECK(mp_divides(g, d));
    }
}

TEST_CASE("derivative obeys the product rule") {
    auto rng = make_rng(22);
    const u64 p = 79;
    for (int t = 0; t < 300; ++t) {
        ModPoly f = random_poly(rng, p, 1 + rand_below(rng, 6));
        ModPoly g = random_poly(rng, p, 1 + rand_below(rng, 6));
        ModPoly lhs = mp_derivative(mp_mul(f, g));
        ModPoly rhs = mp_add(mp_mul(mp_derivative(f), g), mp_mul(f, mp_derivative(g)));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    auto rng = make_rng(23);
    const u64 p = 101;
    for (int t = 0; t < 300; ++t) {
        ModPoly f = random_poly(rng, p, 1 + rand_below(rng, 7));
        ModPoly g = random_poly(rng, p, 1 + rand_below(rng, 7));
        u64 x = rand_below(rng, p);
        CHECK(mp_eval(mp_mul(f, g), x) == mul_mod(mp_eval(f, x), mp_eval(g, x), p));
        CHECK(mp_eval(mp_add(f, g), x) == (mp_eval(f, x) + mp_eval(g, x)) % p);
    }
}

TEST_CASE("root multiplicity is read off a planted factorization") {
    const u64 p = 13;
    Fp2Ctx F(p);
    auto rng = make_rng(24);
    for (int t = 0; t < 200; ++t) {
        u64 r = rand_below(rng, p);
        int k = 1 + (int)rand_below(rng, 4);
        ModPoly f = mp_from(p, {1});
        ModPoly lin = mp_from(p, {(i64)(p - r), 1});
        for (int i = 0; i < k; ++i) f = mp_mul(f, lin);
        // multiply by a cofactor not vanishing at r
        ModPoly h = random_poly(rng, p, 3);
        if (h.is_zero() || mp_eval(h, r) == 0) continue;
        f = mp_mul(f, h);
        CHECK(multiplicity_at(F, f, F.embed(r)) == k);
    }
}

TEST_CASE("root multiplicity at a proper quadratic extension point") {
    const u64 p = 13;
    Fp2Ctx F(p);
    // x^2 - nr has the two square roots of nr as simple roots
    ModPoly f = mp_from(p, {(i64)(p - F.nr), 0, 1});
    Fp2 root{0, 1};
    CHECK(F.is_zero(fp2_eval(F, f, root)));
    CHECK(multiplicity_at(F, f, root) == 1);
    CHECK(multiplicity_at(F, mp_mul(f, f), root) == 2);
    CHECK(multiplicity_at(F, f, F.embed(1)) == 0);
}

TEST_CASE("integer polynomial helpers") {
    IntPoly f = testutil::ip_from({-6, 11, -6, 1});  // (x-1)(x-2)(x-3)
    CHECK(ip_eval(f, Int(1)) == 0);
    CHECK(ip_eval(f, Int(2)) == 0);
    CHECK(ip_eval(f, Int(3)) == 0);
    CHECK(ip_eval(f, Int(4)) == 6);
    IntPoly d = ip_derivative(f);
    CHECK(ip_eval(d, Int(0)) == 11);
    ModPoly r = ip_reduce(f, 5);
    CHECK(mp_eval(r, 1) == 0);
    CHECK(mp_eval(r, 4) == Int(ip_eval(f, Int(4)) % 5).get_ui());
    // negative coefficients reduce into canonical residues
    IntPoly neg = testutil::ip_from({-1});
    CHECK(ip_reduce(neg, 7).coeff(0) == 6);
}

TEST_CASE("monic scaling and exact divisibility") {
    ModPoly f = mp_from(13, {3, 6, 9});
    ModPoly m = mp_monic(f);
    CHECK(m.lead() == 1);
    CHECK(mp_divides(f, m));
    CHECK(mp_divides(m, f));
    CHECK(!mp_divides(mp_from(13, {1, 1}), mp_from(13, {1, 0, 1})));
}

TEST_SUITE_END();
