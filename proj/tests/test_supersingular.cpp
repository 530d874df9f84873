#include <algorithm>
#include <set>
#include <vector>

#include "deuring/supersingular.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace deuring;

TEST_SUITE_BEGIN("supersingular");

namespace {

std::vector<u64> primes_in(u64 lo, u64 hi) {
    std::vector<u64> out;
    for (u64 n = lo; n <= hi; ++n) {
        bool prime = n >= 2;
        for (u64 d = 2; d * d <= n; ++d)
            if (n % d == 0) { prime = false; break; }
        if (prime) out.push_back(n);
    }
    return out;
}

}  // namespace

TEST_CASE("frozen small cases") {
    // p = 5: coefficient polynomial of the hasse invariant
    ModPoly h5 = hasse_polynomial(5);
    CHECK(h5 == testutil::mp_from(5, {0, 3, 4}));  // 4t^2 + 3t

    SupersingularData d13 = ss_polynomials(13);
    CHECK(d13.s_tilde == testutil::mp_from(13, {8, 1}));  // x - 5
    CHECK(d13.e0 == 0);  // 13 = 1 mod 3: j = 0 is ordinary
    CHECK(d13.e1 == 0);  // 13 = 1 mod 4: j = 1728 is ordinary
    CHECK(d13.s == d13.s_tilde);

    SupersingularData d17 = ss_polynomials(17);
    std::set<u64> roots17;
    for (const Fp2& r : d17.roots) {
        CHECK(r.b == 0);
        roots17.insert(r.a);
    }
    CHECK(roots17 == std::set<u64>{0, 8});

    SupersingularData d79 = ss_polynomials(79);
    CHECK(mp_eval(d79.s, 64) == 0);  // j = -15 is supersingular mod 79
}

TEST_CASE("sparse polynomial degree formula for p up to 500") {
    for (u64 p : primes_in(5, 500)) {
        SupersingularData d = ss_polynomials(p);
        CAPTURE(p);
        CHECK(d.s_tilde.degree() == (i64)(p / 12));
        // membership flags recomputed from the congruence classes
        CHECK(d.e0 == (p % 3 == 2 ? 1 : 0));
        CHECK(d.e1 == (p % 4 == 3 ? 1 : 0));
        CHECK(d.s.degree() == d.s_tilde.degree() + d.e0 + d.e1);
        // s assembles from its factors
        ModPoly assembled = d.s_tilde;
        if (d.e0) assembled = mp_mul(assembled, ModPoly(p, {0, 1}));
        if (d.e1) assembled = mp_mul(assembled, ModPoly(p, {p - (1728 % p), 1}));
        CHECK(d.s == assembled);
    }
}

TEST_CASE("stripped polynomial is squarefree") {
    for (u64 p : primes_in(5, 500)) {
        SupersingularData d = ss_polynomials(p);
        ModPoly der = mp_derivative(d.s_tilde);
        ModPoly g = mp_gcd(d.s_tilde, der);
        CAPTURE(p);
        CHECK(g.degree() == 0);
    }
}

TEST_CASE("root sets live in the quadratic extension and are frobenius stable") {
    for (u64 p : primes_in(5, 200)) {
        SupersingularData d = ss_polynomials(p);
        Fp2Ctx F(p);
        CAPTURE(p);
        CHECK((i64)d.roots.size() == d.s.degree());
        std::set<std::pair<u64, u64>> rs;
        for (const Fp2& r : d.roots) rs.insert({r.a, r.b});
        CHECK(rs.size() == d.roots.size());  // distinct (squarefree)
        for (const Fp2& r : d.roots) {
            CHECK(F.is_zero(fp2_eval(F, d.s, r)));
            Fp2 fr = F.frobenius(r);
            CHECK(rs.count({fr.a, fr.b}) == 1);
        }
    }
}

TEST_CASE("root sets match the point counting oracle exhaustively") {
    for (u64 p : primes_in(5, 60)) {
        SupersingularData d = ss_polynomials(p);
        Fp2Ctx F(p);
        std::set<std::pair<u64, u64>> rs;
        for (const Fp2& r : d.roots) rs.insert({r.a, r.b});
        for (u64 a = 0; a < p; ++a) {
            for (u64 b = 0; b < p; ++b) {
                Fp2 j0{a, b};
                bool flagged = is_supersingular_oracle(F, j0);
                CAPTURE(p);
                CAPTURE(a);
                CAPTURE(b);
                CHECK(flagged == (rs.count({a, b}) == 1));
            }
        }
    }
}

TEST_CASE("tiny characteristics collapse onto the single invariant") {
    for (u64 p : {2ULL, 3ULL}) {
        SupersingularData d = ss_polynomials(p);
        CHECK(d.s_tilde.degree() == 0);
        CHECK(d.s == ModPoly(p, {0, 1}));  // x: j = 0 is the only one
        REQUIRE(d.roots.size() == 1);
        CHECK(d.roots[0].a == 0);
        CHECK(d.roots[0].b == 0);
    }
}

TEST_CASE("bad input is rejected") {
    CHECK_THROWS((void)ss_polynomials(12));
    CHECK_THROWS((void)hasse_polynomial(4));
    CHECK_THROWS((void)hasse_polynomial(3));
}

TEST_SUITE_END();
