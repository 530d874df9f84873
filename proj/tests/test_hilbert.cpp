#include <vector>

#include "deuring/classfield.hpp"
#include "deuring/hilbert.hpp"
#include "deuring/supersingular.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace deuring;

TEST_SUITE_BEGIN("hilbert");

TEST_CASE("class polynomials match classical singular moduli") {
    // one CM point each; j-values from the classical list of class number one
    const struct { i64 D; const char* j; } rows[] = {
        {3, "0"},
        {4, "1728"},
        {7, "-3375"},
        {8, "8000"},
        {11, "-32768"},
        {12, "54000"},          // j(sqrt(-3)), order of conductor 2
        {16, "287496"},         // j(2i)
        {19, "-884736"},
        {27, "-12288000"},      // j((1+3sqrt(-3))/2)
        {28, "16581375"},       // j(sqrt(-7))
        {43, "-884736000"},
        {67, "-147197952000"},
        {163, "-262537412640768000"},
    };
    for (auto& r : rows) {
        IntPoly h = hilbert_class_poly(r.D);
        CAPTURE(r.D);
        REQUIRE(h.degree() == 1);
        CHECK(h.is_monic());
        CHECK(h.c[0] == -Int(r.j));
    }
}

TEST_CASE("class polynomial of discriminant 23 is the frozen cubic") {
    IntPoly h = hilbert_class_poly(23);
    REQUIRE(h.degree() == 3);
    CHECK(h.is_monic());
    CHECK(h.c[2] == Int("3491750"));
    CHECK(h.c[1] == Int("-5151296875"));
    CHECK(h.c[0] == Int("12771880859375"));
}

TEST_CASE("degrees equal class numbers and polynomials are monic") {
    for (i64 D : {3, 4, 15, 20, 23, 31, 47, 71, 95, 108, 239}) {
        if (!is_valid_disc(D)) continue;
        IntPoly h = hilbert_class_poly(D);
        CAPTURE(D);
        CHECK(h.degree() == class_number(D));
        CHECK(h.is_monic());
    }
}

TEST_CASE("j at the corner CM points") {
    const long prec = 256;
    // tau = i: j = 1728
    BigComplex tau{BigFixed::from_int(0), BigFixed::from_int(1)};
    BigComplex v = eval_j(tau, prec);
    BigFixed res;
    Int n = bf_round_to_int(v.re, &res);
    CHECK(n == 1728);
    // tau = (1+sqrt(-3))/2: j = 0
    BigFixed half = BigFixed::from_ratio(1, 2, prec);
    BigFixed s3 = bf_sqrt(BigFixed::from_int(3), prec);
    BigComplex rho{half, bf_mul(s3, half, prec)};
    BigComplex z = eval_j(rho, prec);
    Int zi = bf_round_to_int(z.re, &res);
    CHECK(zi == 0);
}

TEST_CASE("recomputation with extra precision changes nothing") {
    for (i64 D : {23, 47, 163, 239}) {
        IntPoly base = hilbert_class_poly(D);
        IntPoly again = hilbert_class_poly(D, 64);
        CAPTURE(D);
        CHECK(base == again);
    }
}

TEST_CASE("reduction mod p is coefficientwise canonical") {
    IntPoly h = hilbert_class_poly(23);
    ModPoly r = reduce_mod_p(h, 17);
    // frozen: the three roots mod 17 collapse onto supersingular values 0, 8, 8
    CHECK(r == testutil::mp_from(17, {0, 13, 1, 1}));  // x^3 + x^2 + 13x = x(x-8)^2 mod 17
}

TEST_CASE("every hilbert root mod p is supersingular when p does not split") {
    // For fundamental D <= 500 and p <= 100 with kronecker(-D,p) != 1, every
    // root of H_D mod p is a root of S_p.  Checked via gcd powers so that
    // inseparability in small characteristic cannot hide a multiple factor:
    // H | gcd(H, S_p)^deg(H) iff every irreducible factor of H divides S_p.
    const std::vector<u64> primes = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37,
                                     41, 43, 47, 53, 59, 61, 67, 71, 73, 79,
                                     83, 89, 97};
    for (i64 D = 3; D <= 500; ++D) {
        if (!is_valid_disc(D) || !is_fundamental(D)) continue;
        IntPoly h = hilbert_class_poly(D);
        for (u64 p : primes) {
            if (kronecker(-D, (i64)p) == 1) continue;
            ModPoly hp = reduce_mod_p(h, p);
            ModPoly sp = ss_polynomials(p).s;
            ModPoly g = mp_gcd(hp, sp);
            ModPoly gpow = mp_pow(g, (u64)hp.degree());
            CAPTURE(D);
            CAPTURE(p);
            CHECK(mp_divides(hp, gpow));
        }
    }
}

TEST_CASE("invalid discriminants are rejected") {
    CHECK_THROWS_AS((void)hilbert_class_poly(5), DomainError);
    CHECK_THROWS_AS((void)hilbert_class_poly(-3), DomainError);
}

TEST_SUITE_END();
