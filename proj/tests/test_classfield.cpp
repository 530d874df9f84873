#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>
#include <vector>

#include "deuring/arith.hpp"
#include "deuring/classfield.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace deuring;

TEST_SUITE_BEGIN("classfield");

namespace {

// Independent reduction: apply the standard normalize/swap steps until the
// form is reduced, with the boundary sign convention.
std::tuple<i64, i64, i64> reduce_form(i64 a, i64 b, i64 c) {
    for (int guard = 0; guard < 10000; ++guard) {
        // normalize b into (-a, a]
        if (b > a || b <= -a) {
            i64 nb = b;
            while (nb > a) nb -= 2 * a;
            while (nb <= -a) nb += 2 * a;
            c = (nb * nb - (b * b - 4 * a * c)) / (4 * a);
            b = nb;
            continue;
        }
        if (a > c) {
            std::swap(a, c);
            b = -b;
            continue;
        }
        if (b < 0 && (a == -b || a == c)) {
            b = -b;
            continue;
        }
        return {a, b, c};
    }
    throw std::runtime_error("reduction did not terminate");
}

// Count proper equivalence classes of primitive positive definite forms of
// discriminant -D by reducing every form in a box and de-duplicating.
i64 class_number_by_reduction(i64 D) {
    std::set<std::tuple<i64, i64, i64>> classes;
    for (i64 a = 1; a <= D; ++a) {
        for (i64 b = -a; b <= a; ++b) {
            i64 num = (i64)b * b + D;
            if (num % (4 * a) != 0) continue;
            i64 c = num / (4 * a);
            if (c < 1 || c > D) continue;
            i64 g = std::gcd(std::gcd(std::abs(a), std::abs(b)), std::abs(c));
            if (g != 1) continue;  // primitive forms only
            classes.insert(reduce_form(a, b, c));
        }
    }
    return (i64)classes.size();
}

// Hurwitz class number by direct weighted enumeration of all reduced forms,
// primitive or not: weight 1/3 for multiples of x^2+xy+y^2, 1/2 for multiples
// of x^2+y^2, 1 otherwise.
Rat hurwitz_by_enumeration(i64 m) {
    if (m % 4 == 1 || m % 4 == 2) return Rat(0);
    Rat total(0);
    for (i64 a = 1; 3 * a * a <= m; ++a) {
        for (i64 b = -a + 1; b <= a; ++b) {
            i64 num = (i64)b * b + m;
            if (num % (4 * a) != 0) continue;
            i64 c = num / (4 * a);
            if (c < a) continue;
            if (b < 0 && a == c) continue;  // boundary convention: b >= 0 when a == c
            if (a == b && b == c)
                total += Rat(1, 3);
            else if (b == 0 && a == c)
                total += Rat(1, 2);
            else
                total += 1;
        }
    }
    // forms with |b| = a: only b = +a is reduced, already enforced by the b-range
    return total;
}

}  // namespace

TEST_CASE("reduced forms satisfy the reduction inequalities exhaustively") {
    for (i64 D = 3; D <= 10000; ++D) {
        if (!is_valid_disc(D)) continue;
        auto forms = reduced_forms(D);
        CHECK((i64)forms.size() == class_number(D));
        std::set<std::tuple<i64, i64, i64>> seen;
        for (const auto& f : forms) {
            CHECK(f.b * f.b - 4 * f.a * f.c == -D);
            CHECK(std::abs(f.b) <= f.a);
            CHECK(f.a <= f.c);
            if (std::abs(f.b) == f.a || f.a == f.c) CHECK(f.b >= 0);
            i64 g = std::gcd(std::gcd(std::abs(f.a), std::abs(f.b)), std::abs(f.c));
            CHECK(g == 1);
            CHECK(seen.insert({f.a, f.b, f.c}).second);
        }
    }
}

TEST_CASE("class numbers match an independent reduction-based count") {
    for (i64 D = 3; D <= 200; ++D) {
        if (!is_valid_disc(D)) continue;
        CAPTURE(D);
        CHECK(class_number(D) == class_number_by_reduction(D));
    }
}

TEST_CASE("class numbers match the classical table at well-known discriminants") {
    const struct { i64 D, h; } rows[] = {
        {3, 1}, {4, 1}, {7, 1}, {8, 1}, {11, 1}, {19, 1}, {43, 1}, {67, 1}, {163, 1},
        {15, 2}, {20, 2}, {24, 2}, {35, 2}, {40, 2},
        {23, 3}, {31, 3}, {59, 3},
        {39, 4}, {55, 4},
        {47, 5}, {79, 5},
        {87, 6}, {71, 7}, {95, 8}, {239, 15}};
    for (auto& r : rows) CHECK(class_number(r.D) == r.h);
}

TEST_CASE("invalid discriminants are rejected") {
    CHECK(!is_valid_disc(1));
    CHECK(!is_valid_disc(2));
    CHECK(!is_valid_disc(5));
    CHECK(!is_valid_disc(-3));
    CHECK(!is_valid_disc(0));
    CHECK(is_valid_disc(3));
    CHECK(is_valid_disc(4));
    CHECK_THROWS_AS((void)reduced_forms(5), DomainError);
}

TEST_CASE("fundamental discriminant recognition and splitting") {
    CHECK(is_fundamental(3));
    CHECK(is_fundamental(4));
    CHECK(is_fundamental(7));
    CHECK(is_fundamental(8));
    CHECK(!is_fundamental(12));   // 12 = 4 * 3
    CHECK(!is_fundamental(27));   // 27 = 9 * 3
    CHECK(!is_fundamental(16));
    CHECK(is_fundamental(15));
    CHECK(is_fundamental(20));    // -20 = disc of Z[sqrt(-5)]
    CHECK(!is_fundamental(75));   // 75 = 25 * 3

    auto [f, d0] = fundamental_part(75);
    CHECK(f == 5);
    CHECK(d0 == 3);
    std::tie(f, d0) = fundamental_part(48);  // -48 = (-3) * 16
    CHECK(f == 4);
    CHECK(d0 == 3);
    std::tie(f, d0) = fundamental_part(20);
    CHECK(f == 1);
    CHECK(d0 == 20);
    // consistency: every valid D <= 3000 splits as D = f^2 * d0 with d0 fundamental
    for (i64 D = 3; D <= 3000; ++D) {
        if (!is_valid_disc(D)) continue;
        auto [ff, dd] = fundamental_part(D);
        CHECK(ff * ff * dd == D);
        CHECK(is_fundamental(dd));
    }
}

TEST_CASE("unit counts: 3 at disc 3, 2 at disc 4, 1 otherwise") {
    CHECK(units_half(3) == 3);
    CHECK(units_half(4) == 2);
    for (i64 D : {7, 8, 11, 12, 15, 16, 20, 23, 100, 163}) {
        if (!is_valid_disc(D)) continue;
        CHECK(units_half(D) == 1);
    }
}

TEST_CASE("hurwitz class numbers: six times the value is an integer") {
    for (i64 m = 1; m <= 1000; ++m) {
        Rat h = hurwitz_h(m);
        Rat six = h * 6;
        CAPTURE(m);
        CHECK(six.get_den() == 1);
        if (m % 4 == 1 || m % 4 == 2) CHECK(h == 0);
    }
}

TEST_CASE("hurwitz class numbers match direct weighted form counts") {
    for (i64 m = 3; m <= 1000; ++m) {
        if (m % 4 == 1 || m % 4 == 2) continue;
        CAPTURE(m);
        CHECK(hurwitz_h(m) == hurwitz_by_enumeration(m));
    }
}

TEST_CASE("hurwitz class numbers: frozen small values") {
    CHECK(hurwitz_h(3) == Rat(1, 3));
    CHECK(hurwitz_h(4) == Rat(1, 2));
    CHECK(hurwitz_h(7) == 1);
    CHECK(hurwitz_h(8) == 1);
    CHECK(hurwitz_h(11) == 1);
    CHECK(hurwitz_h(12) == Rat(4, 3));
    CHECK(hurwitz_h(15) == 2);
    CHECK(hurwitz_h(16) == Rat(3, 2));
    CHECK(hurwitz_h(19) == 1);
    CHECK(hurwitz_h(20) == 2);
    CHECK(hurwitz_h(23) == 3);
}

TEST_CASE("eisenstein weights vanish at split discriminants and match theta spots") {
    // frozen spot values transported from the theta tables:
    // a_R(D) = 24/(p-1) * H_p(D)  =>  H_p(D) = (p-1)/24 * a_R(D)
    CHECK(eisenstein_hp(7, 13) == 1);            // a_R(7) = 2 at p = 13
    CHECK(eisenstein_hp(3, 5) == Rat(1, 3));     // a_R(3) = 2 at p = 5
    CHECK(eisenstein_hp(8, 5) == 1);             // a_R(8) = 6 at p = 5
    for (i64 m = 3; m <= 200; ++m) {
        if (!is_valid_disc(m) || !is_fundamental(m)) continue;
        if (kronecker(-m, 13) == 1) CHECK(eisenstein_hp(m, 13) == 0);
    }
    CHECK_THROWS((void)eisenstein_hp(12, 13));  // non-fundamental input is rejected
}

TEST_SUITE_END();
