#include "deuring/classfield.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "deuring/arith.hpp"

namespace deuring {

bool is_valid_disc(i64 D) {
    if (D <= 0) return false;
    i64 r = D % 4;  // -D mod 4 in {0,1} <=> D mod 4 in {0,3}
    return r == 0 || r == 3;
}

static void check_disc(i64 D) {
    if (!is_valid_disc(D))
        throw BadDiscriminant("not a negative discriminant: -" + std::to_string(D));
}

static bool squarefree(i64 n) {
    for (i64 d = 2; d * d <= n; ++d) {
        if (n % (d * d) == 0) return false;
        while (n % d == 0) n /= d;
    }
    return true;
}

bool is_fundamental(i64 D) {
    if (!is_valid_disc(D)) return false;
    if (D % 4 == 3) return squarefree(D);
    i64 m = D / 4;  // -D/4 = -m; fundamental iff m squarefree and m = 1,2 mod 4
    return (m % 4 == 1 || m % 4 == 2) && squarefree(m);
}

std::pair<i64, i64> fundamental_part(i64 D) {
    check_disc(D);
    // largest f0 with f0^2 | D
    i64 f0 = 1, n = D;
    for (i64 d = 2; d * d <= n; ++d) {
        while (n % (d * d) == 0) {
            f0 *= d;
            n /= d * d;
        }
    }
    i64 m = D / (f0 * f0);
    if (m % 4 == 3) return {f0, m};
    // -m = 1,2 mod 4: the fundamental discriminant is -4m and f0 must be even
    if (f0 % 2 != 0) throw InternalInconsistency("fundamental_part: odd conductor at -" + std::to_string(D));
    return {f0 / 2, 4 * m};
}

std::vector<QuadForm> reduced_forms(i64 D) {
    check_disc(D);
    std::vector<QuadForm> out;
    for (i64 a = 1; 3 * a * a <= D; ++a) {
        for (i64 b = -a + 1; b <= a; ++b) {
            i64 num = b * b + D;
            if (num % (4 * a) != 0) continue;
            i64 c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;  // (a,-b,a) ~ (a,b,a)
            if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;  // primitive only
            out.push_back({a, b, c});
        }
    }
    std::sort(out.begin(), out.end(), [](const QuadForm& f, const QuadForm& g) {
        return std::tie(f.a, f.b) < std::tie(g.a, g.b);
    });
    return out;
}

i64 class_number(i64 D) { return static_cast<i64>(reduced_forms(D).size()); }

int units_half(i64 D) {
    check_disc(D);
    if (D == 3) return 3;
    if (D == 4) return 2;
    return 1;
}

Rat hurwitz_h(i64 m) {
    if (m == 0) return Rat(-1, 12);
    if (m < 0 || !is_valid_disc(m)) return Rat(0);
    Rat total(0);
    for (i64 f = 1; f * f <= m; ++f) {
        if (m % (f * f) != 0) continue;
        i64 d = m / (f * f);
        if (!is_valid_disc(d)) continue;
        Rat term(class_number(d), units_half(d));
        term.canonicalize();  // mpq comparisons require canonical form
        total += term;
    }
    return total;
}

Rat eisenstein_hp(i64 D, u64 p) {
    check_disc(D);
    if (!is_fundamental(D))
        throw NotFundamental("eisenstein_hp needs a fundamental discriminant, got -" + std::to_string(D));
    int chi = kronecker(-D, static_cast<i64>(p));
    Rat factor(1 - chi, 2);
    factor.canonicalize();
    Rat cls(class_number(D), units_half(D));
    cls.canonicalize();
    return factor * cls;
}

}  // namespace deuring
