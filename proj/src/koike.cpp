#include "deuring/koike.hpp"

#include <algorithm>

#include "deuring/congruence.hpp"
#include "deuring/qseries.hpp"
#include "deuring/supersingular.hpp"

namespace deuring {

namespace {

// F evaluated at a q-series by Horner; the window is tracked by the series ops
QSeries eval_poly_at_series(const IntPoly& F, const QSeries& x, const Int& mod) {
    i64 huge = x.order() + (F.degree() + 1) * std::max<i64>(1, -x.valuation()) + 8;
    if (F.is_zero()) return QSeries::zero(huge, mod);
    QSeries acc = QSeries::monomial(F.c.back(), 0, huge, mod);
    for (size_t k = F.c.size() - 1; k-- > 0;)
        acc = qs_add(qs_mul(acc, x), QSeries::monomial(F.c[k], 0, huge, mod));
    return acc;
}

std::vector<Int> lift_coeffs(const ModPoly& f) {
    std::vector<Int> out(f.c.size());
    for (size_t k = 0; k < f.c.size(); ++k) out[k] = Int(f.c[k]);
    return out;
}

}  // namespace

RationalJFunction delta_p(u64 p, i64 N) {
    SupersingularData ss = ss_polynomials(p);
    i64 ds = ss.s_tilde.degree();
    if (N < ds + 20) throw DomainError("delta_p: order too small to pin the numerator");

    Int Q = Int(p) * Int(p);
    i64 od = N + ds;                 // window needed on d(q)
    i64 oj = od + i64(p) - 1;        // j-window so j^p retains od

    QSeries jq = j_series_cached(oj, Q);
    QSeries jp = qs_pow(jq, p);
    QSeries vp = qs_apply_vp(qs_truncate(jq, ceil_div(od, i64(p))), p);
    QSeries diff = qs_sub(qs_truncate(vp, od), qs_truncate(jp, od));

    // divide by p, asserting divisibility coefficientwise
    QSeries d;
    if (diff.is_zero()) {
        d = QSeries::zero(od, Int(p));
    } else {
        std::vector<Int> dc(diff.raw().size());
        for (size_t k = 0; k < dc.size(); ++k) {
            const Int& c = diff.raw()[k];
            if (c % p != 0)
                throw NotDivisibleByP("delta_p: j(pz) - j^p has a coefficient not divisible by p");
            dc[k] = c / p;
        }
        d = QSeries::from_coeffs(std::move(dc), diff.valuation(), od, Int(p));
    }

    QSeries stj = poly_in_j(lift_coeffs(ss.s_tilde), N + i64(p) - 1, Int(p));
    QSeries prod = qs_mul(d, stj);
    if (prod.order() < N)
        throw InternalInconsistency("delta_p: window bookkeeping lost precision");
    prod = qs_truncate(prod, N);

    ExpressInJ expr = express_in_j(prod);
    if (!expr.ok)
        throw NotPolynomial("delta_p: d * s_tilde(j) is not polynomial in j through the window");

    RationalJFunction out;
    out.p = p;
    out.numerator = expr.poly;
    out.denominator = ss.s_tilde;
    out.verified_through = N;

    // independent recheck of the reconstruction through the full window
    QSeries back = poly_in_j(lift_coeffs(out.numerator), N, Int(p));
    if (!qs_sub(prod, qs_truncate(back, N)).is_zero())
        throw InternalInconsistency("delta_p: reconstructed numerator does not reproduce the series");

    out.common = mp_gcd(out.numerator, out.denominator);
    return out;
}

bool verify_frobenius_expansion(const IntPoly& F, u64 p, i64 N) {
    if (N < 10) throw DomainError("verify_frobenius_expansion: order too small");
    SupersingularData ss = ss_polynomials(p);
    i64 ds = ss.s_tilde.degree();
    RationalJFunction rj = delta_p(p, std::max<i64>(N, ds + 20));

    Int Q = Int(p) * Int(p);
    i64 g = std::max<i64>(0, F.degree());
    i64 m0 = N + ds + i64(p) * (g + 1) + i64(p) + 4;

    QSeries jq = j_series_cached(m0, Q);
    QSeries jp = qs_pow(jq, p);
    QSeries vj = qs_apply_vp(qs_truncate(jq, ceil_div(m0, i64(p))), p);

    QSeries stj = poly_in_j(lift_coeffs(ss.s_tilde), m0, Q);
    QSeries lhs = qs_mul(stj, eval_poly_at_series(F, vj, Q));

    IntPoly Fd = ip_derivative(F);
    QSeries rhs = qs_mul(stj, eval_poly_at_series(F, jp, Q));
    QSeries npj = poly_in_j(lift_coeffs(rj.numerator), m0, Q);
    rhs = qs_add(rhs, qs_scale(qs_mul(eval_poly_at_series(Fd, jp, Q), npj), Int(p)));

    QSeries diff = qs_sub(lhs, rhs);
    if (diff.order() < N)
        throw InternalInconsistency("verify_frobenius_expansion: window bookkeeping lost precision");
    return qs_truncate(diff, N).is_zero();
}

}  // namespace deuring
