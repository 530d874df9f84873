#include "deuring/congruence.hpp"

#include <algorithm>

#include "deuring/classfield.hpp"
#include "deuring/hilbert.hpp"
#include "deuring/supersingular.hpp"

namespace deuring {

namespace {

// multiplicity of r in f over F_p by repeated synthetic division
i64 multiplicity_fp(const ModPoly& f, u64 r) {
    ModPoly cur = f;
    i64 mult = 0;
    while (cur.degree() >= 1 && mp_eval(cur, r) == 0) {
        // divide by (x - r) in place: synthetic division
        std::vector<u64> q(cur.c.size() - 1);
        u64 carry = 0;
        for (size_t k = cur.c.size(); k-- > 1;) {
            carry = (k == cur.c.size() - 1)
                        ? cur.c[k]
                        : (cur.c[k] + mul_mod(carry, r, cur.m)) % cur.m;
            q[k - 1] = carry;
        }
        cur = ModPoly{cur.m, std::move(q)};
        ++mult;
    }
    return mult;
}

ModPoly class_poly_mod(i64 D, u64 p) {
    IntPoly h = hilbert_class_poly(D);
    return reduce_mod_p(h, p);
}

}  // namespace

bool MultiplicityReport::all_at_least(i64 t) const {
    for (const auto& r : roots)
        if (r.multiplicity < t) return false;
    return true;
}

MultiplicityReport multiplicity_report(i64 D, u64 p) {
    MultiplicityReport rep;
    rep.D = D;
    rep.p = p;
    ModPoly h = class_poly_mod(D, p);
    rep.class_number = h.degree();

    SupersingularData ss = ss_polynomials(p);
    if (p <= 3) {
        // the unique supersingular invariant is 0, which lies in F_p
        i64 m = multiplicity_fp(h, 0);
        rep.roots.push_back({Fp2{0, 0}, true, m});
        rep.ss_total = m;
        return rep;
    }
    Fp2Ctx F(p);
    for (const Fp2& r : ss.roots) {
        RootMultiplicity row;
        row.root = r;
        row.in_base = (r.b == 0);
        row.multiplicity = row.in_base ? multiplicity_fp(h, r.a)
                                       : multiplicity_at(F, h, r);
        rep.ss_total += row.multiplicity;
        rep.roots.push_back(row);
    }
    return rep;
}

bool divisibility_check(i64 D, u64 p, int t, bool full) {
    if (t < 0) throw DomainError("divisibility_check: negative exponent");
    ModPoly h = class_poly_mod(D, p);
    SupersingularData ss = ss_polynomials(p);
    const ModPoly& s = full ? ss.s : ss.s_tilde;
    if (s.degree() == 0) return true;  // s_tilde = 1 divides everything
    for (int k = 0; k < t; ++k) {
        DivRem d = mp_divrem(h, s);
        if (!d.r.is_zero()) return false;
        h = d.q;
    }
    return true;
}

QSeries up_reduction(i64 D, u64 p, i64 N) {
    if (N < 1) throw DomainError("up_reduction: order must be positive");
    ModPoly h = class_poly_mod(D, p);
    std::vector<Int> coeffs(h.c.size());
    for (size_t k = 0; k < h.c.size(); ++k) coeffs[k] = Int(h.c[k]);
    QSeries hj = poly_in_j(coeffs, N * i64(p), Int(p));
    return qs_apply_up(hj, p);
}

ExpressInJ express_in_j(const QSeries& s) {
    const Int& m = s.mod();
    if (m == 0 || !m.fits_ulong_p())
        throw DomainError("express_in_j: series must live over a word-size modulus");
    QSeries rem = s;
    i64 deg = std::max<i64>(0, -s.valuation());
    std::vector<Int> coeffs(size_t(deg) + 1, Int(0));
    // need j to order rem.order() + deg so every subtraction keeps the window
    while (!rem.is_zero() && rem.valuation() < 0) {
        i64 n = -rem.valuation();
        Int c = rem.coeff(-n);
        coeffs[size_t(n)] = c;
        QSeries jn = qs_pow(j_series_cached(rem.order() + n, m), u64(n));
        rem = qs_sub(rem, qs_scale(jn, c));
        if (!rem.is_zero() && rem.valuation() <= -n)
            throw InternalInconsistency("express_in_j: elimination failed to reduce the pole");
    }
    if (rem.order() < 10)
        throw InsufficientOrder("express_in_j: fewer than 10 coefficients usable after elimination");
    ExpressInJ out;
    if (!rem.is_zero() && rem.valuation() == 0) {
        coeffs[0] = rem.coeff(0);
        rem = qs_sub(rem, QSeries::monomial(rem.coeff(0), 0, rem.order(), m));
    }
    if (!rem.is_zero()) {
        out.ok = false;
        out.offending_exponent = rem.valuation();
        return out;
    }
    out.ok = true;
    u64 mm = m.get_ui();
    std::vector<u64> cm(coeffs.size());
    for (size_t k = 0; k < coeffs.size(); ++k)
        cm[k] = mpz_fdiv_ui(coeffs[k].get_mpz_t(), mm);
    out.poly = ModPoly{mm, std::move(cm)};
    return out;
}

CongruenceCertificate certify_congruence(i64 D, u64 p, i64 N) {
    if (N < 10) throw DomainError("certify_congruence: need at least 10 observable orders");
    CongruenceCertificate cert;
    cert.D = D;
    cert.p = p;

    ModPoly h = class_poly_mod(D, p);
    cert.class_number = class_number(D);

    std::vector<Int> coeffs(h.c.size());
    for (size_t k = 0; k < h.c.size(); ++k) coeffs[k] = Int(h.c[k]);
    QSeries hj = poly_in_j(coeffs, N * i64(p), Int(p));
    cert.c0 = hj.coeff(0).get_ui();

    QSeries up = qs_apply_up(hj, p);
    cert.verified_through = up.order();
    cert.observed_valuation = up.valuation();
    cert.principal_vanishes = up.valuation() >= 0;
    for (i64 n = 0; n <= std::min<i64>(7, up.order()); ++n)
        cert.observed.push_back(up.coeff(n).get_ui());

    cert.divisibility_holds = divisibility_check(D, p, 2, /*full=*/false);

    ExpressInJ expr = express_in_j(up);
    cert.expressible = expr.ok;
    if (expr.ok) {
        cert.g = expr.poly;
        cert.is_constant = cert.g.degree() <= 0;
    }
    cert.certified = cert.divisibility_holds && cert.expressible;

    if (cert.divisibility_holds && !cert.expressible)
        throw InternalInconsistency(
            "certify_congruence: divisibility holds but the U(p) image is not a polynomial in j");
    if (cert.expressible) {
        // degree bound deg G <= h/p from the weight of the associated form
        if (cert.g.degree() > cert.class_number / i64(p))
            throw InternalInconsistency("certify_congruence: certificate degree exceeds h/p");
        // the constant term of a certificate always matches the q^0
        // coefficient of H_D(j)
        u64 g0 = cert.g.c.empty() ? 0 : cert.g.c[0];
        if (cert.is_constant && g0 != cert.c0 % p)
            throw InternalInconsistency("certify_congruence: constant certificate mismatch at q^0");
        // a vanishing principal part forces the certificate to be constant:
        // any j-power of positive degree would reintroduce a pole
        if (cert.principal_vanishes && !cert.is_constant)
            throw InternalInconsistency(
                "certify_congruence: constant-free certificate despite vanishing principal part");
    }
    return cert;
}

bool family_member(i64 D, u64 p) {
    if (!is_valid_disc(D) || !is_fundamental(D)) return false;
    i64 h = class_number(D);
    if (!(6 * h > i64(p) && h < i64(p))) return false;
    return kronecker(Int(-D), Int(p)) != 1;
}

OmegaSurvey survey_family(u64 p, i64 dmax, i64 N) {
    OmegaSurvey sv;
    sv.p = p;
    sv.dmax = dmax > 0 ? dmax : 3 * i64(p) * i64(p);
    sv.N = N;
    for (i64 D = 3; D <= sv.dmax; ++D) {
        if (!family_member(D, p)) continue;
        sv.members.push_back(D);
        CongruenceCertificate cert = certify_congruence(D, p, N);
        if (!cert.certified)
            sv.refused.push_back(D);
        else if (cert.is_constant)
            sv.constant_members.push_back(D);
        else
            sv.polynomial_members.push_back(D);
    }
    return sv;
}

SurjectivityScan scan_surjectivity(u64 p, int t, i64 dmin, i64 dmax) {
    if (dmin < 1 || dmax < dmin) throw DomainError("scan_surjectivity: bad range");
    SurjectivityScan sc;
    sc.p = p;
    sc.t = t;
    sc.dmin = dmin;
    sc.dmax = dmax;
    sc.deciles.resize(10);
    i64 span = dmax - dmin + 1;
    for (int k = 0; k < 10; ++k) {
        sc.deciles[k].lo = dmin + span * k / 10;
        sc.deciles[k].hi = dmin + span * (k + 1) / 10 - 1;
    }
    sc.deciles[9].hi = dmax;
    for (i64 D = dmin; D <= dmax; ++D) {
        if (!is_valid_disc(D) || !is_fundamental(D)) continue;
        if (kronecker(Int(-D), Int(p)) == 1) continue;
        ++sc.qualifying;
        size_t k = size_t(std::min<i64>(9, (D - dmin) * 10 / span));
        ++sc.deciles[k].qualifying;
        if (!divisibility_check(D, p, t, /*full=*/true)) {
            sc.exceptions.push_back(D);
            ++sc.deciles[k].exceptions;
        }
    }
    return sc;
}

}  // namespace deuring
