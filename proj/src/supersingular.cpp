#include "deuring/supersingular.hpp"

#include <algorithm>

namespace deuring {

namespace {

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

ModPoly hasse_polynomial(u64 p) {
    if (p < 5 || !is_prime_u64(p)) throw BadPrime("hasse_polynomial: need a prime p >= 5");
    FpCtx fp(p);
    u64 half = (p - 1) / 2;
    u64 c1728 = 1728 % p;

    // A(t) = 3t(1728 - t) = 5184 t - 3 t^2
    // B(t) = 2t(1728 - t)^2 = 2*1728^2 t - 4*1728 t^2 + 2 t^3
    u64 A[3] = {0, fp.mul(3, fp.mul(c1728, 1)), fp.neg(3)};  // index = t-degree
    u64 B[4] = {0, fp.mul(2, fp.mul(c1728, c1728)), fp.neg(fp.mul(4, c1728)), 2 % p};

    // f[d] = coefficient of x^d, itself a polynomial in t (dense, low first).
    // Only the x^{p-1} coefficient is wanted; any monomial with t-degree
    // beyond (p-1)/2 can only feed t-degrees of the final row that are
    // provably zero, so the t direction is capped at (p-1)/2.
    u64 tcap = half;  // inclusive highest retained t-degree
    std::vector<std::vector<u64>> f(1, std::vector<u64>(1, 1));

    for (u64 step = 1; step <= half; ++step) {
        size_t xd = f.size() - 1;
        size_t nxd = std::min<size_t>(xd + 3, p - 1);
        std::vector<std::vector<u64>> g(nxd + 1);
        // remaining steps after this one can raise the x-degree by at most 3 each
        u64 remaining = half - step;
        size_t min_useful = (3 * remaining >= p - 1) ? 0 : (size_t)(p - 1 - 3 * remaining);
        for (size_t d = 0; d <= nxd; ++d) {
            if (d < min_useful) continue;
            size_t tlen = 1;
            if (d >= 3 && d - 3 < f.size()) tlen = std::max(tlen, f[d - 3].size());
            if (d >= 1 && d - 1 < f.size()) tlen = std::max(tlen, f[d - 1].size() + 2);
            if (d < f.size()) tlen = std::max(tlen, f[d].size() + 3);
            tlen = std::min<size_t>(tlen, tcap + 1);
            std::vector<u64> row(tlen, 0);
            if (d >= 3 && d - 3 < f.size()) {  // * x^3
                const auto& src = f[d - 3];
                for (size_t i = 0; i < src.size() && i < tlen; ++i) row[i] = src[i];
            }
            if (d >= 1 && d - 1 < f.size()) {  // * A x
                const auto& src = f[d - 1];
                for (size_t i = 0; i < src.size(); ++i) {
                    if (src[i] == 0) continue;
                    for (int k = 1; k <= 2; ++k) {
                        size_t t = i + k;
                        if (t >= tlen) break;
                        row[t] = fp.add(row[t], fp.mul(src[i], A[k]));
                    }
                }
            }
            if (d < f.size()) {  // * B
                const auto& src = f[d];
                for (size_t i = 0; i < src.size(); ++i) {
                    if (src[i] == 0) continue;
                    for (int k = 1; k <= 3; ++k) {
                        size_t t = i + k;
                        if (t >= tlen) break;
                        row[t] = fp.add(row[t], fp.mul(src[i], B[k]));
                    }
                }
            }
            g[d] = std::move(row);
        }
        f = std::move(g);
    }

    if (f.size() != p) throw InternalInconsistency("hasse_polynomial: x-degree bookkeeping off");
    ModPoly h{p, f[p - 1]};
    h.normalize();
    return h;
}

SupersingularData ss_polynomials(u64 p) {
    if (!is_prime_u64(p)) throw BadPrime("ss_polynomials: p must be prime");
    if (p == 2 || p == 3) {
        // The single supersingular invariant is j = 0 (= 1728 mod p).
        SupersingularData d;
        d.p = p;
        d.s_tilde = ModPoly{p, {1}};
        d.s = ModPoly{p, {0, 1}};
        d.e0 = 1;
        d.e1 = 0;
        d.roots = {Fp2{0, 0}};
        return d;
    }

    SupersingularData d;
    d.p = p;
    FpCtx fp(p);
    u64 c1728 = 1728 % p;

    ModPoly h = hasse_polynomial(p);
    // strip all factors of t and (t - 1728); the valuations are artifacts of
    // the parametrized model, not supersingular multiplicities.
    for (u64 r : {u64(0), c1728}) {
        while (h.degree() >= 1) {
            auto [q, rem] = mp_divrem(h, ModPoly{p, {fp.neg(r), 1}});
            if (!rem.is_zero()) break;
            h = q;
        }
    }
    d.s_tilde = mp_monic(h);

    if (d.s_tilde.degree() != (i64)(p / 12))
        throw InternalInconsistency("ss_polynomials: deg S~ != floor(p/12) at p = " +
                                    std::to_string(p));
    ModPoly g = mp_gcd(d.s_tilde, mp_derivative(d.s_tilde));
    if (g.degree() != 0)
        throw InternalInconsistency("ss_polynomials: S~ not squarefree at p = " +
                                    std::to_string(p));

    d.e0 = (p % 3 == 2) ? 1 : 0;
    d.e1 = (p % 4 == 3) ? 1 : 0;
    d.s = d.s_tilde;
    if (d.e0) d.s = mp_mul(d.s, ModPoly{p, {0, 1}});
    if (d.e1) d.s = mp_mul(d.s, ModPoly{p, {fp.neg(c1728), 1}});

    // Roots: F_p scan first, conjugate pairs in F_{p^2} for what remains.
    if (d.e0) d.roots.push_back(Fp2{0, 0});
    if (d.e1) d.roots.push_back(Fp2{c1728, 0});
    ModPoly rest = d.s_tilde;
    for (u64 r = 0; r < p && rest.degree() > 0; ++r) {
        auto [q, rem] = mp_divrem(rest, ModPoly{p, {fp.neg(r), 1}});
        if (rem.is_zero()) {
            d.roots.push_back(Fp2{r, 0});
            rest = q;
        }
    }
    if (rest.degree() > 0) {
        Fp2Ctx F(p);
        i64 want = rest.degree();
        for (u64 b = 1; b <= (p - 1) / 2 && (i64)0 < want; ++b) {
            for (u64 a = 0; a < p && (i64)0 < want; ++a) {
                Fp2 j0{a, b};
                if (F.is_zero(fp2_eval(F, rest, j0))) {
                    d.roots.push_back(j0);
                    d.roots.push_back(F.frobenius(j0));
                    want -= 2;
                }
            }
        }
        if (want != 0)
            throw InternalInconsistency("ss_polynomials: roots not closed in F_p^2 at p = " +
                                        std::to_string(p));
    }
    if ((i64)d.roots.size() != d.s.degree())
        throw InternalInconsistency("ss_polynomials: root count mismatch at p = " +
                                    std::to_string(p));
    return d;
}

bool is_supersingular_oracle(const Fp2Ctx& F, const Fp2& j0, u64 oracle_bound) {
    u64 p = F.p();
    if (p < 5) throw BadPrime("is_supersingular_oracle: need p >= 5");
    if (p > oracle_bound)
        throw OracleBoundExceeded("is_supersingular_oracle: p exceeds the bound " +
                                  std::to_string(oracle_bound));

    const FpCtx& fp = F.fp;
    u64 c1728 = 1728 % p;

    // curve y^2 = x^3 + ax + b over F_{p^2} with the requested j-invariant
    Fp2 a, b;
    if (F.is_zero(j0)) {
        a = F.embed(0);
        b = F.embed(1);
    } else if (j0 == F.embed(c1728)) {
        a = F.embed(1);
        b = F.embed(0);
    } else {
        Fp2 k = F.mul(j0, F.inv(F.sub(F.embed(c1728), j0)));
        a = F.mul(F.embed(3), k);
        b = F.mul(F.embed(2), k);
    }

    // Quadratic-character table on F_p (the character of F_{p^2} factors
    // through the norm map).
    std::vector<int> chi(p, -1);
    chi[0] = 0;
    for (u64 x = 1; x < p; ++x) chi[fp.mul(x, x)] = 1;

    // #E(F_{p^2}) = p^2 + 1 + sum_x chi(f(x))
    i64 sum = 0;
    for (u64 xa = 0; xa < p; ++xa) {
        for (u64 xb = 0; xb < p; ++xb) {
            Fp2 x{xa, xb};
            Fp2 fx = F.add(F.mul(F.add(F.sqr(x), a), x), b);
            sum += chi[F.norm(fx)];
        }
    }
    // trace = p^2 + 1 - #E = -sum
    return (sum % (i64)p) == 0;
}

}  // namespace deuring
