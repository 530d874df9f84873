#include "deuring/hilbert.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <optional>

#include "deuring/cache.hpp"
#include "deuring/classfield.hpp"
#include "deuring/qseries.hpp"

namespace deuring {

namespace {

constexpr double kLn2 = 0.6931471805599453;
constexpr double kPi = 3.141592653589793;

}  // namespace

BigComplex eval_j(const BigComplex& tau, long precision) {
    check_precision(precision);
    double imt = tau.im.to_double();
    if (!(imt >= 0.866))  // sqrt(3)/2 up to representation slack
        throw DomainError("eval_j: Im tau below the fundamental-domain bound");

    // Magnitude of the leading 1/q term; it also scales error amplification.
    long mag = (long)std::ceil(2.0 * kPi * imt / kLn2) + 8;
    long wp = precision + 96 + mag;
    check_precision(wp);

    // Truncation point: 2 e^{4 pi sqrt(N)} |q|^N <= 2^{-(prec+17)} with
    // |q| = e^{-2 pi Im tau}; the left side also dominates the dropped tail.
    double log2_q = -2.0 * kPi * imt / kLn2;
    i64 N = 1;
    while (1.0 + 4.0 * kPi * std::sqrt((double)N) / kLn2 + log2_q * (double)N >
           -(double)(precision + 17)) {
        if (++N > (i64)1'000'000) throw PrecisionOverflow("eval_j: truncation order exploded");
    }

    const QSeries jq = j_series_cached(N, Int(0));

    BigFixed one = BigFixed::from_int(1);
    BigFixed pi = pi_fixed(wp);
    BigFixed two_pi = bf_add(pi, pi, wp);
    // q = exp(2 pi i tau)
    BigComplex z{bf_neg(bf_mul(two_pi, tau.im, wp)), bf_mul(two_pi, tau.re, wp)};
    BigComplex q = complex_exp(z, wp);

    BigComplex acc = cx_div(BigComplex{one, BigFixed()}, q, wp);  // q^{-1}
    BigComplex qn{one, BigFixed()};
    for (i64 n = 0; n <= N; ++n) {
        if (n > 0) qn = cx_mul(qn, q, wp);
        Int cn = jq.coeff(n);
        if (cn == 0) continue;
        BigFixed c = BigFixed::from_int(cn);
        acc.re = bf_add(acc.re, bf_mul(qn.re, c, wp), wp);
        acc.im = bf_add(acc.im, bf_mul(qn.im, c, wp), wp);
    }
    return acc;
}

namespace {

std::mutex g_memo_mutex;
std::map<i64, IntPoly> g_memo;

// One product-and-round pass; nullopt when a residual breaches the gate.
std::optional<IntPoly> assemble_at(i64 D, const std::vector<QuadForm>& forms, long prec) {
    long wp = prec + 64;
    check_precision(wp);
    BigFixed sqrtD = bf_sqrt(BigFixed::from_int(Int(D)), wp);

    std::vector<BigComplex> poly{BigComplex{BigFixed::from_int(1), BigFixed()}};
    poly.reserve(forms.size() + 1);
    for (const QuadForm& f : forms) {
        BigComplex tau{BigFixed::from_ratio(Int(-f.b), Int(2 * f.a), wp),
                       bf_div_int(sqrtD, Int(2 * f.a), wp)};
        BigComplex j = eval_j(tau, prec);
        // poly *= (x - j), coefficients low degree first
        size_t d = poly.size() - 1;
        poly.push_back(poly[d]);
        for (size_t k = d; k >= 1; --k)
            poly[k] = cx_sub(poly[k - 1], cx_mul(j, poly[k], wp), wp);
        poly[0] = cx_mul(j, poly[0], wp);
        poly[0].re = bf_neg(poly[0].re);
        poly[0].im = bf_neg(poly[0].im);
    }

    IntPoly out;
    out.c.reserve(poly.size());
    for (const BigComplex& coef : poly) {
        if (bf_cmp_abs_ratio(coef.im, Int(1), Int(100)) >= 0) return std::nullopt;
        BigFixed resid;
        Int n = bf_round_to_int(coef.re, &resid);
        if (bf_cmp_abs_ratio(resid, Int(1), Int(100)) >= 0) return std::nullopt;
        out.c.push_back(n);
    }
    return out;
}

}  // namespace

IntPoly hilbert_class_poly(i64 D, long extra_bits) {
    if (!is_valid_disc(D)) throw BadDiscriminant("hilbert_class_poly: -" + std::to_string(D));

    if (extra_bits == 0) {
        std::lock_guard<std::mutex> lk(g_memo_mutex);
        auto it = g_memo.find(D);
        if (it != g_memo.end()) return it->second;
    }

    std::vector<QuadForm> forms = reduced_forms(D);
    i64 h = (i64)forms.size();

    if (extra_bits == 0) {
        if (DiskCache* cache = active_cache()) {
            if (auto hit = cache->load("hd", D)) {
                if ((i64)hit->coeffs.size() == h + 1 && hit->coeffs.back() == 1) {
                    IntPoly f{hit->coeffs};
                    std::lock_guard<std::mutex> lk(g_memo_mutex);
                    g_memo.emplace(D, f);
                    return f;
                }
                std::fprintf(stderr,
                             "warning: cached class polynomial for D=%lld has wrong degree; "
                             "recomputing\n",
                             (long long)D);
            }
        }
    }

    double sum_inv_a = 0.0;
    for (const QuadForm& f : forms) sum_inv_a += 1.0 / (double)f.a;
    long prec =
        (long)std::ceil(kPi * std::sqrt((double)D) * sum_inv_a / kLn2) + 32 * h + 64 + extra_bits;

    std::optional<IntPoly> result = assemble_at(D, forms, prec);
    long used = prec;
    if (!result) {
        used = 2 * prec;
        result = assemble_at(D, forms, used);
    }
    if (!result)
        throw PrecisionInsufficient("hilbert_class_poly: residual gate failed twice for -D = -" +
                                    std::to_string(D));
    if ((i64)result->c.size() != h + 1 || result->c.back() != 1)
        throw InternalInconsistency("hilbert_class_poly: degree or leading coefficient off");

    if (extra_bits == 0) {
        if (DiskCache* cache = active_cache()) cache->store("hd", D, {result->c, used});
        std::lock_guard<std::mutex> lk(g_memo_mutex);
        g_memo.emplace(D, *result);
    }
    return *result;
}

ModPoly reduce_mod_p(const IntPoly& f, u64 p) { return ip_reduce(f, p); }

void hilbert_memo_clear() {
    std::lock_guard<std::mutex> lk(g_memo_mutex);
    g_memo.clear();
}

}  // namespace deuring
