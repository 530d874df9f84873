// Command-line front end: each subcommand maps 1:1 to a library operation and
// can emit either a human-readable summary or deterministic JSON.
// Exit codes: 0 = success, 1 = mathematical negative (certificate refused,
// cross-check failed), 2 = usage or computation error.

#include <cstdio>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "deuring/cache.hpp"
#include "deuring/classfield.hpp"
#include "deuring/config.hpp"
#include "deuring/congruence.hpp"
#include "deuring/hilbert.hpp"
#include "deuring/koike.hpp"
#include "deuring/qseries.hpp"
#include "deuring/quaternion.hpp"
#include "deuring/supersingular.hpp"

using namespace deuring;
using nlohmann::json;

namespace {

std::unique_ptr<DiskCache> g_cache;

void setup_cache(const Config& cfg) {
    if (cfg.cache_dir.empty()) return;
    g_cache = std::make_unique<DiskCache>(cfg.cache_dir);
    set_active_cache(g_cache.get());
}

// signed residue string: coefficients shown in (-m/2, m/2] for readability
std::string signed_poly(const ModPoly& f, const std::string& var = "x") {
    if (f.is_zero()) return "0";
    std::string out;
    for (i64 d = f.degree(); d >= 0; --d) {
        u64 c = f.c[size_t(d)];
        if (c == 0) continue;
        i64 s = (c > f.m / 2) ? i64(c) - i64(f.m) : i64(c);
        bool neg = s < 0;
        u64 mag = u64(neg ? -s : s);
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (mag != 1 || d == 0) out += std::to_string(mag);
        if (d > 0) {
            if (mag != 1) out += "*";
            out += var;
            if (d > 1) out += "^" + std::to_string(d);
        }
    }
    return out;
}

json poly_json(const ModPoly& f) {
    json a = json::array();
    for (u64 c : f.c) a.push_back(c);
    return a;
}

json intpoly_json(const IntPoly& f) {
    json a = json::array();
    for (const Int& c : f.c) a.push_back(c.get_str());
    return a;
}

json series_json(const QSeries& s, i64 maxlen) {
    json out;
    out["valuation"] = s.is_zero() ? nullptr : json(s.valuation());
    out["order"] = s.order();
    json coeffs = json::array();
    i64 from = s.is_zero() ? 0 : s.valuation();
    i64 to = std::min(s.order(), from + maxlen - 1);
    for (i64 n = from; n <= to; ++n)
        coeffs.push_back({{"n", n}, {"c", s.coeff(n).get_str()}});
    out["coeffs"] = coeffs;
    return out;
}

void emit(const json& j, bool as_json, const std::string& text) {
    if (as_json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"congruence certification for class polynomials under U(p)"};
    app.require_subcommand(1);

    Config cfg;
    std::string config_path;
    bool as_json = false;
    app.add_option("--config", config_path, "key=value configuration file");
    app.add_flag("--json", as_json, "emit JSON instead of text");
    app.add_option("--cache-dir", cfg.cache_dir, "directory for polynomial artifacts");
    app.add_option("--order", cfg.series_order, "default q-expansion window");

    // ---- subcommand parameter slots ----
    i64 D = 0, N = 0, M = 0, dmin = 1, dmax = 0;
    u64 p = 0;
    int t = 2;
    u64 mod = 0;

    auto* c_jseries = app.add_subcommand("jseries", "q-expansion of the modular j-function");
    c_jseries->add_option("-N,--order-n", N, "last exponent to print (0 = config default)");
    c_jseries->add_option("-m,--mod", mod, "reduce coefficients mod this (0 = integers)");

    auto* c_hcp = app.add_subcommand("hcp", "Hilbert class polynomial for discriminant -D");
    c_hcp->add_option("-D", D, "positive discriminant value")->required();
    c_hcp->add_option("-m,--mod", mod, "also reduce mod this prime");

    auto* c_ssp = app.add_subcommand("ssp", "supersingular polynomials mod p");
    c_ssp->add_option("-p", p, "prime")->required();

    auto* c_up = app.add_subcommand("up", "U(p) image of H_D(j) mod p as a q-series");
    c_up->add_option("-D", D, "positive discriminant value")->required();
    c_up->add_option("-p", p, "prime")->required();
    c_up->add_option("-N,--order-n", N, "series window (0 = config default)");

    auto* c_certify = app.add_subcommand("certify", "certify H_D(j)|U(p) congruent to G(j) mod p");
    c_certify->add_option("-D", D, "positive discriminant value")->required();
    c_certify->add_option("-p", p, "prime")->required();
    c_certify->add_option("-N,--order-n", N, "series window (0 = config default)");

    auto* c_survey = app.add_subcommand("survey", "certify the whole discriminant family of p");
    c_survey->add_option("-p", p, "prime")->required();
    c_survey->add_option("--dmax", dmax, "largest discriminant (0 = 3p^2)");
    c_survey->add_option("-N,--order-n", N, "series window (0 = config default)");

    auto* c_scan = app.add_subcommand("scan", "divisibility S_p^t | H_D over a discriminant range");
    c_scan->add_option("-p", p, "prime")->required();
    c_scan->add_option("-t", t, "required power of S_p")->default_val(2);
    c_scan->add_option("--dmin", dmin, "first discriminant")->default_val(1);
    c_scan->add_option("--dmax", dmax, "last discriminant")->required();

    auto* c_delta = app.add_subcommand("delta", "numerator of (j(pz)-j^p)/p as N_p(j)/s~(j) mod p");
    c_delta->add_option("-p", p, "prime")->required();
    c_delta->add_option("-N,--order-n", N, "series window (0 = config default)");

    auto* c_theta = app.add_subcommand("theta", "theta coefficients and embedding numbers at p");
    c_theta->add_option("-p", p, "prime")->required();
    c_theta->add_option("-M,--max-m", M, "table bound")->default_val(100);

    auto* c_cross = app.add_subcommand("crosscheck", "class polynomial vs embedding numbers at (D, p)");
    c_cross->add_option("-D", D, "positive fundamental discriminant value")->required();
    c_cross->add_option("-p", p, "prime")->required();

    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints to stderr
        return 2;
    }

    try {
        if (!config_path.empty()) {
            Config file_cfg = load_config_file(config_path);
            // flags already parsed into cfg win over the file for cache/order
            if (cfg.cache_dir.empty()) cfg.cache_dir = file_cfg.cache_dir;
            if (app.count("--order") == 0) cfg.series_order = file_cfg.series_order;
            cfg.margin_bits = file_cfg.margin_bits;
            cfg.oracle_prime_bound = file_cfg.oracle_prime_bound;
            cfg.survey_dmax = file_cfg.survey_dmax;
            cfg.parallel = file_cfg.parallel;
        }
        if (cfg.cache_dir.empty()) apply_env(cfg);
        cfg.validate();
        setup_cache(cfg);
        if (N <= 0) N = cfg.series_order;

        if (*c_jseries) {
            QSeries j = j_series(N, Int(mod));
            json out{{"command", "jseries"}, {"mod", std::to_string(mod)}};
            out.update(series_json(j, N + 2));
            std::string text = "j(q) coefficients";
            if (mod) text += " mod " + std::to_string(mod);
            text += ":\n";
            for (i64 n = -1; n <= N; ++n)
                text += "  q^" + std::to_string(n) + ": " + j.coeff(n).get_str() + "\n";
            emit(out, as_json, text);
            return 0;
        }

        if (*c_hcp) {
            IntPoly h = hilbert_class_poly(D);
            json out{{"command", "hcp"},
                     {"D", D},
                     {"degree", h.degree()},
                     {"coeffs", intpoly_json(h)}};
            std::string text = "H_" + std::to_string(D) + "(x) = " + ip_to_string(h) + "\n";
            if (mod) {
                ModPoly hm = reduce_mod_p(h, mod);
                out["mod"] = mod;
                out["coeffs_mod"] = poly_json(hm);
                text += "mod " + std::to_string(mod) + ": " + signed_poly(hm) + "\n";
            }
            emit(out, as_json, text);
            return 0;
        }

        if (*c_ssp) {
            SupersingularData ss = ss_polynomials(p);
            json roots = json::array();
            for (const Fp2& r : ss.roots) roots.push_back({{"a", r.a}, {"b", r.b}});
            json out{{"command", "ssp"}, {"p", p},
                     {"s", poly_json(ss.s)},
                     {"s_tilde", poly_json(ss.s_tilde)},
                     {"e0", ss.e0}, {"e1", ss.e1},
                     {"roots", roots}};
            std::string text = "S_" + std::to_string(p) + "(x) = " + signed_poly(ss.s) + "\n" +
                               "s~_" + std::to_string(p) + "(x) = " + signed_poly(ss.s_tilde) +
                               "  [extra factors: x^" + std::to_string(ss.e0) + " (x-1728)^" +
                               std::to_string(ss.e1) + "]\n" +
                               std::to_string(ss.roots.size()) + " supersingular j-invariants\n";
            emit(out, as_json, text);
            return 0;
        }

        if (*c_up) {
            QSeries u = up_reduction(D, p, N);
            json out{{"command", "up"}, {"D", D}, {"p", p}};
            out.update(series_json(u, 16));
            std::string text = "H_" + std::to_string(D) + "(j)|U(" + std::to_string(p) +
                               ") mod " + std::to_string(p) + ":\n";
            i64 from = u.is_zero() ? 0 : u.valuation();
            for (i64 n = from; n <= std::min<i64>(u.order(), from + 9); ++n)
                text += "  q^" + std::to_string(n) + ": " + u.coeff(n).get_str() + "\n";
            emit(out, as_json, text);
            return 0;
        }

        if (*c_certify) {
            CongruenceCertificate cert = certify_congruence(D, p, N);
            json out{{"command", "certify"},
                     {"D", cert.D},
                     {"p", cert.p},
                     {"divides", cert.divisibility_holds},
                     {"certified", cert.certified},
                     {"constant", cert.certified ? json(cert.is_constant) : json(nullptr)},
                     {"G", cert.expressible ? poly_json(cert.g) : json(nullptr)},
                     {"c0", cert.c0},
                     {"verified_through", cert.verified_through},
                     {"observed_valuation", cert.observed_valuation},
                     {"observed", cert.observed},
                     {"principal_vanishes", cert.principal_vanishes}};
            std::string text;
            if (cert.certified) {
                text = "certified: H_" + std::to_string(D) + "(j)|U(" + std::to_string(p) +
                       ") == " + signed_poly(cert.g, "j") + "  (mod " + std::to_string(p) +
                       "), verified through q^" + std::to_string(cert.verified_through) + "\n";
            } else {
                text = "refused: no certificate for (D=" + std::to_string(D) +
                       ", p=" + std::to_string(p) + ")\n  s~^2 divisibility: " +
                       (cert.divisibility_holds ? "holds" : "fails") +
                       "\n  U(p) series opens:";
                for (size_t k = 0; k < cert.observed.size() && k < 3; ++k)
                    text += " " + std::to_string(cert.observed[k]) + (k < 2 ? "," : " ...");
                text += "\n";
            }
            emit(out, as_json, text);
            return cert.certified ? 0 : 1;
        }

        if (*c_survey) {
            OmegaSurvey sv = survey_family(p, dmax > 0 ? dmax : cfg.survey_dmax, N);
            json out{{"command", "survey"},
                     {"p", sv.p},
                     {"dmax", sv.dmax},
                     {"window", sv.N},
                     {"members", sv.members},
                     {"constant", sv.constant_members},
                     {"polynomial", sv.polynomial_members},
                     {"refused", sv.refused}};
            std::string text = "family of p=" + std::to_string(p) + " up to D=" +
                               std::to_string(sv.dmax) + ": " + std::to_string(sv.members.size()) +
                               " members, " + std::to_string(sv.constant_members.size()) +
                               " constant certificates, " +
                               std::to_string(sv.polynomial_members.size()) + " polynomial, " +
                               std::to_string(sv.refused.size()) + " refused\n";
            if (!sv.refused.empty()) {
                text += "refused:";
                for (i64 d : sv.refused) text += " " + std::to_string(d);
                text += "\n";
            }
            emit(out, as_json, text);
            return 0;
        }

        if (*c_scan) {
            SurjectivityScan sc = scan_surjectivity(p, t, dmin, dmax);
            json deciles = json::array();
            for (const DecileRow& r : sc.deciles)
                deciles.push_back({{"lo", r.lo}, {"hi", r.hi},
                                   {"qualifying", r.qualifying}, {"exceptions", r.exceptions}});
            json out{{"command", "scan"},
                     {"p", sc.p},
                     {"t", sc.t},
                     {"dmin", sc.dmin},
                     {"dmax", sc.dmax},
                     {"qualifying", sc.qualifying},
                     {"exceptions", sc.exceptions},
                     {"deciles", deciles}};
            std::string text = "S_" + std::to_string(p) + "^" + std::to_string(t) +
                               " | H_D over D in [" + std::to_string(dmin) + ", " +
                               std::to_string(dmax) + "]: " + std::to_string(sc.qualifying) +
                               " qualifying, " + std::to_string(sc.exceptions.size()) +
                               " exceptions\n";
            for (const DecileRow& r : sc.deciles)
                text += "  [" + std::to_string(r.lo) + ", " + std::to_string(r.hi) + "]: " +
                        std::to_string(r.exceptions) + "/" + std::to_string(r.qualifying) + "\n";
            if (!sc.exceptions.empty()) {
                text += "exceptions:";
                for (i64 d : sc.exceptions) text += " " + std::to_string(d);
                text += "\n";
            }
            emit(out, as_json, text);
            return 0;
        }

        if (*c_delta) {
            RationalJFunction rj = delta_p(p, N);
            json out{{"command", "delta"},
                     {"p", rj.p},
                     {"numerator", poly_json(rj.numerator)},
                     {"denominator", poly_json(rj.denominator)},
                     {"gcd", poly_json(rj.common)},
                     {"verified_through", rj.verified_through}};
            std::string text = "delta_" + std::to_string(p) + "(t) = N(t)/s~(t) mod " +
                               std::to_string(p) + "\n  N = " + signed_poly(rj.numerator, "t") +
                               "\n  s~ = " + signed_poly(rj.denominator, "t") +
                               "\n  gcd = " + signed_poly(rj.common, "t") + "\n";
            emit(out, as_json, text);
            return 0;
        }

        if (*c_theta) {
            QuaternionOrder R = maximal_order(p);
            TraceZeroLattice L = trace_zero_lattice(R);
            EmbeddingTable T = embedding_numbers(R, M);
            json gram = json::array();
            for (int i = 0; i < 3; ++i) {
                json row = json::array();
                for (int jx = 0; jx < 3; ++jx) row.push_back(L.gram[i][jx].get_str());
                gram.push_back(row);
            }
            json out{{"command", "theta"},
                     {"p", p},
                     {"M", M},
                     {"alpha", R.alg.alpha.get_str()},
                     {"beta", R.alg.beta.get_str()},
                     {"units", T.units},
                     {"gram", gram},
                     {"det", L.det.get_str()},
                     {"a", T.a},
                     {"h", T.h}};
            std::string text = "p=" + std::to_string(p) + ": algebra (-" +
                               R.alg.alpha.get_str() + ", -" + R.alg.beta.get_str() +
                               "), units " + std::to_string(T.units) + ", det(Gram) " +
                               L.det.get_str() + "\n  m : a(m) h(O_m,R)\n";
            for (i64 m = 1; m <= M; ++m)
                if (T.a[size_t(m)] || T.h[size_t(m)])
                    text += "  " + std::to_string(m) + " : " + std::to_string(T.a[size_t(m)]) +
                            " " + std::to_string(T.h[size_t(m)]) + "\n";
            emit(out, as_json, text);
            return 0;
        }

        if (*c_cross) {
            try {
                DeuringReport rep = deuring_cross_check(D, p);
                json out{{"command", "crosscheck"},
                         {"D", rep.D},
                         {"p", rep.p},
                         {"ramified", rep.ramified},
                         {"class_number", rep.class_number},
                         {"ss_multiplicity_total", rep.ss_total},
                         {"aggregate_ok", rep.aggregate_ok},
                         {"type1", rep.type1},
                         {"mult_at_unique", rep.type1 ? json(rep.mult_at_unique) : json(nullptr)},
                         {"embedding_count", rep.embedding_count},
                         {"per_curve_ok", rep.per_curve_ok}};
                std::string text = "D=" + std::to_string(D) + " p=" + std::to_string(p) +
                                   ": ss multiplicities sum to " + std::to_string(rep.ss_total) +
                                   " = h(-D) = " + std::to_string(rep.class_number) + "\n";
                if (rep.type1)
                    text += "  unique ss invariant: multiplicity " +
                            std::to_string(rep.mult_at_unique) + " vs " +
                            (rep.ramified ? "1" : "1/2") + " * h(O_D,R) = " +
                            (rep.ramified ? "1" : "1/2") + " * " +
                            std::to_string(rep.embedding_count) + "  (consistent)\n";
                emit(out, as_json, text);
                return 0;
            } catch (const CrossCheckFailed& e) {
                std::cerr << "cross-check failed: " << e.what() << "\n";
                return 1;
            }
        }

        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
