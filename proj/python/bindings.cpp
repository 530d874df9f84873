// Python bindings for the main library operations.  Exact integers cross the
// boundary as Python ints (arbitrary precision preserved); exact rationals as
// fractions.Fraction.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "deuring/classfield.hpp"
#include "deuring/congruence.hpp"
#include "deuring/hilbert.hpp"
#include "deuring/koike.hpp"
#include "deuring/qseries.hpp"
#include "deuring/quaternion.hpp"
#include "deuring/supersingular.hpp"

namespace py = pybind11;
using namespace deuring;

namespace {

py::int_ big(const Int& z) {
    PyObject* obj = PyLong_FromString(z.get_str().c_str(), nullptr, 10);
    if (!obj) throw py::error_already_set();
    return py::reinterpret_steal<py::int_>(obj);
}

py::object frac(const Rat& q) {
    static py::object Fraction = py::module_::import("fractions").attr("Fraction");
    return Fraction(q.get_str());
}

py::list int_list(const std::vector<Int>& v) {
    py::list out;
    for (const Int& z : v) out.append(big(z));
    return out;
}

py::list word_list(const std::vector<u64>& v) {
    py::list out;
    for (u64 x : v) out.append(x);
    return out;
}

py::dict poly_dict(const ModPoly& f) {
    py::dict d;
    d["mod"] = f.m;
    d["coeffs"] = word_list(f.c);
    return d;
}

Int int_from(py::int_ v) {
    return Int(py::str(v).cast<std::string>());
}

py::list series_coeffs(const QSeries& s) {
    py::list out;
    for (i64 n = s.valuation(); n <= s.order(); ++n) out.append(big(s.coeff(n)));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() =
        "Class polynomials, supersingular polynomials, and certified U(p) "
        "congruences between them";

    // translators run newest-first: register the base before the derived class
    // so DomainError reaches Python as the ValueError subclass
    py::register_local_exception<Error>(m, "LibraryError", PyExc_RuntimeError);
    py::register_local_exception<DomainError>(m, "DomainError", PyExc_ValueError);

    m.def(
        "j_coefficients",
        [](i64 order, py::int_ mod) {
            QSeries j = j_series_cached(order, int_from(mod));
            return series_coeffs(j);
        },
        py::arg("order"), py::arg("mod") = py::int_(0),
        "Coefficients of the modular j-function from q^-1 through q^order.");

    m.def(
        "hilbert_class_poly",
        [](i64 D) { return int_list(hilbert_class_poly(D).c); }, py::arg("D"),
        "Integer coefficients (low degree first) of the degree-h(-D) monic "
        "minimal polynomial of the CM j-invariants of discriminant -D.");

    m.def("class_number", &class_number, py::arg("D"));
    m.def("is_fundamental", &is_fundamental, py::arg("D"));
    m.def(
        "hurwitz_class_number", [](i64 m_) { return frac(hurwitz_h(m_)); },
        py::arg("m"));
    m.def(
        "eisenstein_hp", [](i64 D, u64 p) { return frac(eisenstein_hp(D, p)); },
        py::arg("D"), py::arg("p"),
        "H_p(D) = (1 - kronecker(-D, p))/2 * h(-D)/u(D), for fundamental D.");
    m.def(
        "kronecker",
        [](py::int_ a, py::int_ n) { return kronecker(int_from(a), int_from(n)); },
        py::arg("a"), py::arg("n"));

    m.def(
        "supersingular_polynomials",
        [](u64 p) {
            SupersingularData d = ss_polynomials(p);
            py::dict out;
            out["p"] = p;
            out["s_tilde"] = word_list(d.s_tilde.c);
            out["s"] = word_list(d.s.c);
            out["e0"] = d.e0;
            out["e1"] = d.e1;
            py::list roots;
            for (const Fp2& r : d.roots) roots.append(py::make_tuple(r.a, r.b));
            out["roots"] = roots;
            return out;
        },
        py::arg("p"),
        "Reduced and full supersingular polynomials over F_p and the "
        "supersingular j-invariants in F_{p^2} as (a, b) pairs.");

    m.def(
        "up_reduction",
        [](i64 D, u64 p, i64 N) {
            QSeries s = up_reduction(D, p, N);
            py::dict out;
            out["valuation"] = s.valuation();
            out["order"] = s.order();
            out["coeffs"] = series_coeffs(s);
            return out;
        },
        py::arg("D"), py::arg("p"), py::arg("N") = 50,
        "(H_D(j) mod p) | U(p) through q^N.");

    m.def(
        "certify",
        [](i64 D, u64 p, i64 N) {
            CongruenceCertificate c = certify_congruence(D, p, N);
            py::dict out;
            out["D"] = c.D;
            out["p"] = c.p;
            out["class_number"] = c.class_number;
            out["divides"] = c.divisibility_holds;
            out["certified"] = c.certified;
            out["constant"] = c.certified ? py::object(py::bool_(c.is_constant))
                                          : py::object(py::none());
            out["G"] = c.expressible ? py::object(poly_dict(c.g))
                                     : py::object(py::none());
            out["c0"] = c.c0;
            out["verified_through"] = c.verified_through;
            out["observed_valuation"] = c.observed_valuation;
            out["observed"] = word_list(c.observed);
            out["principal_vanishes"] = c.principal_vanishes;
            return out;
        },
        py::arg("D"), py::arg("p"), py::arg("N") = 50,
        "Certify H_D(j)|U(p) = G(j) mod p through q^N; mirrors the CLI JSON.");

    m.def(
        "multiplicity_report",
        [](i64 D, u64 p) {
            MultiplicityReport r = multiplicity_report(D, p);
            py::dict out;
            out["D"] = r.D;
            out["p"] = r.p;
            out["class_number"] = r.class_number;
            out["ss_total"] = r.ss_total;
            py::list rows;
            for (const auto& row : r.roots) {
                py::dict e;
                e["root"] = py::make_tuple(row.root.a, row.root.b);
                e["in_base"] = row.in_base;
                e["multiplicity"] = row.multiplicity;
                rows.append(e);
            }
            out["roots"] = rows;
            return out;
        },
        py::arg("D"), py::arg("p"),
        "Multiplicity of every supersingular invariant in H_D mod p.");

    m.def(
        "survey_family",
        [](u64 p, i64 dmax, i64 N) {
            OmegaSurvey s = survey_family(p, dmax, N);
            py::dict out;
            out["p"] = s.p;
            out["dmax"] = s.dmax;
            out["window"] = s.N;
            out["members"] = s.members;
            out["constant"] = s.constant_members;
            out["polynomial"] = s.polynomial_members;
            out["refused"] = s.refused;
            return out;
        },
        py::arg("p"), py::arg("dmax") = 0, py::arg("N") = 50);

    m.def(
        "scan_surjectivity",
        [](u64 p, int t, i64 dmin, i64 dmax) {
            SurjectivityScan s = scan_surjectivity(p, t, dmin, dmax);
            py::dict out;
            out["p"] = s.p;
            out["t"] = s.t;
            out["qualifying"] = s.qualifying;
            out["exceptions"] = s.exceptions;
            py::list dec;
            for (const auto& row : s.deciles)
                dec.append(py::make_tuple(row.lo, row.hi, row.qualifying, row.exceptions));
            out["deciles"] = dec;
            return out;
        },
        py::arg("p"), py::arg("t"), py::arg("dmin"), py::arg("dmax"),
        "Exceptions to S_p^t | H_D over fundamental non-split D in range.");

    m.def(
        "delta_p",
        [](u64 p, i64 N) {
            RationalJFunction d = delta_p(p, N);
            py::dict out;
            out["p"] = d.p;
            out["numerator"] = poly_dict(d.numerator);
            out["denominator"] = poly_dict(d.denominator);
            out["gcd"] = poly_dict(d.common);
            out["verified_through"] = d.verified_through;
            return out;
        },
        py::arg("p"), py::arg("N") = 50,
        "Numerator and denominator of the degree-lowering correction mod p.");

    m.def(
        "verify_frobenius_expansion",
        [](const std::vector<py::int_>& coeffs, u64 p, i64 N) {
            std::vector<Int> c;
            for (const auto& v : coeffs) c.push_back(int_from(v));
            return verify_frobenius_expansion(IntPoly(std::move(c)), p, N);
        },
        py::arg("coeffs"), py::arg("p"), py::arg("N") = 100,
        "Check s~(j) F(j(pz)) = s~(j) F(j^p) + p F'(j^p) N_p(j) mod p^2.");

    m.def(
        "embedding_numbers",
        [](u64 p, i64 M) {
            EmbeddingTable t = embedding_numbers(maximal_order(p), M);
            py::dict out;
            out["p"] = t.p;
            out["M"] = t.M;
            out["units"] = t.units;
            out["a"] = t.a;
            out["h"] = t.h;
            return out;
        },
        py::arg("p"), py::arg("M"),
        "Theta coefficients of the trace-zero lattice and the optimal "
        "embedding counts h(O_m, R) recovered from them.");

    m.def(
        "unit_count", [](u64 p) { return unit_count(maximal_order(p)); },
        py::arg("p"));

    m.def(
        "deuring_cross_check",
        [](i64 D, u64 p) {
            DeuringReport r = deuring_cross_check(D, p);
            py::dict out;
            out["D"] = r.D;
            out["p"] = r.p;
            out["ramified"] = r.ramified;
            out["class_number"] = r.class_number;
            out["ss_total"] = r.ss_total;
            out["aggregate_ok"] = r.aggregate_ok;
            out["type1"] = r.type1;
            out["mult_at_unique"] = r.mult_at_unique;
            out["embedding_count"] = r.embedding_count;
            out["per_curve_ok"] = r.per_curve_ok;
            return out;
        },
        py::arg("D"), py::arg("p"),
        "Compare H_D mod p root multiplicities with embedding counts.");

    m.attr("__version__") = "0.1.0";
}
