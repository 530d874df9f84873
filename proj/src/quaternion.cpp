#include "deuring/quaternion.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>

#include "deuring/arith.hpp"
#include "deuring/classfield.hpp"
#include "deuring/congruence.hpp"
#include "deuring/supersingular.hpp"

namespace deuring {

namespace {

const Quat kOne{Rat(1), Rat(0), Rat(0), Rat(0)};

bool rat_is_int(const Rat& r) { return r.get_den() == 1; }

Rat make_rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Int fdivq(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// ---------------------------------------------------------------------------
// exact 4x4 linear algebra over Q (row-vector convention: rows are elements)

using Mat4 = std::array<Quat, 4>;

Rat det4(Mat4 m) {
    Rat det(1);
    for (int col = 0; col < 4; ++col) {
        int piv = -1;
        for (int r = col; r < 4; ++r)
            if (m[r][col] != 0) { piv = r; break; }
        if (piv < 0) return Rat(0);
        if (piv != col) { std::swap(m[piv], m[col]); det = -det; }
        det *= m[col][col];
        Rat inv = 1 / m[col][col];
        for (int r = col + 1; r < 4; ++r) {
            if (m[r][col] == 0) continue;
            Rat f = m[r][col] * inv;
            for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

// coordinates c with sum_i c[i] * basis[i] = v, if the basis is invertible
std::optional<Quat> coords_in_basis(const Mat4& basis, const Quat& v) {
    // solve c * B = v by Gaussian elimination on B^T | v^T
    std::array<std::array<Rat, 5>, 4> m;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) m[r][c] = basis[c][r];  // B^T
        m[r][4] = v[r];
    }
    for (int col = 0; col < 4; ++col) {
        int piv = -1;
        for (int r = col; r < 4; ++r)
            if (m[r][col] != 0) { piv = r; break; }
        if (piv < 0) return std::nullopt;
        std::swap(m[piv], m[col]);
        Rat inv = 1 / m[col][col];
        for (int c = col; c < 5; ++c) m[col][c] *= inv;
        for (int r = 0; r < 4; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rat f = m[r][col];
            for (int c = col; c < 5; ++c) m[r][c] -= f * m[col][c];
        }
    }
    Quat out;
    for (int r = 0; r < 4; ++r) out[r] = m[r][4];
    return out;
}

bool lattice_contains(const Mat4& basis, const Quat& v) {
    auto c = coords_in_basis(basis, v);
    if (!c) return false;
    for (const Rat& x : *c)
        if (!rat_is_int(x)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Hermite normal form of a set of generators (rows), exact

void row_submul(std::array<Int, 4>& a, const std::array<Int, 4>& b, const Int& q) {
    for (int c = 0; c < 4; ++c) a[c] -= q * b[c];
}

std::vector<std::array<Int, 4>> hnf_rows(std::vector<std::array<Int, 4>> rows) {
    size_t r = 0;
    for (int col = 0; col < 4 && r < rows.size(); ++col) {
        while (true) {
            size_t best = SIZE_MAX;
            for (size_t i = r; i < rows.size(); ++i)
                if (rows[i][col] != 0 &&
                    (best == SIZE_MAX ||
                     mpz_cmpabs(rows[i][col].get_mpz_t(), rows[best][col].get_mpz_t()) < 0))
                    best = i;
            if (best == SIZE_MAX) break;
            std::swap(rows[r], rows[best]);
            bool cleared = true;
            for (size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                row_submul(rows[i], rows[r], fdivq(rows[i][col], rows[r][col]));
                if (rows[i][col] != 0) cleared = false;
            }
            if (cleared) break;
        }
        if (rows[r][col] != 0) {
            if (rows[r][col] < 0)
                for (int c = 0; c < 4; ++c) rows[r][c] = -rows[r][c];
            for (size_t i = 0; i < r; ++i)
                row_submul(rows[i], rows[r], fdivq(rows[i][col], rows[r][col]));
            ++r;
        }
    }
    rows.resize(r);
    return rows;
}

// canonical HNF basis of the lattice generated by `gens` (may have rank < 4)
std::vector<Quat> lattice_hnf(const std::vector<Quat>& gens) {
    Int den(1);
    for (const Quat& g : gens)
        for (const Rat& x : g) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    std::vector<std::array<Int, 4>> rows;
    rows.reserve(gens.size());
    for (const Quat& g : gens) {
        std::array<Int, 4> row;
        for (int c = 0; c < 4; ++c) {
            Rat s = g[c] * den;
            row[c] = s.get_num();  // denominator is 1 by choice of den
        }
        rows.push_back(std::move(row));
    }
    rows = hnf_rows(std::move(rows));
    std::vector<Quat> out(rows.size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (int c = 0; c < 4; ++c) out[i][c] = make_rat(rows[i][c], den);
    for (auto& q : out)
        for (auto& x : q) x.canonicalize();
    return out;
}

bool same_lattice(const std::vector<Quat>& a, const std::vector<Quat>& b) {
    return a == b;  // both in canonical HNF
}

// ---------------------------------------------------------------------------
// orders

Mat4 to_mat(const std::vector<Quat>& b) {
    if (b.size() != 4) throw InternalInconsistency("quaternion basis must have rank 4");
    return Mat4{b[0], b[1], b[2], b[3]};
}

// reduced discriminant: |det trd(b_i conj b_j)| = disc^2
Int reduced_disc(const QuaternionAlgebra& A, const Mat4& basis) {
    Mat4 m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Quat prod = qa_mul(A, basis[i], qa_conj(basis[j]));
            m[i][j] = qa_trd(prod);
        }
    Rat d = det4(m);
    if (d < 0) d = -d;
    if (!rat_is_int(d))
        throw InternalInconsistency("reduced discriminant of a non-integral lattice");
    Int d2 = d.get_num();
    Int root, rem;
    mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), d2.get_mpz_t());
    if (rem != 0)
        throw InternalInconsistency("trace form determinant is not a perfect square");
    return root;
}

// smallest multiplicatively closed lattice containing gens (with 1), if it
// stabilizes to an order within a few rounds
std::optional<std::vector<Quat>> close_ring(const QuaternionAlgebra& A, std::vector<Quat> gens) {
    gens.push_back(kOne);
    std::vector<Quat> cur = lattice_hnf(gens);
    for (int round = 0; round < 8; ++round) {
        if (cur.size() != 4) return std::nullopt;
        std::vector<Quat> ext = cur;
        for (const Quat& a : cur)
            for (const Quat& b : cur) ext.push_back(qa_mul(A, a, b));
        std::vector<Quat> nxt = lattice_hnf(ext);
        if (nxt.size() != 4) return std::nullopt;
        if (same_lattice(nxt, cur)) {
            Mat4 m = to_mat(cur);
            if (!lattice_contains(m, kOne)) return std::nullopt;
            for (const Quat& b : cur)
                if (!rat_is_int(qa_trd(b)) || !rat_is_int(qa_nrd(A, b))) return std::nullopt;
            return cur;
        }
        cur = nxt;
    }
    return std::nullopt;
}

std::vector<Int> small_prime_factors(Int n) {
    std::vector<Int> out;
    for (Int q(2); q * q <= n; q += 1)
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    if (n > 1) out.push_back(n);
    return out;
}

// ---------------------------------------------------------------------------
// exact-but-float-bounded quadratic form enumeration

// Q(c) = c^T G c with G positive definite d x d (entries fit in i64);
// calls visit(value) for every c with Q(c) <= bound, one of each +-pair,
// excluding c = 0.
template <int d, typename Visit>
void enumerate_form(const std::array<std::array<i64, d>, d>& G, i64 bound, Visit visit) {
    // float Cholesky for box bounds, exact integer evaluation as the filter
    std::array<std::array<double, d>, d> g;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g[i][j] = double(G[i][j]);
    // LDL^T: g overwritten, diag[i] > 0 because G is positive definite
    std::array<double, d> diag;
    std::array<std::array<double, d>, d> u{};
    for (int i = 0; i < d; ++i) {
        double s = g[i][i];
        for (int k = 0; k < i; ++k) s -= diag[k] * u[k][i] * u[k][i];
        diag[i] = s;
        if (!(s > 0)) throw InternalInconsistency("norm form is not positive definite");
        for (int j = i + 1; j < d; ++j) {
            double t = g[i][j];
            for (int k = 0; k < i; ++k) t -= diag[k] * u[k][i] * u[k][j];
            u[i][j] = t / s;
        }
    }
    std::array<i64, d> c{};
    auto exact_value = [&](void) -> i64 {
        i64 v = 0;
        for (int i = 0; i < d; ++i) {
            v += G[i][i] * c[i] * c[i];
            for (int j = i + 1; j < d; ++j) v += 2 * G[i][j] * c[i] * c[j];
        }
        return v;
    };
    // iterate c[d-1] >= 0; for each level compute a safe float box and filter
    std::function<void(int)> rec = [&](int level) {
        if (level < 0) {
            bool nonzero = false;
            for (int i = 0; i < d; ++i) nonzero |= (c[i] != 0);
            if (!nonzero) return;
            i64 v = exact_value();
            if (v <= bound) visit(v);
            return;
        }
        // center of the box at this level given the outer choices
        double center = 0;
        for (int j = level + 1; j < d; ++j) center -= u[level][j] * double(c[j]);
        // remaining budget estimate (float); slack of 2 covers rounding
        double rem = double(bound);
        for (int i = level + 1; i < d; ++i) {
            double t = double(c[i]);
            for (int j = i + 1; j < d; ++j) t += u[i][j] * double(c[j]);
            rem -= diag[i] * t * t;
        }
        if (rem < -1.0) return;
        double halfwidth = std::sqrt(std::max(0.0, rem) / diag[level]) + 2.0;
        i64 lo = i64(std::floor(center - halfwidth));
        i64 hi = i64(std::ceil(center + halfwidth));
        for (c[level] = lo; c[level] <= hi; ++c[level]) rec(level - 1);
    };
    rec(d - 1);
}

}  // namespace

// ---------------------------------------------------------------------------
// algebra arithmetic

Quat qa_mul(const QuaternionAlgebra& A, const Quat& x, const Quat& y) {
    Rat a(A.alpha), b(A.beta);
    Quat z;
    z[0] = x[0] * y[0] - a * x[1] * y[1] - b * x[2] * y[2] - a * b * x[3] * y[3];
    z[1] = x[0] * y[1] + x[1] * y[0] + b * (x[2] * y[3] - x[3] * y[2]);
    z[2] = x[0] * y[2] + x[2] * y[0] + a * (x[3] * y[1] - x[1] * y[3]);
    z[3] = x[0] * y[3] + x[3] * y[0] + x[1] * y[2] - x[2] * y[1];
    return z;
}

Quat qa_conj(const Quat& x) { return Quat{x[0], -x[1], -x[2], -x[3]}; }

Rat qa_trd(const Quat& x) { return x[0] * 2; }

Rat qa_nrd(const QuaternionAlgebra& A, const Quat& x) {
    Rat a(A.alpha), b(A.beta);
    return x[0] * x[0] + a * x[1] * x[1] + b * x[2] * x[2] + a * b * x[3] * x[3];
}

// ---------------------------------------------------------------------------
// Hilbert symbols and algebra construction

namespace {
int eps4(const Int& u) { return mpz_fdiv_ui(u.get_mpz_t(), 4) == 1 ? 0 : 1; }  // (u-1)/2 mod 2
int omega8(const Int& u) {                                                     // (u^2-1)/8 mod 2
    u64 r = mpz_fdiv_ui(u.get_mpz_t(), 8);
    return (r == 1 || r == 7) ? 0 : 1;
}
}  // namespace

int hilbert_symbol(const Int& a, const Int& b, const Int& v) {
    if (a == 0 || b == 0) throw DomainError("hilbert_symbol: arguments must be nonzero");
    if (v == 0) return (a < 0 && b < 0) ? -1 : 1;
    if (v < 2) throw DomainError("hilbert_symbol: place must be prime or 0");
    Int u = a, w = b;
    long va = 0, vb = 0;
    while (u % v == 0) { u /= v; ++va; }
    while (w % v == 0) { w /= v; ++vb; }
    if (v == 2) {
        int e = (eps4(u) * eps4(w) + int(va % 2) * omega8(w) + int(vb % 2) * omega8(u)) % 2;
        return e ? -1 : 1;
    }
    int e = int(va % 2) * int(vb % 2) * eps4(v);
    int s = e ? -1 : 1;
    if (vb % 2) s *= kronecker(u, v);
    if (va % 2) s *= kronecker(w, v);
    return s;
}

QuaternionAlgebra build_algebra(u64 p) {
    QuaternionAlgebra A;
    A.p = p;
    if (p == 2) {
        A.alpha = 1;
        A.beta = 1;
    } else if (p % 4 == 3) {
        A.alpha = 1;
        A.beta = p;
    } else if (p % 8 == 5) {
        A.alpha = 2;
        A.beta = p;
    } else {
        A.alpha = 0;
        for (u64 q = 3; q <= 1000; q += 4) {
            bool prime = q > 1;
            for (u64 t = 2; t * t <= q; ++t)
                if (q % t == 0) { prime = false; break; }
            if (!prime) continue;
            if (kronecker(Int(q), Int(p)) == -1) {
                A.alpha = q;
                break;
            }
        }
        if (A.alpha == 0)
            throw ConstructionFailed("no auxiliary prime <= 1000 found for the algebra");
        A.beta = p;
    }

    // certify: <-alpha, -beta> ramifies exactly at p and infinity
    if (hilbert_symbol(-A.alpha, -A.beta, Int(0)) != -1)
        throw ConstructionFailed("algebra is not definite");
    std::vector<Int> places = {Int(2), Int(p)};
    for (const Int& q : small_prime_factors(A.alpha * A.beta)) places.push_back(q);
    std::sort(places.begin(), places.end());
    places.erase(std::unique(places.begin(), places.end()), places.end());
    for (const Int& v : places) {
        int want = (v == Int(p)) ? -1 : 1;
        if (hilbert_symbol(-A.alpha, -A.beta, v) != want)
            throw ConstructionFailed("ramification certificate failed at a finite place");
    }
    return A;
}

// ---------------------------------------------------------------------------
// maximal orders

namespace {

QuaternionOrder maximal_order_uncached(u64 p) {
    QuaternionAlgebra A = build_algebra(p);
    std::vector<Quat> basis = lattice_hnf({kOne,
                                           Quat{Rat(0), Rat(1), Rat(0), Rat(0)},
                                           Quat{Rat(0), Rat(0), Rat(1), Rat(0)},
                                           Quat{Rat(0), Rat(0), Rat(0), Rat(1)}});
    Int disc = reduced_disc(A, to_mat(basis));
    for (int guard = 0; disc != Int(p); ++guard) {
        if (guard > 64) throw SaturationStalled("saturation did not terminate");
        if (disc % p != 0)
            throw SaturationStalled("discriminant lost the ramified prime");
        Int defect = disc / Int(p);
        bool improved = false;
        for (const Int& lz : small_prime_factors(defect)) {
            u64 l = lz.get_ui();
            std::array<u64, 4> c{};
            // all coefficient vectors in [0, l)^4 except zero
            for (u64 code = 1; code < l * l * l * l && !improved; ++code) {
                u64 t = code;
                for (int i = 0; i < 4; ++i) { c[i] = t % l; t /= l; }
                Quat x{Rat(0), Rat(0), Rat(0), Rat(0)};
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j) x[j] += Rat(c[i]) * basis[i][j];
                for (auto& coord : x) coord /= Rat(l);
                if (!rat_is_int(qa_trd(x)) || !rat_is_int(qa_nrd(A, x))) continue;
                std::vector<Quat> gens = basis;
                gens.push_back(x);
                auto closed = close_ring(A, gens);
                if (!closed) continue;
                Int d2 = reduced_disc(A, to_mat(*closed));
                if (d2 < disc && d2 % p == 0) {
                    basis = *closed;
                    disc = d2;
                    improved = true;
                }
            }
            if (improved) break;
        }
        if (!improved) throw SaturationStalled("no local enlargement found");
    }
    QuaternionOrder R;
    R.alg = A;
    std::copy_n(basis.begin(), 4, R.basis.begin());
    R.discriminant = disc;
    return R;
}

std::map<u64, QuaternionOrder> g_order_memo;
std::mutex g_order_mutex;

}  // namespace

QuaternionOrder maximal_order(u64 p) {
    std::lock_guard<std::mutex> lock(g_order_mutex);
    auto it = g_order_memo.find(p);
    if (it != g_order_memo.end()) return it->second;
    QuaternionOrder R = maximal_order_uncached(p);
    g_order_memo.emplace(p, R);
    return R;
}

// ---------------------------------------------------------------------------
// the inseparable ideal

std::array<Quat, 4> inseparable_ideal(const QuaternionOrder& R) {
    const u64 p = R.alg.p;
    const Mat4& B = R.basis;

    // pairing trd(b_i conj b_j) mod p
    std::array<std::array<u64, 4>, 4> M;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Rat t = qa_trd(qa_mul(R.alg, R.basis[i], qa_conj(R.basis[j])));
            if (!rat_is_int(t)) throw IdealCheckFailed("trace pairing is not integral");
            M[i][j] = mpz_fdiv_ui(t.get_num_mpz_t(), p);
        }

    // kernel of M over F_p (row vectors v with v M = 0; M symmetric)
    std::array<std::array<u64, 8>, 4> aug{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) aug[i][j] = M[i][j];
        aug[i][4 + i] = 1;
    }
    int rank = 0;
    for (int col = 0; col < 4 && rank < 4; ++col) {
        int piv = -1;
        for (int r = rank; r < 4; ++r)
            if (aug[r][col] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(aug[piv], aug[rank]);
        u64 inv = mod_inverse(aug[rank][col], p);
        for (int c = 0; c < 8; ++c) aug[rank][c] = mul_mod(aug[rank][c], inv, p);
        for (int r = 0; r < 4; ++r) {
            if (r == rank || aug[r][col] == 0) continue;
            u64 f = aug[r][col];
            for (int c = 0; c < 8; ++c)
                aug[r][c] = (aug[r][c] + (p - mul_mod(f, aug[rank][c], p))) % p;
        }
        ++rank;
    }
    if (rank != 2)
        throw IdealCheckFailed("norm-form kernel mod p does not have dimension 2");

    std::vector<Quat> gens;
    for (int r = rank; r < 4; ++r) {  // rows of the inverse part span the kernel
        Quat v{Rat(0), Rat(0), Rat(0), Rat(0)};
        for (int i = 0; i < 4; ++i)
            for (int c = 0; c < 4; ++c) v[c] += Rat(aug[r][4 + i]) * R.basis[i][c];
        gens.push_back(v);
    }
    for (int i = 0; i < 4; ++i) {
        Quat v = R.basis[i];
        for (auto& x : v) x *= Rat(p);
        gens.push_back(v);
    }
    std::vector<Quat> pi = lattice_hnf(gens);
    if (pi.size() != 4) throw IdealCheckFailed("ideal lattice has the wrong rank");

    // index [R : pi] = p^2
    Mat4 coords;
    for (int i = 0; i < 4; ++i) {
        auto c = coords_in_basis(B, pi[i]);
        if (!c) throw IdealCheckFailed("ideal basis is not in the order");
        coords[i] = *c;
    }
    Rat idx = det4(coords);
    if (idx < 0) idx = -idx;
    if (idx != Rat(Int(p) * Int(p)))
        throw IdealCheckFailed("ideal does not have index p^2");

    // norms divisible by p; two-sidedness; pi^2 = pR
    for (const Quat& w : pi) {
        Rat n = qa_nrd(R.alg, w);
        if (!rat_is_int(n) || n.get_num() % p != 0)
            throw IdealCheckFailed("ideal element with norm not divisible by p");
    }
    for (const Quat& b : R.basis)
        for (const Quat& w : pi)
            if (!lattice_contains(to_mat(pi), qa_mul(R.alg, b, w)) ||
                !lattice_contains(to_mat(pi), qa_mul(R.alg, w, b)))
                throw IdealCheckFailed("ideal is not two-sided");
    std::vector<Quat> sq;
    for (const Quat& a : pi)
        for (const Quat& b : pi) sq.push_back(qa_mul(R.alg, a, b));
    std::vector<Quat> pr;
    for (const Quat& b : R.basis) {
        Quat v = b;
        for (auto& x : v) x *= Rat(p);
        pr.push_back(v);
    }
    if (!same_lattice(lattice_hnf(sq), lattice_hnf(pr)))
        throw IdealCheckFailed("ideal squared is not p times the order");

    std::array<Quat, 4> out;
    std::copy_n(pi.begin(), 4, out.begin());
    return out;
}

// ---------------------------------------------------------------------------
// the trace-zero lattice and its theta series

TraceZeroLattice trace_zero_lattice(const QuaternionOrder& R) {
    std::vector<Quat> gens = {kOne};
    for (const Quat& b : R.basis) {
        Quat v = b;
        for (auto& x : v) x *= Rat(2);
        gens.push_back(v);
    }
    std::vector<Quat> zplus2r = lattice_hnf(gens);
    if (zplus2r.size() != 4)
        throw InternalInconsistency("Z + 2R does not have rank 4");
    // in HNF the first coordinate (coefficient of 1) is pivoted by row 0;
    // rows 1..3 have first coordinate 0, i.e. reduced trace 0
    for (int i = 1; i < 4; ++i)
        if (zplus2r[i][0] != 0)
            throw InternalInconsistency("trace-zero rows of the HNF are not trace-free");

    TraceZeroLattice L;
    L.alg = R.alg;
    for (int i = 0; i < 3; ++i) L.basis[i] = zplus2r[i + 1];

    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            // polarization of nrd: B(x,y) = trd(x conj y)/2
            Rat g = qa_trd(qa_mul(R.alg, L.basis[i], qa_conj(L.basis[j]))) / 2;
            if (!rat_is_int(g))
                throw InternalInconsistency("trace-zero Gram matrix is not integral");
            L.gram[i][j] = g.get_num();
        }
    // det of the 3x3 Gram
    const auto& g = L.gram;
    L.det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
            g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
            g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
    return L;
}

std::vector<i64> theta_coefficients(const TraceZeroLattice& L, i64 M) {
    if (M < 0) throw DomainError("theta_coefficients: negative bound");
    std::array<std::array<i64, 3>, 3> G;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (!L.gram[i][j].fits_slong_p())
                throw DomainError("theta_coefficients: Gram entries too large");
            G[i][j] = L.gram[i][j].get_si();
        }
    std::vector<i64> a(size_t(M) + 1, 0);
    a[0] = 1;
    enumerate_form<3>(G, M, [&](i64 v) {
        if (v >= 1) a[size_t(v)] += 1;
    });
    return a;
}

i64 unit_count(const QuaternionOrder& R) {
    // 2*nrd on the order's basis is an integral quadratic form
    std::array<std::array<i64, 4>, 4> G;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Rat t = qa_trd(qa_mul(R.alg, R.basis[i], qa_conj(R.basis[j])));
            if (!rat_is_int(t))
                throw InternalInconsistency("unit_count: trace pairing not integral");
            if (!t.get_num().fits_slong_p())
                throw DomainError("unit_count: pairing entries too large");
            G[i][j] = t.get_num().get_si();
        }
    i64 units = 0;
    enumerate_form<4>(G, 2, [&](i64 v) {
        if (v == 2) units += 1;  // 2*nrd == 2
    });
    return units;
}

// ---------------------------------------------------------------------------
// embedding numbers and the cross-check

EmbeddingTable embedding_numbers(const QuaternionOrder& R, i64 M) {
    EmbeddingTable T;
    T.p = R.alg.p;
    T.M = M;
    T.units = unit_count(R);
    T.a = theta_coefficients(trace_zero_lattice(R), M);
    T.h.assign(size_t(M) + 1, 0);
    for (i64 m = 1; m <= M; ++m) {
        if (!is_valid_disc(m)) {
            if (T.a[size_t(m)] != 0)
                throw InternalInconsistency("theta coefficient nonzero at an invalid discriminant");
            continue;
        }
        // a(m) = (units/2) * sum_{f^2 | m} h(m/f^2) / u(m/f^2)
        Rat sum = make_rat(Int(2 * T.a[size_t(m)]), Int(T.units));
        for (i64 f = 2; f * f <= m; ++f) {
            if (m % (f * f) != 0) continue;
            i64 m0 = m / (f * f);
            if (!is_valid_disc(m0)) continue;
            sum -= make_rat(Int(T.h[size_t(m0)]), Int(units_half(m0)));
        }
        Rat h = sum * units_half(m);
        if (!rat_is_int(h) || h < 0)
            throw InversionNonIntegral("embedding count is not a nonnegative integer");
        T.h[size_t(m)] = i64(h.get_num().get_si());
        auto [f0, d0] = fundamental_part(m);
        (void)f0;
        if (kronecker(Int(-d0), Int(T.p)) == 1 && T.h[size_t(m)] != 0)
            throw InternalInconsistency("nonzero embedding count for a split field");
    }
    return T;
}

DeuringReport deuring_cross_check(i64 D, u64 p) {
    if (!is_valid_disc(D) || !is_fundamental(D))
        throw DomainError("deuring_cross_check: need a fundamental discriminant");
    int kr = kronecker(Int(-D), Int(p));
    if (kr == 1) throw DomainError("deuring_cross_check: split prime");
    QuaternionOrder R = maximal_order(p);
    EmbeddingTable T = embedding_numbers(R, D);

    DeuringReport rep;
    rep.D = D;
    rep.p = p;
    rep.ramified = (kr == 0);
    rep.embedding_count = T.h[size_t(D)];

    MultiplicityReport mr = multiplicity_report(D, p);
    rep.class_number = mr.class_number;
    rep.ss_total = mr.ss_total;
    rep.aggregate_ok = (rep.ss_total == rep.class_number);
    rep.type1 = (mr.roots.size() == 1);
    if (rep.type1) {
        rep.mult_at_unique = mr.roots[0].multiplicity;
        // eps = 1 at the ramified prime, 1/2 otherwise
        Rat lhs(rep.mult_at_unique);
        Rat rhs = rep.ramified ? Rat(rep.embedding_count) : make_rat(Int(rep.embedding_count), Int(2));
        rep.per_curve_ok = (lhs == rhs);
    }
    if (!rep.aggregate_ok)
        throw CrossCheckFailed("supersingular multiplicities do not sum to the class number");
    if (!rep.per_curve_ok)
        throw CrossCheckFailed("embedding count disagrees with the root multiplicity");
    return rep;
}

std::vector<DeuringReport> deuring_scan(u64 p, i64 dmax) {
    QuaternionOrder R = maximal_order(p);
    EmbeddingTable T = embedding_numbers(R, dmax);
    std::vector<DeuringReport> out;
    for (i64 D = 3; D <= dmax; ++D) {
        if (!is_valid_disc(D) || !is_fundamental(D)) continue;
        int kr = kronecker(Int(-D), Int(p));
        if (kr == 1) continue;
        DeuringReport rep;
        rep.D = D;
        rep.p = p;
        rep.ramified = (kr == 0);
        rep.embedding_count = T.h[size_t(D)];
        MultiplicityReport mr = multiplicity_report(D, p);
        rep.class_number = mr.class_number;
        rep.ss_total = mr.ss_total;
        rep.aggregate_ok = (rep.ss_total == rep.class_number);
        rep.type1 = (mr.roots.size() == 1);
        if (rep.type1) {
            rep.mult_at_unique = mr.roots[0].multiplicity;
            Rat lhs(rep.mult_at_unique);
            Rat rhs = rep.ramified ? Rat(rep.embedding_count) : make_rat(Int(rep.embedding_count), Int(2));
            rep.per_curve_ok = (lhs == rhs);
        }
        if (!rep.aggregate_ok)
            throw CrossCheckFailed("supersingular multiplicities do not sum to the class number");
        if (!rep.per_curve_ok)
            throw CrossCheckFailed("embedding count disagrees with the root multiplicity");
        out.push_back(rep);
    }
    return out;
}

}  // namespace deuring
