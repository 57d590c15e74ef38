// so(q,2): metric, canonical generators, structure constants, the subalgebra
// catalog used by the factorization charts, weight labels, and the quadratic
// Casimir element.
//
// Index conventions, fixed once for the whole library:
//   * ambient indices A,B run 0..q+1, metric eta = diag(-1,+1,...,+1,-1);
//   * "boundary" indices mu,nu run 0..q-1 (signature (q-1,1) block);
//   * the two distinguished directions are q and q+1.
// Canonical basis X_AB (A<B) in the defining representation:
//   (X_AB)_CD = eta_BC delta_AD - eta_AC delta_BD,
// i.e. entry (A,B) = -eta_AA and entry (B,A) = +eta_BB.  The overall sign is
// not a free choice: it is the unique one for which the bracket table
//   [X_AB, X_CD] = eta_AC X_BD + eta_BD X_AC - eta_AD X_BC - eta_BC X_AD
// holds with these exact coefficients (the opposite sign negates the table).

#pragma once

#include <adskit/matrix.hpp>
#include <adskit/rational.hpp>

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace adskit {

inline void check_rank(int q) {
    if (q < 1) throw std::invalid_argument("rank parameter q must be >= 1");
}

// eta = diag(-1, +1, ..., +1, -1), size (q+2).
inline Mat<Rat> metric(int q) {
    check_rank(q);
    Mat<Rat> eta(q + 2);
    eta(0, 0) = Rat(-1);
    for (int i = 1; i <= q; ++i) eta(i, i) = Rat(1);
    eta(q + 1, q + 1) = Rat(-1);
    return eta;
}

// Diagonal metric entry as a bare rational (avoids building the matrix).
inline Rat eta_diag(int q, int A) {
    if (A < 0 || A > q + 1) throw std::out_of_range("eta_diag: index");
    return (A == 0 || A == q + 1) ? Rat(-1) : Rat(1);
}

struct BasisIndex {
    int a = 0, b = 1;  // canonical: a < b
    friend bool operator==(const BasisIndex&, const BasisIndex&) = default;
    friend auto operator<=>(const BasisIndex&, const BasisIndex&) = default;
};

inline std::vector<BasisIndex> all_basis_indices(int q) {
    check_rank(q);
    std::vector<BasisIndex> out;
    for (int a = 0; a <= q + 1; ++a)
        for (int b = a + 1; b <= q + 1; ++b) out.push_back({a, b});
    return out;
}

inline int algebra_dim(int q) { return (q + 2) * (q + 1) / 2; }

// X_AB for any A != B (X_BA = -X_AB).
inline Mat<Rat> generator(int q, int A, int B) {
    check_rank(q);
    if (A == B || A < 0 || B < 0 || A > q + 1 || B > q + 1)
        throw std::invalid_argument("generator: bad index pair");
    Mat<Rat> X(q + 2);
    X(A, B) = -eta_diag(q, A);
    X(B, A) = eta_diag(q, B);
    return X;
}

inline Mat<Rat> generator(int q, BasisIndex i) { return generator(q, i.a, i.b); }

// Right-hand side of the canonical bracket table for [X_AB, X_CD].
inline Mat<Rat> bracket_table_rhs(int q, BasisIndex ab, BasisIndex cd) {
    const int A = ab.a, B = ab.b, C = cd.a, D = cd.b;
    Mat<Rat> rhs(q + 2);
    const auto add = [&](const Rat& coeff, int P, int Q_) {
        if (coeff == 0 || P == Q_) return;
        rhs = rhs + generator(q, P, Q_) * coeff;
    };
    add(A == C ? eta_diag(q, A) : Rat(0), B, D);
    add(B == D ? eta_diag(q, B) : Rat(0), A, C);
    add(A == D ? -eta_diag(q, A) : Rat(0), B, C);
    add(B == C ? -eta_diag(q, B) : Rat(0), A, D);
    return rhs;
}

// Membership in so(q,2): X^T eta + eta X = 0.
inline bool in_algebra(int q, const Mat<Rat>& X) {
    const Mat<Rat> eta = metric(q);
    return (X.transposed() * eta + eta * X).is_zero();
}

// Coordinates of an algebra element over the canonical basis {X_AB : A<B}.
// Throws if the matrix is not in so(q,2).
inline std::vector<Rat> algebra_coords(int q, const Mat<Rat>& X) {
    if (!in_algebra(q, X)) throw std::invalid_argument("algebra_coords: not in so(q,2)");
    std::vector<Rat> c;
    c.reserve(algebra_dim(q));
    for (const auto& i : all_basis_indices(q)) c.push_back(-eta_diag(q, i.a) * X(i.a, i.b));
    return c;
}

// --- distinguished generator combinations -------------------------------
//
// For mu in 0..q-1:
//   T_mu = X_{mu,q} + X_{mu,q+1}   (translations; abelian)
//   C_mu = X_{mu,q} - X_{mu,q+1}   (special conformal; abelian)
//   D    = X_{q,q+1}               (dilatation weight: [D,T]=T, [D,C]=-C)

inline Mat<Rat> T_generator(int q, int mu) {
    if (mu < 0 || mu >= q) throw std::out_of_range("T_generator: mu");
    return generator(q, mu, q) + generator(q, mu, q + 1);
}

inline Mat<Rat> C_generator(int q, int mu) {
    if (mu < 0 || mu >= q) throw std::out_of_range("C_generator: mu");
    return generator(q, mu, q) - generator(q, mu, q + 1);
}

inline Mat<Rat> D_generator(int q) { return generator(q, q, q + 1); }

// --- exact linear algebra over the canonical basis ----------------------

namespace detail {

// Row-reduce in place; returns rank.  Exact, deterministic.
inline int row_reduce(std::vector<std::vector<Rat>>& rows) {
    if (rows.empty()) return 0;
    const std::size_t ncol = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncol && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        const Rat d = rows[r][c];
        for (std::size_t j = c; j < ncol; ++j) rows[r][j] /= d;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            const Rat f = rows[i][c];
            for (std::size_t j = c; j < ncol; ++j) rows[i][j] -= f * rows[r][j];
        }
        ++r;
    }
    return static_cast<int>(r);
}

inline int rank_of(std::vector<std::vector<Rat>> rows) { return row_reduce(rows); }

}  // namespace detail

// Is v in the row span of basis?  (All vectors in canonical coordinates.)
inline bool in_span(const std::vector<std::vector<Rat>>& basis, const std::vector<Rat>& v) {
    auto rows = basis;
    const int r0 = detail::rank_of(rows);
    rows = basis;
    rows.push_back(v);
    return detail::rank_of(rows) == r0;
}

// --- subalgebra catalog ---------------------------------------------------
//
// Named spaces tied to the two factorizations (all spans of canonical
// generators or of the T/C combinations above):
//   H   stabilizer so(q,1): indices within {0..q}
//   K   "compact" factor: rotations among {1..q} plus X_{0,q+1}
//   Q   its Cartan complement: X_{0,a} and X_{a,q+1}, a in 1..q
//       (NOT closed under the bracket: [Q,Q] lands in K.  Kept in the catalog
//       because the pair (K,Q) is what the charts use; see is_cartan_pair.)
//   A   the dilatation line {D}
//   M   Levi block so(q-1,1): indices within {0..q-1}
//   N   translations {T_mu}, Ntilde special conformal {C_mu}
//   A0  two-dimensional split torus {X_{0,q-1}, D}
//   M0  its centralizer rotations: indices within {1..q-2}
//   N0  {T_mu} plus the lightlike family {-X_{0,a} + X_{a,q-1} : a in 1..q-2}
//   Nt0 {C_mu} plus {-X_{0,a} - X_{a,q-1}}

struct NamedElement {
    std::string name;
    Mat<Rat> matrix;
};

inline std::vector<std::string> subalgebra_names() {
    return {"H", "K", "Q", "A", "M", "N", "Ntilde", "A0", "M0", "N0", "Ntilde0"};
}

inline std::vector<NamedElement> subalgebra_basis(int q, const std::string& name) {
    check_rank(q);
    std::vector<NamedElement> out;
    const auto label = [](const std::string& head, int a, int b) {
        return head + "_" + std::to_string(a) + "," + std::to_string(b);
    };
    if (name == "H") {
        for (int a = 0; a <= q; ++a)
            for (int b = a + 1; b <= q; ++b) out.push_back({label("X", a, b), generator(q, a, b)});
    } else if (name == "K") {
        for (int a = 1; a <= q; ++a)
            for (int b = a + 1; b <= q; ++b) out.push_back({label("X", a, b), generator(q, a, b)});
        out.push_back({label("X", 0, q + 1), generator(q, 0, q + 1)});
    } else if (name == "Q") {
        for (int a = 1; a <= q; ++a) out.push_back({label("X", 0, a), generator(q, 0, a)});
        for (int a = 1; a <= q; ++a)
            out.push_back({label("X", a, q + 1), generator(q, a, q + 1)});
    } else if (name == "A") {
        out.push_back({"D", D_generator(q)});
    } else if (name == "M") {
        for (int a = 0; a < q; ++a)
            for (int b = a + 1; b < q; ++b) out.push_back({label("X", a, b), generator(q, a, b)});
    } else if (name == "N") {
        for (int mu = 0; mu < q; ++mu) out.push_back({"T_" + std::to_string(mu), T_generator(q, mu)});
    } else if (name == "Ntilde") {
        for (int mu = 0; mu < q; ++mu) out.push_back({"C_" + std::to_string(mu), C_generator(q, mu)});
    } else if (name == "A0") {
        if (q < 2) throw std::invalid_argument("A0 needs q >= 2");
        out.push_back({label("X", 0, q - 1), generator(q, 0, q - 1)});
        out.push_back({"D", D_generator(q)});
    } else if (name == "M0") {
        for (int a = 1; a <= q - 2; ++a)
            for (int b = a + 1; b <= q - 2; ++b) out.push_back({label("X", a, b), generator(q, a, b)});
    } else if (name == "N0") {
        for (int mu = 0; mu < q; ++mu) out.push_back({"T_" + std::to_string(mu), T_generator(q, mu)});
        for (int a = 1; a <= q - 2; ++a)
            out.push_back({"Tp_" + std::to_string(a),
                           generator(q, 0, a) * Rat(-1) + generator(q, a, q - 1)});
    } else if (name == "Ntilde0") {
        for (int mu = 0; mu < q; ++mu) out.push_back({"C_" + std::to_string(mu), C_generator(q, mu)});
        for (int a = 1; a <= q - 2; ++a)
            out.push_back({"Cp_" + std::to_string(a),
                           generator(q, 0, a) * Rat(-1) - generator(q, a, q - 1)});
    } else {
        throw std::invalid_argument("subalgebra_basis: unknown name " + name);
    }
    return out;
}

inline int expected_subalgebra_dim(int q, const std::string& name) {
    if (name == "H") return q * (q + 1) / 2;
    if (name == "K") return q * (q - 1) / 2 + 1;
    if (name == "Q") return 2 * q;
    if (name == "A") return 1;
    if (name == "M") return q * (q - 1) / 2;
    if (name == "N" || name == "Ntilde") return q;
    if (name == "A0") return 2;
    if (name == "M0") return std::max(0, (q - 2) * (q - 3) / 2);
    if (name == "N0" || name == "Ntilde0") return q + std::max(0, q - 2);
    throw std::invalid_argument("expected_subalgebra_dim: unknown name " + name);
}

// Closure under the bracket: [b_i, b_j] in span(basis) for all pairs.
inline bool is_closed_under_bracket(int q, const std::vector<NamedElement>& basis) {
    std::vector<std::vector<Rat>> coords;
    coords.reserve(basis.size());
    for (const auto& e : basis) coords.push_back(algebra_coords(q, e.matrix));
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            const auto br = commutator(basis[i].matrix, basis[j].matrix);
            if (!in_span(coords, algebra_coords(q, br))) return false;
        }
    return true;
}

// Cartan-pair relations for (K, Q): [K,K] in K, [K,Q] in Q, [Q,Q] in K,
// and K + Q = so(q,2) as a direct sum.
inline bool is_cartan_pair(int q, const std::vector<NamedElement>& k,
                           const std::vector<NamedElement>& p) {
    std::vector<std::vector<Rat>> ck, cp, call;
    for (const auto& e : k) ck.push_back(algebra_coords(q, e.matrix));
    for (const auto& e : p) cp.push_back(algebra_coords(q, e.matrix));
    call = ck;
    call.insert(call.end(), cp.begin(), cp.end());
    if (detail::rank_of(call) != algebra_dim(q)) return false;
    if (static_cast<int>(ck.size() + cp.size()) != algebra_dim(q)) return false;
    for (const auto& a : k)
        for (const auto& b : k)
            if (!in_span(ck, algebra_coords(q, commutator(a.matrix, b.matrix)))) return false;
    for (const auto& a : k)
        for (const auto& b : p)
            if (!in_span(cp, algebra_coords(q, commutator(a.matrix, b.matrix)))) return false;
    for (const auto& a : p)
        for (const auto& b : p)
            if (!in_span(ck, algebra_coords(q, commutator(a.matrix, b.matrix)))) return false;
    return true;
}

// --- weight labels --------------------------------------------------------
//
// A weight is (delta; lambda_1..lambda_r), r = floor(q/2).  delta is stored
// as an affine form a + b*Delta so the formal parameter survives the mirror
// map delta -> q - delta.  lambda entries are half-integers with a common
// parity; for even q the first entry may be negative (chirality), otherwise
// all entries are nonnegative, and entries increase by absolute value.

struct AffineDelta {
    Rat a{0}, b{0};  // value a + b*Delta
    bool concrete() const { return b == 0; }
    friend bool operator==(const AffineDelta&, const AffineDelta&) = default;
};

struct WeightLabel {
    int q = 1;
    AffineDelta delta;
    std::vector<Rat> lambda;
};

struct WeightCheck {
    bool ok = true;
    std::string reason;
};

inline WeightCheck validate_weight(const WeightLabel& w) {
    const int r = w.q / 2;
    if (static_cast<int>(w.lambda.size()) != r)
        return {false, "lambda must have floor(q/2) entries"};
    bool parity_set = false;
    bool odd_parity = false;
    for (const auto& l : w.lambda) {
        const Rat twice = l * 2;
        if (!is_integer(twice)) return {false, "2*lambda_i must be integers"};
        const bool odd = mpz_class(twice.get_num() % 2) != 0;
        if (!parity_set) {
            parity_set = true;
            odd_parity = odd;
        } else if (odd != odd_parity) {
            return {false, "lambda entries must share parity"};
        }
    }
    for (int i = 0; i + 1 < r; ++i) {
        const Rat lhs = (i == 0 && w.q % 2 == 0) ? rat_abs(w.lambda[0]) : w.lambda[i];
        if (!(lhs <= w.lambda[i + 1])) return {false, "lambda entries must be ordered"};
    }
    if (r > 0) {
        const int first_signed = (w.q % 2 == 0) ? 1 : 0;
        for (int i = first_signed; i < r; ++i)
            if (w.lambda[i] < 0) return {false, "only the first entry (even q) may be negative"};
    }
    return {true, ""};
}

// delta -> q - delta; for even q additionally flip the sign of lambda_1.
inline WeightLabel mirror_weight(const WeightLabel& w) {
    WeightLabel m = w;
    m.delta.a = Rat(w.q) - w.delta.a;
    m.delta.b = -w.delta.b;
    if (w.q % 2 == 0 && !m.lambda.empty()) m.lambda[0] = -m.lambda[0];
    return m;
}

// --- quadratic Casimir ----------------------------------------------------
//
// C2 = sum_{A<B} eta^AA eta^BB X_AB X_AB.  Returned as (coefficient, index)
// terms so every representation backend can assemble it the same way.

struct CasimirTerm {
    Rat coeff;
    BasisIndex idx;  // contributes coeff * X_idx * X_idx
};

inline std::vector<CasimirTerm> casimir2_element(int q) {
    std::vector<CasimirTerm> terms;
    for (const auto& i : all_basis_indices(q))
        terms.push_back({eta_diag(q, i.a) * eta_diag(q, i.b), i});
    return terms;
}

// Casimir of the defining representation, as a matrix (scalar by Schur).
inline Mat<Rat> casimir2_matrix(int q) {
    Mat<Rat> acc(q + 2);
    for (const auto& t : casimir2_element(q)) {
        const auto X = generator(q, t.idx);
        acc = acc + X * X * t.coeff;
    }
    return acc;
}

}  // namespace adskit
