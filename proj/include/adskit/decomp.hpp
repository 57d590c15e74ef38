// Local factorizations of SO(q,2) and their closed-form charts.
//
//   Sekiguchi:  g = ntilde_x a_y h,      h in H (block form, sign +-1)
//   Bruhat:     g = ntilde_x a_y m n,    m in M (Levi block), n in N
//
// CHART CONVENTION.  The charts below are *defined* by the factorizations
// and written in closed form against the library's exponentials.  Published
// row-based extraction formulas for these charts are not invariant under the
// residual factor (right-multiplying by h changes the row-(q+1) sums), so
// they only hold on single-factor elements; the invariant combinations are
// column-based:
//
//   Sekiguchi: den = g[q+1][q+1] - g[q][q+1]   (column q+1 of g applied to
//              the base point; right h-factors only flip its sign)
//              y = 1/|den|, x_mu = g[mu][q+1]/den, sign = sgn(den)
//   Bruhat:    den = g[q][q] - g[q][q+1] - g[q+1][q] + g[q+1][q+1]
//              (the pairing of g with the lightlike vector e_q - e_{q+1},
//              which every m and n fixes);  y = 2/den,
//              x_mu = (g[mu][q+1] - g[mu][q])/den;  in-cell requires den > 0
//
// Both reduce to the published formulas on the single-factor examples
// (identity, a_y, ntilde_x); the relation is the eta-transpose identity
// g^{-1} = eta g^T eta, which exchanges the row and column forms and
// reciprocates y.  Roundtrip exactness over randomized products is the
// defining test.
//
// The cell failure (den = 0, or den <= 0 for Bruhat) is a typed, recoverable
// outcome: the decompositions only cover an open dense subset.  A residual
// that fails its membership test after a *nonzero* denominator would mean a
// convention bug, and throws ConventionError.

#pragma once

#include <adskit/group.hpp>

#include <optional>
#include <stdexcept>

namespace adskit {

struct ConventionError : std::logic_error {
    using std::logic_error::logic_error;
};

template <class T>
struct BulkPoint {
    std::vector<T> x;
    T y{1};
};

template <class T>
struct SekiguchiFactors {
    BulkPoint<T> point;
    Mat<T> h;
    int sign = 1;  // corner entry of h; +1 on the identity component
};

template <class T>
struct BruhatFactors {
    BulkPoint<T> point;
    Mat<T> m;
    std::vector<T> t;  // n = make_n(t)
    Mat<T> n;
};

template <class T>
struct SekiguchiCoords {
    std::vector<T> x;
    T y;
    int sign;
};

namespace detail {
template <class T>
int sign_of(const T& v) {
    if constexpr (std::is_floating_point_v<T>)
        return v > 0 ? 1 : (v < 0 ? -1 : 0);
    else
        return sgn(v);
}
}  // namespace detail

// Chart values only (no residual computed).  nullopt = not in the cell.
template <class T>
std::optional<SekiguchiCoords<T>> sekiguchi_coords(int q, const Mat<T>& g, double tol = 0.0) {
    if (g.size() != q + 2) throw std::invalid_argument("sekiguchi_coords: size mismatch");
    const T den = g(q + 1, q + 1) - g(q, q + 1);
    if (approx_zero(den, tol)) return std::nullopt;
    SekiguchiCoords<T> c{std::vector<T>(q), T(1) / den, detail::sign_of(den)};
    if (c.sign < 0) c.y = -c.y;
    for (int mu = 0; mu < q; ++mu) c.x[mu] = g(mu, q + 1) / den;
    return c;
}

template <class T>
std::optional<SekiguchiFactors<T>> sekiguchi_factorize(int q, const Mat<T>& g, double tol = 0.0) {
    const auto c = sekiguchi_coords(q, g, tol);
    if (!c) return std::nullopt;
    const auto h = inverse_in_group(q, make_dilatation(q, c->y)) *
                   inverse_in_group(q, make_ntilde(q, c->x)) * g;
    const auto chk = is_in_H(q, h, tol);
    if (!chk.ok || chk.sign != c->sign)
        throw ConventionError("sekiguchi_factorize: residual is not in H");
    return SekiguchiFactors<T>{{c->x, c->y}, h, chk.sign};
}

// Chart values only.  nullopt = not in the Bruhat cell (vanishing or
// negative pairing: the dilatation parameter must come out positive).
template <class T>
std::optional<BulkPoint<T>> bruhat_coords(int q, const Mat<T>& g, double tol = 0.0) {
    if (g.size() != q + 2) throw std::invalid_argument("bruhat_coords: size mismatch");
    const T den = g(q, q) - g(q, q + 1) - g(q + 1, q) + g(q + 1, q + 1);
    if (approx_zero(den, tol) || den < T(0)) return std::nullopt;
    BulkPoint<T> p;
    p.y = T(2) / den;
    p.x.resize(q);
    for (int mu = 0; mu < q; ++mu) p.x[mu] = (g(mu, q + 1) - g(mu, q)) / den;
    return p;
}

template <class T>
std::optional<BruhatFactors<T>> bruhat_factorize(int q, const Mat<T>& g, double tol = 0.0) {
    const auto p = bruhat_coords(q, g, tol);
    if (!p) return std::nullopt;
    BruhatFactors<T> f;
    f.point = *p;
    const auto r = inverse_in_group(q, make_dilatation(q, f.point.y)) *
                   inverse_in_group(q, make_ntilde(q, f.point.x)) * g;
    auto chk = is_in_MN(q, r, tol);
    if (!chk.ok) throw ConventionError("bruhat_factorize: residual is not in MN");
    f.m = std::move(chk.m);
    f.t = std::move(chk.t);
    f.n = make_n(q, f.t);
    return f;
}

// --- deliberate cell violators (for failure-path tests) -------------------

// Quarter turn in the (0, q+1) timelike plane: eta-orthogonal, det 1, and
// the Sekiguchi denominator vanishes identically.
inline Mat<Rat> sekiguchi_cell_violator(int q) {
    check_rank(q);
    Mat<Rat> g = Mat<Rat>::identity(q + 2);
    g(0, 0) = 0;
    g(q + 1, q + 1) = 0;
    g(0, q + 1) = -1;
    g(q + 1, 0) = 1;
    return g;
}

// Half turn in the same plane: kills the Bruhat denominator.
inline Mat<Rat> bruhat_cell_violator(int q) {
    check_rank(q);
    Mat<Rat> g = Mat<Rat>::identity(q + 2);
    g(0, 0) = -1;
    g(q + 1, q + 1) = -1;
    return g;
}

// --- hyperboloid embedding -------------------------------------------------
//
// Orbit map xi = ntilde_x a_y . e_{q+1} (the base point is fixed by H up to
// the +-1 corner).  Closed form:
//   xi_mu  = x_mu / y
//   xi_q   = (y^2 - 1 - xsq) / (2y)
//   xi_q+1 = (y^2 + 1 - xsq) / (2y)
// Its eta-norm is identically -1 = <e_{q+1}, e_{q+1}>: the orbit sits on the
// sheet of norm -1, not +1 (the base point is timelike under this metric).

template <class T>
T eta_inner(int q, const std::vector<T>& v, const std::vector<T>& w) {
    if (static_cast<int>(v.size()) != q + 2 || v.size() != w.size())
        throw std::invalid_argument("eta_inner: size mismatch");
    T s = -v[0] * w[0];
    for (int i = 1; i <= q; ++i) s += v[i] * w[i];
    s -= v[q + 1] * w[q + 1];
    return s;
}

template <class T>
std::vector<T> embed_hyperboloid(int q, const BulkPoint<T>& p) {
    detail::check_param(q, p.x, "embed_hyperboloid");
    if (!(p.y > T(0))) throw std::domain_error("embed_hyperboloid: y must be positive");
    const T xsq = lorentz_square(p.x);
    const T half = scalar_from_rat<T>(rat(1, 2));
    std::vector<T> xi(q + 2);
    for (int mu = 0; mu < q; ++mu) xi[mu] = p.x[mu] / p.y;
    xi[q] = half * (p.y * p.y - T(1) - xsq) / p.y;
    xi[q + 1] = half * (p.y * p.y + T(1) - xsq) / p.y;
    return xi;
}

template <class T>
std::vector<T> boundary_limit_coords(const BulkPoint<T>& p) {
    return p.x;
}

// --- point actions ---------------------------------------------------------
//
// Left action of g on the bulk (x, y) through the Sekiguchi chart, and on
// boundary points x through the Bruhat chart.  These move *points*; the
// representation-level actions (which use g^{-1} and carry weight factors)
// live in reps.hpp.  nullopt = image not in the chart's cell.

template <class T>
std::optional<BulkPoint<T>> act_point_bulk(int q, const Mat<T>& g, const BulkPoint<T>& p,
                                           double tol = 0.0) {
    // Only the chart values are needed here; skipping the residual
    // verification keeps the float path stable near the boundary, where
    // the compensating factors have entries of order 1/y.
    const auto w = g * make_ntilde(q, p.x) * make_dilatation(q, p.y);
    const auto c = sekiguchi_coords(q, w, tol);
    if (!c) return std::nullopt;
    return BulkPoint<T>{c->x, c->y};
}

template <class T>
std::optional<std::vector<T>> act_point_boundary(int q, const Mat<T>& g, const std::vector<T>& x,
                                                 double tol = 0.0) {
    const auto w = g * make_ntilde(q, x);
    const auto c = bruhat_coords(q, w, tol);
    if (!c) return std::nullopt;
    return c->x;
}

// Group element applied to an embedded vector (matrix-vector product).
template <class T>
std::vector<T> apply_to_vector(const Mat<T>& g, const std::vector<T>& v) {
    if (g.size() != static_cast<int>(v.size()))
        throw std::invalid_argument("apply_to_vector: size mismatch");
    std::vector<T> out(v.size(), T(0));
    for (int i = 0; i < g.size(); ++i)
        for (int j = 0; j < g.size(); ++j) out[i] += g(i, j) * v[j];
    return out;
}

}  // namespace adskit
