// Group action on boundary and bulk function spaces, evaluated pointwise.
//
// Boundary functions transform with a weight prefactor:
//
//   (g . f)(x) = yhat^Delta f(x'),   (x', yhat) = Bruhat chart of g^-1 n~_x.
//
// The mapped point x' is exactly the point action of g (conjugating the
// chart by the inverse turns the left coset action into a pullback), and
// the dilatation factor yhat carries the conformal weight: for g = a_c the
// formula collapses to c^-Delta f(x / c).  Bulk functions are scalars,
// (g . F)(x, y) = F(g^-1 . (x, y)), no prefactor.  Both actions are partial
// maps: nullopt marks a point carried out of the chart by g.
//
// The flow-derivative helpers differentiate a one-parameter action
// numerically; the realization layer's operators are their exact
// counterparts, and the tests compare the two on concrete points.

#pragma once

#include <adskit/decomp.hpp>
#include <adskit/diffop.hpp>
#include <adskit/poly.hpp>
#include <adskit/reps.hpp>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

namespace adskit {

namespace detail {

// A boundary function may use only the x variables; a bulk function may also
// use y.  Delta and the cone variables never appear in concrete functions.
inline void check_function_vars(const VarTable& vt, const Poly& f, bool allow_y,
                                const char* who) {
    for (int v = vt.y() + (allow_y ? 1 : 0); v < vt.nvars(); ++v)
        if (f.degree(v) > 0)
            throw std::invalid_argument(std::string(who) +
                                        ": function uses a non-coordinate variable");
}

inline double pow_double(double base, int e) {
    double acc = 1;
    for (int i = 0; i < e; ++i) acc *= base;
    return acc;
}

}  // namespace detail

// Numeric evaluation of an exact polynomial at a double point (all nvars
// slots, Delta included).
inline double poly_eval_double(const Poly& f, const std::vector<double>& point) {
    if (static_cast<int>(point.size()) != f.nvars())
        throw std::invalid_argument("poly_eval_double: point arity mismatch");
    double acc = 0;
    for (const auto& [e, c] : f.terms()) {
        double t = rat_double(c);
        for (std::size_t v = 0; v < point.size(); ++v)
            if (e[v] > 0) t *= detail::pow_double(point[v], e[v]);
        acc += t;
    }
    return acc;
}

// --- boundary action -------------------------------------------------------

// Exact value of (g . f)(x) for an integer weight.  nullopt: g^-1 carries x
// out of the boundary chart.
inline std::optional<Rat> boundary_action_value(int q, const Mat<Rat>& g, long delta,
                                                const Poly& f, const std::vector<Rat>& x) {
    const VarTable vt(q);
    detail::check_function_vars(vt, f, false, "boundary_action_value");
    if (static_cast<int>(x.size()) != q)
        throw std::invalid_argument("boundary_action_value: point arity mismatch");
    const auto c = bruhat_coords(q, inverse_in_group(q, g) * make_ntilde(q, x));
    if (!c) return std::nullopt;
    std::vector<Rat> point(vt.nvars(), Rat(0));
    for (int mu = 0; mu < q; ++mu) point[vt.x(mu)] = c->x[mu];
    return rat_pow(c->y, delta) * f.evaluate(point);
}

// Float overload: arbitrary real weight.
inline std::optional<double> boundary_action_value(int q, const Mat<double>& g, double delta,
                                                   const Poly& f, const std::vector<double>& x,
                                                   double tol = 1e-12) {
    const VarTable vt(q);
    detail::check_function_vars(vt, f, false, "boundary_action_value");
    if (static_cast<int>(x.size()) != q)
        throw std::invalid_argument("boundary_action_value: point arity mismatch");
    const auto c = bruhat_coords(q, inverse_in_group(q, g) * make_ntilde(q, x), tol);
    if (!c) return std::nullopt;
    std::vector<double> point(vt.nvars(), 0.0);
    for (int mu = 0; mu < q; ++mu) point[vt.x(mu)] = c->x[mu];
    return std::pow(c->y, delta) * poly_eval_double(f, point);
}

// --- bulk action ------------------------------------------------------------

inline std::optional<Rat> bulk_action_value(int q, const Mat<Rat>& g, const Poly& F,
                                            const std::vector<Rat>& x, const Rat& y) {
    const VarTable vt(q);
    detail::check_function_vars(vt, F, true, "bulk_action_value");
    const auto p = act_point_bulk(q, inverse_in_group(q, g), BulkPoint<Rat>{x, y});
    if (!p) return std::nullopt;
    std::vector<Rat> point(vt.nvars(), Rat(0));
    for (int mu = 0; mu < q; ++mu) point[vt.x(mu)] = p->x[mu];
    point[vt.y()] = p->y;
    return F.evaluate(point);
}

inline std::optional<double> bulk_action_value(int q, const Mat<double>& g, const Poly& F,
                                               const std::vector<double>& x, double y,
                                               double tol = 1e-12) {
    const VarTable vt(q);
    detail::check_function_vars(vt, F, true, "bulk_action_value");
    const auto p = act_point_bulk(q, inverse_in_group(q, g), BulkPoint<double>{x, y}, tol);
    if (!p) return std::nullopt;
    std::vector<double> point(vt.nvars(), 0.0);
    for (int mu = 0; mu < q; ++mu) point[vt.x(mu)] = p->x[mu];
    point[vt.y()] = p->y;
    return poly_eval_double(F, point);
}

// --- flow derivatives -------------------------------------------------------

// d/dt (exp(tZ) . f)(x) at t = 0, by central difference.  nullopt if either
// sample point falls outside the chart.
inline std::optional<double> boundary_flow_derivative(int q, const Mat<Rat>& Z, double delta,
                                                      const Poly& f,
                                                      const std::vector<double>& x,
                                                      double step = 1e-4) {
    const Mat<double> zd = to_double(Z);
    const auto plus = boundary_action_value(q, mat_exp(zd * step), delta, f, x);
    const auto minus = boundary_action_value(q, mat_exp(zd * (-step)), delta, f, x);
    if (!plus || !minus) return std::nullopt;
    return (*plus - *minus) / (2 * step);
}

inline std::optional<double> bulk_flow_derivative(int q, const Mat<Rat>& Z, const Poly& F,
                                                  const std::vector<double>& x, double y,
                                                  double step = 1e-4) {
    const Mat<double> zd = to_double(Z);
    const auto plus = bulk_action_value(q, mat_exp(zd * step), F, x, y);
    const auto minus = bulk_action_value(q, mat_exp(zd * (-step)), F, x, y);
    if (!plus || !minus) return std::nullopt;
    return (*plus - *minus) / (2 * step);
}

// --- the action / realization dictionary -------------------------------------
//
// Differentiating the pointwise action along exp(tZ) does not reproduce
// realize(Z) itself: the charts parametrize cosets through the *opposite*
// unipotent factor, so the flow of Z matches the realization of Z conjugated
// by a fixed reflection J = diag(1, -1, ..., -1, 1, -1).  On generators the
// twist reads D -> -D, T_mu -> -eta_mumu C_mu, C_mu -> -eta_mumu T_mu,
// X_0a -> -X_0a, X_ab -> X_ab.  The tests measure this dictionary against
// every sign alternative rather than assuming it.

inline Mat<Rat> twist_reflection(int q) {
    Mat<Rat> j(q + 2);
    for (int a = 0; a <= q + 1; ++a) j(a, a) = 1;
    for (int a = 1; a <= q - 1; ++a) j(a, a) = -1;
    j(q + 1, q + 1) = -1;
    return j;
}

// J Z J (J is an involution), the algebra element whose realization is the
// derivative of the pointwise action along exp(tZ).
inline Mat<Rat> chart_twist(int q, const Mat<Rat>& Z) {
    const Mat<Rat> j = twist_reflection(q);
    return j * Z * j;
}

// Value of (op f) at a concrete point: x slots from `x`, the y slot from
// `y`, the Delta slot from `delta`.  Pairs with the flow derivatives above.
inline double apply_op_at(const VarTable& vt, const DiffOp& op, const Poly& f,
                          const std::vector<double>& x, double delta, double y = 0.0) {
    if (static_cast<int>(x.size()) != vt.q)
        throw std::invalid_argument("apply_op_at: point arity mismatch");
    const Poly g = op.apply(f);
    std::vector<double> point(vt.nvars(), 0.0);
    for (int mu = 0; mu < vt.q; ++mu) point[vt.x(mu)] = x[mu];
    point[vt.y()] = y;
    point[vt.delta()] = delta;
    return poly_eval_double(g, point);
}

}  // namespace adskit
