// Group-level constructors for SO(q,2): the nilpotent subgroups N and
// Ntilde, dilatations A, Cayley-rational points of H and M, seeded random
// elements, and membership tests.
//
// Everything is templated on the scalar: Rat for the exact pipelines, double
// for sampling/finite-difference work.  Exact mode uses zero tolerance
// throughout; float mode takes an explicit tolerance.
//
// Parameter vectors carry *lowered* indices (x_mu).  The exponentials raise
// them internally: x^mu = eta^mumu x_mu with eta^00 = -1.

#pragma once

#include <adskit/liealg.hpp>
#include <adskit/matrix.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace adskit {

template <class T>
T scalar_from_rat(const Rat& r) {
    if constexpr (std::is_floating_point_v<T>)
        return rat_double(r);
    else
        return r;
}

// v == 0 exactly (exact scalars) or |v| <= tol (floats).  Concrete overloads
// rather than a template so GMP's expression-template intermediates bind too.
inline bool approx_zero(const Rat& v, double) { return v == 0; }
inline bool approx_zero(double v, double tol) { return std::fabs(v) <= tol; }

template <class T>
Mat<T> metric_mat(int q) {
    check_rank(q);
    Mat<T> eta(q + 2);
    eta(0, 0) = T(-1);
    for (int i = 1; i <= q; ++i) eta(i, i) = T(1);
    eta(q + 1, q + 1) = T(-1);
    return eta;
}

template <class T>
T eta_sign(int q, int A) {
    return scalar_from_rat<T>(eta_diag(q, A));
}

// Lorentzian square with the library's sign convention:
// xsq = x_0^2 - x_1^2 - ... - x_{q-1}^2.
template <class T>
T lorentz_square(const std::vector<T>& x) {
    T s = x.empty() ? T(0) : x[0] * x[0];
    for (std::size_t a = 1; a < x.size(); ++a) s -= x[a] * x[a];
    return s;
}

namespace detail {
template <class T>
void check_param(int q, const std::vector<T>& x, const char* who) {
    check_rank(q);
    if (static_cast<int>(x.size()) != q)
        throw std::invalid_argument(std::string(who) + ": parameter vector must have q entries");
}
}  // namespace detail

// ntilde_x = exp(sum_mu x^mu C_mu), written out from the terminating series
// I + Z + Z^2/2 (Z^3 = 0).  Row q+1 satisfies g_{q+1,q} + g_{q+1,q+1} = 1,
// which is what makes the Sekiguchi chart return (x, 1) on these elements.
template <class T>
Mat<T> make_ntilde(int q, const std::vector<T>& x) {
    detail::check_param(q, x, "make_ntilde");
    const T xsq = lorentz_square(x);
    Mat<T> g = Mat<T>::identity(q + 2);
    const T half = scalar_from_rat<T>(rat(1, 2));
    for (int mu = 0; mu < q; ++mu) {
        const T xu = eta_sign<T>(q, mu) * x[mu];  // raised component
        g(mu, q) = -x[mu];
        g(mu, q + 1) = x[mu];
        g(q, mu) = xu;
        g(q + 1, mu) = xu;
    }
    g(q, q) = T(1) + half * xsq;
    g(q, q + 1) = -half * xsq;
    g(q + 1, q) = half * xsq;
    g(q + 1, q + 1) = T(1) - half * xsq;
    return g;
}

// n_t = exp(sum_mu t^mu T_mu), same terminating series.
template <class T>
Mat<T> make_n(int q, const std::vector<T>& t) {
    detail::check_param(q, t, "make_n");
    const T tsq = lorentz_square(t);
    Mat<T> g = Mat<T>::identity(q + 2);
    const T half = scalar_from_rat<T>(rat(1, 2));
    for (int mu = 0; mu < q; ++mu) {
        const T tu = eta_sign<T>(q, mu) * t[mu];
        g(mu, q) = -t[mu];
        g(mu, q + 1) = -t[mu];
        g(q, mu) = tu;
        g(q + 1, mu) = -tu;
    }
    g(q, q) = T(1) + half * tsq;
    g(q, q + 1) = half * tsq;
    g(q + 1, q) = -half * tsq;
    g(q + 1, q + 1) = T(1) - half * tsq;
    return g;
}

// a_y: identity outside the (q, q+1) block, where it is
// [[cosh s, sinh s], [sinh s, cosh s]] with y = e^s, i.e. entries
// (y + 1/y)/2 and (y - 1/y)/2 -- rational in y.
template <class T>
Mat<T> make_dilatation(int q, const T& y) {
    check_rank(q);
    if (!(y > T(0))) throw std::domain_error("make_dilatation: y must be positive");
    const T half = scalar_from_rat<T>(rat(1, 2));
    const T ch = half * (y + T(1) / y);
    const T sh = half * (y - T(1) / y);
    Mat<T> g = Mat<T>::identity(q + 2);
    g(q, q) = ch;
    g(q, q + 1) = sh;
    g(q + 1, q) = sh;
    g(q + 1, q + 1) = ch;
    return g;
}

// The Ntilde block matrix written out in the opposite generator convention:
// it equals make_n(q, -ts) entry-for-entry, i.e. it is the T-side
// exponential of the parameters it displays.  The parameters (t,s) are
// taken directly (they relate to the validated chart's x by a sqrt(2)
// normalization, which is irrational and would break exactness if applied).
// Kept as a documented alternative constructor; the library's own charts are
// built on make_ntilde above.
template <class T>
Mat<T> make_ntilde_block(int q, const std::vector<T>& ts) {
    detail::check_param(q, ts, "make_ntilde_block");
    std::vector<T> neg(ts);
    for (auto& v : neg) v = -v;
    return make_n(q, neg);
}

// Cayley point of H: S must be an algebra element supported on indices
// 0..q (last row/column zero).  h = (I - S)(I + S)^{-1}, which lands in the
// eta-orthogonal group whenever S does in the algebra, and has the H block
// form (last row/column = e_{q+1}).
inline Mat<Rat> make_h_cayley(int q, const Mat<Rat>& S) {
    check_rank(q);
    if (S.size() != q + 2) throw std::invalid_argument("make_h_cayley: size mismatch");
    if (!in_algebra(q, S)) throw std::invalid_argument("make_h_cayley: S not in so(q,2)");
    for (int i = 0; i <= q + 1; ++i)
        if (S(i, q + 1) != 0 || S(q + 1, i) != 0)
            throw std::invalid_argument("make_h_cayley: S must vanish on index q+1");
    const auto I = Mat<Rat>::identity(q + 2);
    return (I - S) * (I + S).inverse();  // inverse() throws if I+S singular
}

// Same construction for M: support on indices 0..q-1, identity on the last
// two slots.
inline Mat<Rat> make_m_cayley(int q, const Mat<Rat>& S) {
    check_rank(q);
    if (S.size() != q + 2) throw std::invalid_argument("make_m_cayley: size mismatch");
    if (!in_algebra(q, S)) throw std::invalid_argument("make_m_cayley: S not in so(q,2)");
    for (int i = 0; i <= q + 1; ++i)
        for (int j : {q, q + 1})
            if (S(i, j) != 0 || S(j, i) != 0)
                throw std::invalid_argument("make_m_cayley: S must vanish on indices q, q+1");
    const auto I = Mat<Rat>::identity(q + 2);
    return (I - S) * (I + S).inverse();
}

// For eta-orthogonal g the inverse is eta g^T eta; cheaper and exact.
template <class T>
Mat<T> inverse_in_group(int q, const Mat<T>& g) {
    const auto eta = metric_mat<T>(q);
    return eta * g.transposed() * eta;
}

template <class T>
bool is_eta_orthogonal(int q, const Mat<T>& g, double tol = 0.0) {
    const auto eta = metric_mat<T>(q);
    const auto resid = g.transposed() * eta * g - eta;
    for (int i = 0; i < resid.size(); ++i)
        for (int j = 0; j < resid.size(); ++j)
            if (!approx_zero(resid(i, j), tol)) return false;
    return true;
}

// Proper eta-orthogonal: the defining conditions of the group.
template <class T>
bool is_in_group(int q, const Mat<T>& g, double tol = 0.0) {
    if (g.size() != q + 2) return false;
    if (!is_eta_orthogonal(q, g, tol)) return false;
    return approx_zero(g.det() - T(1), tol * 10);
}

struct HCheck {
    bool ok = false;
    int sign = 0;  // the (q+1,q+1) entry, +1 on the identity component
};

// H block form: eta-orthogonal, last row and column equal to +-e_{q+1}.
template <class T>
HCheck is_in_H(int q, const Mat<T>& g, double tol = 0.0) {
    if (g.size() != q + 2 || !is_eta_orthogonal(q, g, tol)) return {};
    for (int i = 0; i <= q; ++i)
        if (!approx_zero(g(i, q + 1), tol) || !approx_zero(g(q + 1, i), tol)) return {};
    const T corner = g(q + 1, q + 1);
    if (approx_zero(corner - T(1), tol)) return {true, 1};
    if (approx_zero(corner + T(1), tol)) return {true, -1};
    return {};
}

template <class T>
struct MNCheck {
    bool ok = false;
    std::vector<T> t;  // n-parameters (lowered)
    Mat<T> m;          // the M-block residual, identity on q, q+1
};

// r = m n with m supported on indices 0..q-1 (identity block on q, q+1) and
// n = make_n(t).  Row q+1 of such a product starts with -t^mu, which gives
// the closed-form parameter extraction; the remainder must then pass the
// block-form and eta tests.
template <class T>
MNCheck<T> is_in_MN(int q, const Mat<T>& r, double tol = 0.0) {
    if (r.size() != q + 2 || !is_eta_orthogonal(q, r, tol)) return {};
    std::vector<T> t(q);
    for (int mu = 0; mu < q; ++mu) t[mu] = -eta_sign<T>(q, mu) * r(q + 1, mu);  // lower
    const auto n = make_n(q, t);
    const auto m = r * inverse_in_group(q, n);
    for (int i = 0; i <= q + 1; ++i)
        for (int j : {q, q + 1}) {
            const T want_ij = (i == j) ? T(1) : T(0);
            const T want_ji = want_ij;
            if (!approx_zero(m(i, j) - want_ij, tol)) return {};
            if (!approx_zero(m(j, i) - want_ji, tol)) return {};
        }
    if (!is_eta_orthogonal(q, m, tol)) return {};
    return {true, std::move(t), m};
}

// --- seeded random elements ----------------------------------------------
//
// Small rational parameters drawn from a raw mt19937_64 stream (explicit
// modulo reduction, so the byte stream -- and with it every report -- is
// identical across platforms).  word_length = number of ntilde * a * h
// blocks multiplied together; 0 gives the identity.

namespace detail {

class RatSampler {
  public:
    explicit RatSampler(std::uint64_t seed) : eng_(seed) {}

    Rat small(long num_range = 2, long den_range = 3) {
        const long num = static_cast<long>(eng_() % (2 * num_range + 1)) - num_range;
        const long den = 1 + static_cast<long>(eng_() % den_range);
        return rat(num, den);
    }
    Rat positive(long num_range = 3, long den_range = 3) {
        const long num = 1 + static_cast<long>(eng_() % num_range);
        const long den = 1 + static_cast<long>(eng_() % den_range);
        return rat(num, den);
    }
    std::vector<Rat> small_vec(int n) {
        std::vector<Rat> v(n);
        for (auto& r : v) r = small();
        return v;
    }

  private:
    std::mt19937_64 eng_;
};

// Random algebra element supported on the pairs of `idx`, small entries.
inline Mat<Rat> random_support_element(int q, RatSampler& s,
                                       const std::vector<BasisIndex>& idx) {
    Mat<Rat> S(q + 2);
    for (const auto& i : idx) S = S + generator(q, i) * s.small(1, 3);
    return S;
}

inline std::vector<BasisIndex> h_support(int q) {
    std::vector<BasisIndex> v;
    for (int a = 0; a <= q; ++a)
        for (int b = a + 1; b <= q; ++b) v.push_back({a, b});
    return v;
}

inline std::vector<BasisIndex> m_support(int q) {
    std::vector<BasisIndex> v;
    for (int a = 0; a < q; ++a)
        for (int b = a + 1; b < q; ++b) v.push_back({a, b});
    return v;
}

}  // namespace detail

// Random Cayley point of H (resamples in the measure-zero singular case).
inline Mat<Rat> random_h_cayley(int q, detail::RatSampler& s) {
    for (;;) {
        try {
            return make_h_cayley(q, detail::random_support_element(q, s, detail::h_support(q)));
        } catch (const std::domain_error&) { /* singular I+S: redraw */
        }
    }
}

inline Mat<Rat> random_m_cayley(int q, detail::RatSampler& s) {
    for (;;) {
        try {
            return make_m_cayley(q, detail::random_support_element(q, s, detail::m_support(q)));
        } catch (const std::domain_error&) {
        }
    }
}

inline Mat<Rat> random_element(int q, std::uint64_t seed, int word_length) {
    check_rank(q);
    if (word_length < 0) throw std::invalid_argument("random_element: negative word length");
    detail::RatSampler s(seed);
    Mat<Rat> g = Mat<Rat>::identity(q + 2);
    for (int w = 0; w < word_length; ++w) {
        g = g * make_ntilde(q, s.small_vec(q));
        g = g * make_dilatation(q, s.positive());
        g = g * random_h_cayley(q, s);
    }
    return g;
}

}  // namespace adskit
