// Polynomial-coefficient differential operators in the variables of
// poly.hpp, normal-ordered with all derivatives to the right:
//
//   P = sum_alpha  f_alpha(x, y, z, Delta) * d^alpha
//
// where alpha is a derivative multi-index over {x_mu, y, z_mu}.  Delta is a
// coefficient-ring parameter only: no operator ever differentiates in it,
// and the representation enforces that slot to stay zero.
//
// Composition uses the Leibniz rule
//
//   (f d^a)(g d^b) = sum_{c <= a} binom(a, c) f (d^c g) d^{a-c+b}
//
// which is exactly the statement that apply(compose(P,Q), h) =
// apply(P, apply(Q, h)); the test suite checks that soundness property on
// randomized operators.

#pragma once

#include <adskit/poly.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace adskit {

namespace detail {

inline Rat binomial(int n, int k) {
    if (k < 0 || k > n) return Rat(0);
    Rat r(1);
    for (int i = 1; i <= k; ++i) r = r * Rat(n - k + i) / Rat(i);
    return r;
}

}  // namespace detail

class DiffOp {
  public:
    using DerivIndex = std::vector<int>;  // arity nvars; Delta slot must be 0
    using TermMap = std::map<DerivIndex, Poly>;

    explicit DiffOp(int nvars, int delta_var) : nv_(nvars), delta_(delta_var) {
        if (delta_ < 0 || delta_ >= nv_) throw std::invalid_argument("DiffOp: bad Delta slot");
    }

    explicit DiffOp(const VarTable& vt) : DiffOp(vt.nvars(), vt.delta()) {}

    static DiffOp zero(const VarTable& vt) { return DiffOp(vt); }

    static DiffOp identity(const VarTable& vt) {
        return multiplication(vt, Poly::constant(vt.nvars(), Rat(1)));
    }

    // The operator "multiply by f".
    static DiffOp multiplication(const VarTable& vt, const Poly& f) {
        DiffOp p(vt);
        p.add_term(DerivIndex(vt.nvars(), 0), f);
        return p;
    }

    // The operator d/d(var).
    static DiffOp derivative(const VarTable& vt, int var) {
        DiffOp p(vt);
        DerivIndex a(vt.nvars(), 0);
        a[var] = 1;
        p.add_term(a, Poly::constant(vt.nvars(), Rat(1)));
        return p;
    }

    int nvars() const { return nv_; }
    int delta_var() const { return delta_; }
    const TermMap& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    void add_term(const DerivIndex& a, const Poly& f) {
        if (static_cast<int>(a.size()) != nv_)
            throw std::invalid_argument("DiffOp::add_term: index arity mismatch");
        for (int k : a)
            if (k < 0) throw std::invalid_argument("DiffOp::add_term: negative order");
        if (a[delta_] != 0)
            throw std::invalid_argument("DiffOp::add_term: derivative in Delta is not allowed");
        if (f.nvars() != nv_)
            throw std::invalid_argument("DiffOp::add_term: coefficient arity mismatch");
        if (f.is_zero()) return;
        auto it = t_.find(a);
        if (it == t_.end()) {
            t_.emplace(a, f);
        } else {
            it->second = it->second + f;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    bool operator==(const DiffOp& o) const {
        return nv_ == o.nv_ && delta_ == o.delta_ && t_ == o.t_;
    }
    bool operator!=(const DiffOp& o) const { return !(*this == o); }

    DiffOp operator+(const DiffOp& o) const {
        check_compat(o);
        DiffOp r = *this;
        for (const auto& [a, f] : o.t_) r.add_term(a, f);
        return r;
    }

    DiffOp operator-() const {
        DiffOp r(nv_, delta_);
        for (const auto& [a, f] : t_) r.t_.emplace(a, -f);
        return r;
    }

    DiffOp operator-(const DiffOp& o) const { return *this + (-o); }

    DiffOp operator*(const Rat& s) const {
        DiffOp r(nv_, delta_);
        if (s == 0) return r;
        for (const auto& [a, f] : t_) r.t_.emplace(a, f * s);
        return r;
    }

    // Left multiplication by a polynomial (g f d^a stays normal-ordered).
    DiffOp scaled_by(const Poly& g) const {
        DiffOp r(nv_, delta_);
        for (const auto& [a, f] : t_) r.add_term(a, g * f);
        return r;
    }

    Poly apply(const Poly& h) const {
        if (h.nvars() != nv_) throw std::invalid_argument("DiffOp::apply: arity mismatch");
        Poly out(nv_);
        for (const auto& [a, f] : t_) {
            Poly d = h;
            for (int v = 0; v < nv_ && !d.is_zero(); ++v)
                for (int k = 0; k < a[v] && !d.is_zero(); ++k) d = d.derivative(v);
            out = out + f * d;
        }
        return out;
    }

    // Deterministic rendering, e.g. "(-2*x0) d/dx0 + (1) d/dy^2".
    std::string str(const VarTable& vt) const {
        if (vt.nvars() != nv_) throw std::invalid_argument("DiffOp::str: table mismatch");
        if (t_.empty()) return "0";
        std::string out;
        for (const auto& [a, f] : t_) {
            if (!out.empty()) out += " + ";
            out += "(" + f.str(vt) + ")";
            for (int v = 0; v < nv_; ++v) {
                if (a[v] == 0) continue;
                out += " d/d" + vt.name(v);
                if (a[v] > 1) out += "^" + std::to_string(a[v]);
            }
        }
        return out;
    }

    friend DiffOp op_compose(const DiffOp& p, const DiffOp& q);

  private:
    void check_compat(const DiffOp& o) const {
        if (nv_ != o.nv_ || delta_ != o.delta_)
            throw std::invalid_argument("DiffOp: variable set mismatch");
    }

    int nv_;
    int delta_;
    TermMap t_;
};

inline DiffOp operator*(const Rat& s, const DiffOp& p) { return p * s; }

inline DiffOp op_compose(const DiffOp& p, const DiffOp& q) {
    p.check_compat(q);
    const int nv = p.nvars();
    DiffOp r(nv, p.delta_var());
    for (const auto& [a, f] : p.terms()) {
        // Enumerate c <= a componentwise.
        DiffOp::DerivIndex c(nv, 0);
        for (;;) {
            Rat coeff(1);
            for (int v = 0; v < nv; ++v) coeff *= detail::binomial(a[v], c[v]);
            for (const auto& [b, g] : q.terms()) {
                Poly dg = g;
                for (int v = 0; v < nv && !dg.is_zero(); ++v)
                    for (int k = 0; k < c[v] && !dg.is_zero(); ++k) dg = dg.derivative(v);
                if (dg.is_zero()) continue;
                DiffOp::DerivIndex idx(nv);
                for (int v = 0; v < nv; ++v) idx[v] = a[v] - c[v] + b[v];
                r.add_term(idx, (f * dg) * coeff);
            }
            // Odometer increment of c within the box [0, a].
            int v = 0;
            while (v < nv) {
                if (c[v] < a[v]) {
                    ++c[v];
                    break;
                }
                c[v] = 0;
                ++v;
            }
            if (v == nv) break;
        }
    }
    return r;
}

inline DiffOp op_commutator(const DiffOp& p, const DiffOp& q) {
    return op_compose(p, q) - op_compose(q, p);
}

}  // namespace adskit
