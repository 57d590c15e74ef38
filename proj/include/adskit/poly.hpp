// Exact multivariate polynomials over the rationals, in the variable set the
// differential-operator realizations act on:
//
//   x_0..x_{q-1}   boundary coordinates
//   y              bulk radial coordinate
//   z_0..z_{q-1}   internal (cone) variables
//   Delta          formal scaling weight
//
// Delta lives in the coefficient ring: operators may multiply by it, but no
// derivative in Delta ever appears.  Keeping it as a polynomial variable lets
// eigenvalue computations return closed forms in Delta instead of sampled
// numbers.
//
// Representation is a sorted sparse map from exponent vectors to nonzero
// rational coefficients, so equality, printing, and iteration order are all
// canonical by construction.

#pragma once

#include <adskit/rational.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace adskit {

// Variable layout for a fixed boundary dimension q.
struct VarTable {
    int q = 0;

    explicit VarTable(int q_) : q(q_) {
        if (q < 1) throw std::invalid_argument("VarTable: q must be >= 1");
    }

    int nvars() const { return 2 * q + 2; }
    int x(int mu) const { return checked(mu), mu; }
    int y() const { return q; }
    int zeta(int mu) const { return checked(mu), q + 1 + mu; }
    int delta() const { return 2 * q + 1; }

    bool is_zeta(int var) const { return var > q && var < 2 * q + 1; }

    std::string name(int var) const {
        if (var >= 0 && var < q) return "x" + std::to_string(var);
        if (var == q) return "y";
        if (is_zeta(var)) return "z" + std::to_string(var - q - 1);
        if (var == delta()) return "Delta";
        throw std::out_of_range("VarTable::name: bad variable id");
    }

  private:
    void checked(int mu) const {
        if (mu < 0 || mu >= q) throw std::out_of_range("VarTable: index out of range");
    }
};

class Poly {
  public:
    using Exponents = std::vector<int>;
    using TermMap = std::map<Exponents, Rat>;

    explicit Poly(int nvars) : nv_(nvars) {
        if (nvars < 1) throw std::invalid_argument("Poly: nvars must be >= 1");
    }

    static Poly zero(int nvars) { return Poly(nvars); }

    static Poly constant(int nvars, const Rat& c) {
        Poly p(nvars);
        p.add_term(Exponents(nvars, 0), c);
        return p;
    }

    static Poly variable(int nvars, int var) {
        if (var < 0 || var >= nvars) throw std::out_of_range("Poly::variable: bad id");
        Poly p(nvars);
        Exponents e(nvars, 0);
        e[var] = 1;
        p.add_term(e, Rat(1));
        return p;
    }

    int nvars() const { return nv_; }
    const TermMap& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    // Adds c * prod(var^e) into this polynomial, dropping the term if the
    // accumulated coefficient cancels to zero.
    void add_term(const Exponents& e, const Rat& c) {
        if (static_cast<int>(e.size()) != nv_)
            throw std::invalid_argument("Poly::add_term: exponent arity mismatch");
        for (int k : e)
            if (k < 0) throw std::invalid_argument("Poly::add_term: negative exponent");
        if (c == 0) return;
        auto it = t_.find(e);
        if (it == t_.end()) {
            t_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) t_.erase(it);
        }
    }

    bool operator==(const Poly& o) const { return nv_ == o.nv_ && t_ == o.t_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator+(const Poly& o) const {
        check_arity(o);
        Poly r = *this;
        for (const auto& [e, c] : o.t_) r.add_term(e, c);
        return r;
    }

    Poly operator-() const {
        Poly r(nv_);
        for (const auto& [e, c] : t_) r.t_.emplace(e, -c);
        return r;
    }

    Poly operator-(const Poly& o) const { return *this + (-o); }

    Poly operator*(const Poly& o) const {
        check_arity(o);
        Poly r(nv_);
        for (const auto& [ea, ca] : t_)
            for (const auto& [eb, cb] : o.t_) {
                Exponents e(nv_);
                for (int v = 0; v < nv_; ++v) e[v] = ea[v] + eb[v];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    Poly operator*(const Rat& s) const {
        Poly r(nv_);
        if (s == 0) return r;
        for (const auto& [e, c] : t_) r.t_.emplace(e, c * s);
        return r;
    }

    Poly pow(int k) const {
        if (k < 0) throw std::invalid_argument("Poly::pow: negative exponent");
        Poly r = constant(nv_, Rat(1));
        for (int i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    Poly derivative(int var) const {
        if (var < 0 || var >= nv_) throw std::out_of_range("Poly::derivative: bad id");
        Poly r(nv_);
        for (const auto& [e, c] : t_) {
            if (e[var] == 0) continue;
            Exponents d = e;
            d[var] -= 1;
            r.add_term(d, c * Rat(e[var]));
        }
        return r;
    }

    Poly substitute(int var, const Poly& repl) const {
        if (var < 0 || var >= nv_) throw std::out_of_range("Poly::substitute: bad id");
        check_arity(repl);
        Poly r(nv_);
        for (const auto& [e, c] : t_) {
            Exponents rest = e;
            rest[var] = 0;
            Poly term(nv_);
            term.add_term(rest, c);
            r = r + term * repl.pow(e[var]);
        }
        return r;
    }

    // Full evaluation; `point` must supply a value for every variable
    // (including Delta).
    Rat evaluate(const std::vector<Rat>& point) const {
        if (static_cast<int>(point.size()) != nv_)
            throw std::invalid_argument("Poly::evaluate: point arity mismatch");
        Rat acc(0);
        for (const auto& [e, c] : t_) {
            Rat term = c;
            for (int v = 0; v < nv_; ++v) term *= rat_pow(point[v], e[v]);
            acc += term;
        }
        return acc;
    }

    int degree(int var) const {
        if (var < 0 || var >= nv_) throw std::out_of_range("Poly::degree: bad id");
        int d = 0;
        for (const auto& [e, c] : t_) {
            (void)c;
            if (e[var] > d) d = e[var];
        }
        return d;
    }

    // Deterministic rendering: terms in map (lexicographic exponent) order,
    // e.g. "x0^2 - 1/2*x0*z1 + 3".
    std::string str(const VarTable& vt) const {
        if (static_cast<int>(vt.nvars()) != nv_)
            throw std::invalid_argument("Poly::str: variable table mismatch");
        if (t_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [e, c] : t_) {
            Rat a = rat_abs(c);
            if (first) {
                if (c < 0) out += "-";
                first = false;
            } else {
                out += (c < 0) ? " - " : " + ";
            }
            std::string mono;
            for (int v = 0; v < nv_; ++v) {
                if (e[v] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += vt.name(v);
                if (e[v] > 1) mono += "^" + std::to_string(e[v]);
            }
            if (mono.empty()) {
                out += rat_str(a);
            } else {
                if (a != 1) out += rat_str(a) + "*";
                out += mono;
            }
        }
        return out;
    }

  private:
    void check_arity(const Poly& o) const {
        if (nv_ != o.nv_) throw std::invalid_argument("Poly: variable set mismatch");
    }

    int nv_;
    TermMap t_;
};

inline Poly operator*(const Rat& s, const Poly& p) { return p * s; }

// Canonical representative modulo the cone relation z0^2 = z1^2 + ... +
// z_{q-1}^2: rewrite every z0^2 factor until all terms have z0-degree <= 1.
// The result is the normal form for the principal ideal generated by the
// relation (the quotient ring is a free module with basis {1, z0} over the
// remaining variables), so f lies in the ideal iff the reduction is zero.
// The timelike variable is the one eliminated; this is a convention, fixed
// for determinism.
inline Poly reduce_mod_cone(const VarTable& vt, const Poly& f) {
    if (vt.nvars() != f.nvars())
        throw std::invalid_argument("reduce_mod_cone: variable table mismatch");
    const int z0 = vt.zeta(0);
    Poly sum_sq(f.nvars());
    for (int a = 1; a < vt.q; ++a) {
        Poly za = Poly::variable(f.nvars(), vt.zeta(a));
        sum_sq = sum_sq + za * za;
    }
    Poly cur = f;
    for (;;) {
        Poly next(f.nvars());
        bool changed = false;
        for (const auto& [e, c] : cur.terms()) {
            if (e[z0] < 2) {
                next.add_term(e, c);
                continue;
            }
            changed = true;
            Poly::Exponents d = e;
            d[z0] -= 2;
            Poly rest(f.nvars());
            rest.add_term(d, c);
            next = next + rest * sum_sq;
        }
        if (!changed) return next;
        cur = std::move(next);
    }
}

// ---------------------------------------------------------------------------
// Parser for user-supplied polynomials (CLI input).
//
// Grammar (whitespace insensitive):
//   expr    := ['-'] term (('+'|'-') term)*
//   term    := factor ('*' factor)*
//   factor  := atom ['^' uint]
//   atom    := rational | variable | '(' expr ')'
//   rational:= uint ['/' uint]
//   variable:= 'x'<idx> | 'y' | 'z'<idx>       with 0 <= idx < q
//
// Multiplication is always explicit ('*'); Delta is not part of the input
// language.  Errors carry the offending position.

class PolyParseError : public std::runtime_error {
  public:
    PolyParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"), pos_(pos) {}
    std::size_t position() const { return pos_; }

  private:
    std::size_t pos_;
};

namespace detail {

class PolyParser {
  public:
    PolyParser(const VarTable& vt, const std::string& src) : vt_(vt), s_(src) {}

    Poly parse() {
        Poly p = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return p;
    }

  private:
    Poly expr() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        }
        Poly acc = term();
        if (neg) acc = -acc;
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '+' || c == '-') {
                ++pos_;
                Poly t = term();
                acc = (c == '+') ? acc + t : acc - t;
            } else {
                return acc;
            }
        }
    }

    Poly term() {
        Poly acc = factor();
        for (;;) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                acc = acc * factor();
            } else {
                return acc;
            }
        }
    }

    Poly factor() {
        Poly base = atom();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            return base.pow(parse_uint("exponent"));
        }
        return base;
    }

    Poly atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            Poly p = expr();
            skip_ws();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return p;
        }
        if (c >= '0' && c <= '9') {
            long num = parse_uint("number");
            skip_ws();
            if (peek() == '/') {
                ++pos_;
                skip_ws();
                long den = parse_uint("denominator");
                if (den == 0) fail("zero denominator");
                return Poly::constant(vt_.nvars(), rat(num, den));
            }
            return Poly::constant(vt_.nvars(), Rat(num));
        }
        if (c == 'y') {
            ++pos_;
            return Poly::variable(vt_.nvars(), vt_.y());
        }
        if (c == 'x' || c == 'z') {
            ++pos_;
            long idx = parse_uint("variable index");
            if (idx >= vt_.q) fail("variable index out of range for q");
            return Poly::variable(vt_.nvars(),
                                  c == 'x' ? vt_.x(static_cast<int>(idx))
                                           : vt_.zeta(static_cast<int>(idx)));
        }
        fail("expected number, variable, or '('");
    }

    long parse_uint(const char* what) {
        skip_ws();
        if (peek() < '0' || peek() > '9') fail(std::string("expected ") + what);
        long v = 0;
        while (peek() >= '0' && peek() <= '9') {
            v = v * 10 + (s_[pos_] - '0');
            if (v > 1000000000L) fail("integer literal too large");
            ++pos_;
        }
        return v;
    }

    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    [[noreturn]] void fail(const std::string& msg) const { throw PolyParseError(msg, pos_); }

    const VarTable& vt_;
    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Poly parse_poly(const VarTable& vt, const std::string& src) {
    return detail::PolyParser(vt, src).parse();
}

}  // namespace adskit
