// Small dense square matrices over an arbitrary scalar (exact rationals or
// doubles).  Sizes here are (q+2)x(q+2) for single-digit q, so the simple
// O(n^3) algorithms are the right tool; exactness matters far more than
// asymptotics.

#pragma once

#include <adskit/rational.hpp>

#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace adskit {

template <class T>
class Mat {
  public:
    Mat() : n_(0) {}
    explicit Mat(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, T(0)) {
        if (n < 0) throw std::invalid_argument("Mat: negative size");
    }
    Mat(std::initializer_list<std::initializer_list<T>> rows) : n_(static_cast<int>(rows.size())) {
        a_.reserve(static_cast<std::size_t>(n_) * n_);
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != n_) throw std::invalid_argument("Mat: ragged init");
            for (const auto& v : row) a_.push_back(v);
        }
    }

    static Mat identity(int n) {
        Mat m(n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    int size() const { return n_; }

    T& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    const T& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    bool operator==(const Mat& o) const { return n_ == o.n_ && a_ == o.a_; }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat operator+(const Mat& o) const {
        check_same(o);
        Mat r(n_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
        return r;
    }
    Mat operator-(const Mat& o) const {
        check_same(o);
        Mat r(n_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
        return r;
    }
    Mat operator*(const Mat& o) const {
        check_same(o);
        Mat r(n_);
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < n_; ++k) {
                const T& aik = (*this)(i, k);
                if (aik == T(0)) continue;
                for (int j = 0; j < n_; ++j) r(i, j) += aik * o(k, j);
            }
        return r;
    }
    Mat operator*(const T& s) const {
        Mat r(n_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] * s;
        return r;
    }
    Mat operator-() const { return (*this) * T(-1); }

    Mat transposed() const {
        Mat r(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    bool is_zero() const {
        for (const auto& v : a_)
            if (!(v == T(0))) return false;
        return true;
    }

    // Gauss-Jordan inverse.  Exact scalars pick the first nonzero pivot;
    // doubles pick the largest-magnitude pivot.  Throws on singular input.
    Mat inverse() const {
        Mat a = *this;
        Mat inv = identity(n_);
        for (int col = 0; col < n_; ++col) {
            int piv = -1;
            if constexpr (std::is_floating_point_v<T>) {
                T best = T(0);
                for (int r = col; r < n_; ++r) {
                    T mag = a(r, col) < T(0) ? -a(r, col) : a(r, col);
                    if (mag > best) {
                        best = mag;
                        piv = r;
                    }
                }
            } else {
                for (int r = col; r < n_; ++r)
                    if (!(a(r, col) == T(0))) {
                        piv = r;
                        break;
                    }
            }
            if (piv < 0) throw std::domain_error("Mat::inverse: singular matrix");
            if (piv != col) {
                a.swap_rows(piv, col);
                inv.swap_rows(piv, col);
            }
            const T d = a(col, col);
            for (int j = 0; j < n_; ++j) {
                a(col, j) = a(col, j) / d;
                inv(col, j) = inv(col, j) / d;
            }
            for (int r = 0; r < n_; ++r) {
                if (r == col) continue;
                const T f = a(r, col);
                if (f == T(0)) continue;
                for (int j = 0; j < n_; ++j) {
                    a(r, j) -= f * a(col, j);
                    inv(r, j) -= f * inv(col, j);
                }
            }
        }
        return inv;
    }

    T det() const {
        Mat a = *this;
        T d(1);
        for (int col = 0; col < n_; ++col) {
            int piv = -1;
            for (int r = col; r < n_; ++r)
                if (!(a(r, col) == T(0))) {
                    piv = r;
                    break;
                }
            if (piv < 0) return T(0);
            if (piv != col) {
                a.swap_rows(piv, col);
                d = -d;
            }
            d *= a(col, col);
            const T dd = a(col, col);
            for (int r = col + 1; r < n_; ++r) {
                const T f = a(r, col) / dd;
                if (f == T(0)) continue;
                for (int j = col; j < n_; ++j) a(r, j) -= f * a(col, j);
            }
        }
        return d;
    }

    T trace() const {
        T t(0);
        for (int i = 0; i < n_; ++i) t += (*this)(i, i);
        return t;
    }

  private:
    void check_same(const Mat& o) const {
        if (n_ != o.n_) throw std::invalid_argument("Mat: size mismatch");
    }
    void swap_rows(int r1, int r2) {
        for (int j = 0; j < n_; ++j) std::swap((*this)(r1, j), (*this)(r2, j));
    }

    int n_;
    std::vector<T> a_;
};

template <class T>
Mat<T> commutator(const Mat<T>& a, const Mat<T>& b) {
    return a * b - b * a;
}

// Largest absolute entry, as a double (works for both scalar types).
template <class T>
double max_abs_entry(const Mat<T>& m) {
    double best = 0.0;
    for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j) {
            double v;
            if constexpr (std::is_floating_point_v<T>)
                v = std::fabs(m(i, j));
            else
                v = std::fabs(rat_double(m(i, j)));
            if (v > best) best = v;
        }
    return best;
}

inline Mat<double> to_double(const Mat<Rat>& m) {
    Mat<double> r(m.size());
    for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j) r(i, j) = rat_double(m(i, j));
    return r;
}

// Truncated Taylor exponential for float-mode flow checks.  The inputs here
// are small (norm well under 1), so a fixed-order series is plenty.
inline Mat<double> mat_exp(const Mat<double>& m, int order = 24) {
    Mat<double> term = Mat<double>::identity(m.size());
    Mat<double> sum = term;
    for (int k = 1; k <= order; ++k) {
        term = term * m * (1.0 / k);
        sum = sum + term;
    }
    return sum;
}

}  // namespace adskit
