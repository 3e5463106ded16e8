#pragma once

#include <cmath>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "hasse/rational.hpp"

namespace hasse {

/**
 * Dense square matrix over the scalar K, row-major.
 *
 * Determinants use fraction-free elimination (exact over Rational) with
 * row pivoting; the inverse uses Gauss-Jordan and reports singular input.
 */
template <class K>
class Matrix {
public:
    explicit Matrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, K(0)) {
        if (n < 1) throw std::invalid_argument("Matrix: size must be positive");
    }

    static Matrix identity(int n) {
        Matrix m(n);
        for (int i = 0; i < n; ++i) m.at(i, i) = K(1);
        return m;
    }

    int size() const { return n_; }

    K& at(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    const K& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    std::vector<K> col(int j) const {
        std::vector<K> c;
        c.reserve(n_);
        for (int i = 0; i < n_; ++i) c.push_back(at(i, j));
        return c;
    }

    void set_col(int j, const std::vector<K>& c) {
        for (int i = 0; i < n_; ++i) at(i, j) = c[i];
    }

    bool operator==(const Matrix& o) const { return n_ == o.n_ && a_ == o.a_; }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const K& x : a_)
            if (!hasse::is_zero(x)) return false;
        return true;
    }

    Matrix operator-() const {
        Matrix r(n_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = -a_[k];
        return r;
    }

    Matrix operator+(const Matrix& o) const {
        require_same(o);
        Matrix r(n_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        require_same(o);
        Matrix r(n_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
        return r;
    }

    Matrix& operator+=(const Matrix& o) { return *this = *this + o; }
    Matrix& operator-=(const Matrix& o) { return *this = *this - o; }

    Matrix operator*(const Matrix& o) const {
        require_same(o);
        Matrix r(n_);
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < n_; ++k) {
                const K& aik = at(i, k);
                if (hasse::is_zero(aik)) continue;
                for (int j = 0; j < n_; ++j) r.at(i, j) += aik * o.at(k, j);
            }
        return r;
    }

    Matrix scaled(const K& c) const {
        Matrix r(n_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] * c;
        return r;
    }

    Matrix pow(int e) const {
        if (e < 0) throw std::invalid_argument("Matrix::pow: negative exponent");
        Matrix r = identity(n_);
        for (int k = 0; k < e; ++k) r = r * *this;
        return r;
    }

    K trace() const {
        K t(0);
        for (int i = 0; i < n_; ++i) t += at(i, i);
        return t;
    }

    /// Fraction-free (Bareiss) determinant with row pivoting.
    K determinant() const {
        Matrix m(*this);
        K prev(1);
        int sign = 1;
        for (int k = 0; k + 1 < n_; ++k) {
            int p = pick_pivot(m, k);
            if (p < 0) return K(0);
            if (p != k) {
                swap_rows(m, p, k);
                sign = -sign;
            }
            for (int i = k + 1; i < n_; ++i)
                for (int j = k + 1; j < n_; ++j)
                    m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
            prev = m.at(k, k);
        }
        K d = m.at(n_ - 1, n_ - 1);
        return sign < 0 ? -d : d;
    }

    /// Gauss-Jordan inverse; throws std::domain_error on singular input.
    Matrix inverse() const {
        Matrix m(*this);
        Matrix inv = identity(n_);
        for (int k = 0; k < n_; ++k) {
            int p = pick_pivot(m, k);
            if (p < 0) throw std::domain_error("Matrix::inverse: singular matrix");
            if (p != k) {
                swap_rows(m, p, k);
                swap_rows(inv, p, k);
            }
            const K pivot = m.at(k, k);
            for (int j = 0; j < n_; ++j) {
                m.at(k, j) = m.at(k, j) / pivot;
                inv.at(k, j) = inv.at(k, j) / pivot;
            }
            for (int i = 0; i < n_; ++i) {
                if (i == k || hasse::is_zero(m.at(i, k))) continue;
                const K f = m.at(i, k);
                for (int j = 0; j < n_; ++j) {
                    m.at(i, j) = m.at(i, j) - f * m.at(k, j);
                    inv.at(i, j) = inv.at(i, j) - f * inv.at(k, j);
                }
            }
        }
        return inv;
    }

private:
    void require_same(const Matrix& o) const {
        if (o.n_ != n_) throw std::invalid_argument("Matrix: size mismatch");
    }

    static int pick_pivot(const Matrix& m, int k) {
        if constexpr (std::is_floating_point_v<K>) {
            int best = -1;
            K best_abs(0);
            for (int i = k; i < m.n_; ++i) {
                K a = std::abs(m.at(i, k));
                if (a > best_abs) {
                    best_abs = a;
                    best = i;
                }
            }
            return best;
        } else {
            for (int i = k; i < m.n_; ++i)
                if (!hasse::is_zero(m.at(i, k))) return i;
            return -1;
        }
    }

    static void swap_rows(Matrix& m, int a, int b) {
        for (int j = 0; j < m.n_; ++j) std::swap(m.at(a, j), m.at(b, j));
    }

    int n_;
    std::vector<K> a_;
};

/// Builds a square matrix whose j-th column is columns[j].
template <class K>
Matrix<K> matrix_from_columns(const std::vector<std::vector<K>>& columns) {
    const int n = static_cast<int>(columns.size());
    Matrix<K> m(n);
    for (int j = 0; j < n; ++j) {
        if (static_cast<int>(columns[j].size()) != n)
            throw std::invalid_argument("matrix_from_columns: ragged input");
        m.set_col(j, columns[j]);
    }
    return m;
}

/// P A P^-1.
template <class K>
Matrix<K> conjugate(const Matrix<K>& p, const Matrix<K>& a) {
    return p * a * p.inverse();
}

}  // namespace hasse
