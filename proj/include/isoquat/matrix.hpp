#pragma once

#include <cassert>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "isoquat/errors.hpp"

namespace isoquat {

/// Dense matrix over an arbitrary ring element type.
template <class T>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols, T fill = T(0))
        : rows_(rows), cols_(cols), a_(std::size_t(rows) * std::size_t(cols), fill) {
        assert(rows >= 0 && cols >= 0);
    }

    static Mat identity(int n, T one = T(1), T zero = T(0)) {
        Mat m(n, n, zero);
        for (int i = 0; i < n; ++i) m.at(i, i) = one;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& at(int i, int j) { return a_[std::size_t(i) * std::size_t(cols_) + std::size_t(j)]; }
    const T& at(int i, int j) const { return a_[std::size_t(i) * std::size_t(cols_) + std::size_t(j)]; }

    Mat operator+(const Mat& o) const {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        Mat r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = r.a_[i] + o.a_[i];
        return r;
    }
    Mat operator-(const Mat& o) const {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        Mat r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = r.a_[i] - o.a_[i];
        return r;
    }
    Mat operator-() const {
        Mat r = *this;
        for (auto& x : r.a_) x = -x;
        return r;
    }
    Mat operator*(const Mat& o) const {
        assert(cols_ == o.rows_);
        Mat r(rows_, o.cols_, a_.empty() ? T(0) : T(0) * a_.front()); // zero with matching context
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const T& x = at(i, k);
                if (x.is_zero()) continue;
                for (int j = 0; j < o.cols_; ++j) r.at(i, j) = r.at(i, j) + x * o.at(k, j);
            }
        return r;
    }
    Mat scaled_left(const T& s) const {
        Mat r = *this;
        for (auto& x : r.a_) x = s * x;
        return r;
    }
    Mat scaled_right(const T& s) const {
        Mat r = *this;
        for (auto& x : r.a_) x = x * s;
        return r;
    }

    bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

    Mat transposed() const {
        Mat r(cols_, rows_, a_.empty() ? T(0) : a_.front());
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    /// Conjugate transpose with a caller-supplied entry conjugation.
    Mat dagger(const std::function<T(const T&)>& conj) const {
        Mat r(cols_, rows_, a_.empty() ? T(0) : a_.front());
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(j, i) = conj(at(i, j));
        return r;
    }

    T trace() const {
        assert(rows_ == cols_ && rows_ > 0);
        T s = at(0, 0);
        for (int i = 1; i < rows_; ++i) s = s + at(i, i);
        return s;
    }

    std::string str(const std::function<std::string(const T&)>& fmt) const {
        std::string out = "[";
        for (int i = 0; i < rows_; ++i) {
            out += i ? ", [" : "[";
            for (int j = 0; j < cols_; ++j) {
                if (j) out += ", ";
                out += fmt(at(i, j));
            }
            out += "]";
        }
        return out + "]";
    }

private:
    int rows_, cols_;
    std::vector<T> a_;
};

/// Inverse over a division ring by row reduction; any nonzero entry of a
/// division-certified quaternion algebra is invertible, so plain nonzero
/// pivot selection suffices. Returns nullopt when the matrix is singular.
template <class T>
std::optional<Mat<T>> division_ring_inverse(Mat<T> m) {
    assert(m.rows() == m.cols());
    int n = m.rows();
    Mat<T> inv = Mat<T>::identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (!m.at(i, col).is_zero()) { piv = i; break; }
        if (piv < 0) return std::nullopt;
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(m.at(piv, j), m.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        T pinv = m.at(col, col).inverse();
        for (int j = 0; j < n; ++j) {
            m.at(col, j) = pinv * m.at(col, j);
            inv.at(col, j) = pinv * inv.at(col, j);
        }
        for (int i = 0; i < n; ++i) {
            if (i == col || m.at(i, col).is_zero()) continue;
            T f = m.at(i, col);
            for (int j = 0; j < n; ++j) {
                m.at(i, j) = m.at(i, j) - f * m.at(col, j);
                inv.at(i, j) = inv.at(i, j) - f * inv.at(col, j);
            }
        }
    }
    return inv;
}

/// Row-echelon rank over a commutative field.
template <class T>
int field_rank(Mat<T> m) {
    int rank = 0;
    for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
        int piv = -1;
        for (int i = rank; i < m.rows(); ++i)
            if (!m.at(i, col).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != rank)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(rank, j));
        T pinv = m.at(rank, col).inverse();
        for (int j = col; j < m.cols(); ++j) m.at(rank, j) = m.at(rank, j) * pinv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == rank || m.at(i, col).is_zero()) continue;
            T f = m.at(i, col);
            for (int j = col; j < m.cols(); ++j) m.at(i, j) = m.at(i, j) - f * m.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

template <class T>
std::optional<Mat<T>> field_inverse(const Mat<T>& m) {
    return division_ring_inverse(m); // commutative case of the same elimination
}

/// Basis of the kernel of A over a commutative field.
template <class T>
std::vector<std::vector<T>> field_kernel_basis(Mat<T> a) {
    int rank = 0;
    std::vector<int> pivot_of_col(std::size_t(a.cols()), -1);
    for (int col = 0; col < a.cols() && rank < a.rows(); ++col) {
        int piv = -1;
        for (int i = rank; i < a.rows(); ++i)
            if (!a.at(i, col).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != rank)
            for (int j = 0; j < a.cols(); ++j) std::swap(a.at(piv, j), a.at(rank, j));
        T pinv = a.at(rank, col).inverse();
        for (int j = col; j < a.cols(); ++j) a.at(rank, j) = a.at(rank, j) * pinv;
        for (int i = 0; i < a.rows(); ++i) {
            if (i == rank || a.at(i, col).is_zero()) continue;
            T f = a.at(i, col);
            for (int j = col; j < a.cols(); ++j) a.at(i, j) = a.at(i, j) - f * a.at(rank, j);
        }
        pivot_of_col[std::size_t(col)] = rank;
        ++rank;
    }
    std::vector<std::vector<T>> basis;
    for (int col = 0; col < a.cols(); ++col) {
        if (pivot_of_col[std::size_t(col)] >= 0) continue;
        std::vector<T> v(std::size_t(a.cols()), T(0));
        v[std::size_t(col)] = T(1);
        for (int c = 0; c < a.cols(); ++c) {
            int p = pivot_of_col[std::size_t(c)];
            if (p >= 0) v[std::size_t(c)] = -a.at(p, col);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Solves A x = rhs over a commutative field. Returns nullopt when the
/// system is inconsistent; free variables are set to zero.
template <class T>
std::optional<std::vector<T>> field_solve(Mat<T> a, std::vector<T> rhs) {
    assert(int(rhs.size()) == a.rows());
    int rank = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < a.cols() && rank < a.rows(); ++col) {
        int piv = -1;
        for (int i = rank; i < a.rows(); ++i)
            if (!a.at(i, col).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != rank) {
            for (int j = 0; j < a.cols(); ++j) std::swap(a.at(piv, j), a.at(rank, j));
            std::swap(rhs[std::size_t(piv)], rhs[std::size_t(rank)]);
        }
        T pinv = a.at(rank, col).inverse();
        for (int j = col; j < a.cols(); ++j) a.at(rank, j) = a.at(rank, j) * pinv;
        rhs[std::size_t(rank)] = rhs[std::size_t(rank)] * pinv;
        for (int i = 0; i < a.rows(); ++i) {
            if (i == rank || a.at(i, col).is_zero()) continue;
            T f = a.at(i, col);
            for (int j = col; j < a.cols(); ++j) a.at(i, j) = a.at(i, j) - f * a.at(rank, j);
            rhs[std::size_t(i)] = rhs[std::size_t(i)] - f * rhs[std::size_t(rank)];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (int i = rank; i < a.rows(); ++i)
        if (!rhs[std::size_t(i)].is_zero()) return std::nullopt;
    std::vector<T> x(std::size_t(a.cols()), T(0));
    for (int i = 0; i < rank; ++i) x[std::size_t(pivot_col[std::size_t(i)])] = rhs[std::size_t(i)];
    return x;
}

} // namespace isoquat
