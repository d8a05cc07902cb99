#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "mvop/numeric.hpp"

namespace mvop {

/// Dense row-major matrix over a backend scalar.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix out(n, n);
        for (std::size_t i = 0; i < n; ++i) out(i, i) = T(1);
        return out;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix transpose() const {
        Matrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    Matrix block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const {
        Matrix out(nrows, ncols);
        for (std::size_t i = 0; i < nrows; ++i)
            for (std::size_t j = 0; j < ncols; ++j) out(i, j) = (*this)(row0 + i, col0 + j);
        return out;
    }

    void set_block(std::size_t row0, std::size_t col0, const Matrix& b) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) (*this)(row0 + i, col0 + j) = b(i, j);
    }

    Matrix& operator+=(const Matrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Matrix& operator*=(const T& s) {
        for (auto& v : data_) v *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
    friend Matrix operator*(const T& s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
        Matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (is_zero(a(i, k))) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
            }
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    void check_same(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// Largest entrywise |a - b|.
template <class T>
T max_abs_diff(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix shape mismatch");
    T worst(0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            T d = magnitude(T(a(i, j) - b(i, j)));
            if (d > worst) worst = d;
        }
    return worst;
}

template <class T>
T max_abs(const Matrix<T>& a) {
    return max_abs_diff(a, Matrix<T>(a.rows(), a.cols()));
}

template <class T>
bool is_lower_triangular(const Matrix<T>& a) {
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j)
            if (!is_zero(a(i, j))) return false;
    return true;
}

template <class T>
bool is_upper_triangular(const Matrix<T>& a) {
    return is_lower_triangular(a.transpose());
}

template <class T>
bool is_diagonal(const Matrix<T>& a) {
    return is_lower_triangular(a) && is_upper_triangular(a);
}

template <class T>
Matrix<double> to_double(const Matrix<T>& a) {
    Matrix<double> out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = to_double(a(i, j));
    return out;
}

/// Inverse by Gauss-Jordan elimination with partial pivoting. On the exact
/// backend any nonzero pivot is exact. Returns false if the matrix is singular.
template <class T>
bool invert(const Matrix<T>& a, Matrix<T>& inverse) {
    const std::size_t n = a.rows();
    Matrix<T> work = a;
    inverse = Matrix<T>::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        T best = magnitude(work(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            T cand = magnitude(work(r, col));
            if (cand > best) {
                best = cand;
                pivot = r;
            }
        }
        if (is_zero(best)) return false;
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(work(col, j), work(pivot, j));
                std::swap(inverse(col, j), inverse(pivot, j));
            }
        }
        const T inv_pivot = T(1) / work(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            work(col, j) *= inv_pivot;
            inverse(col, j) *= inv_pivot;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || is_zero(work(r, col))) continue;
            const T factor = work(r, col);
            for (std::size_t j = 0; j < n; ++j) {
                work(r, j) -= factor * work(col, j);
                inverse(r, j) -= factor * inverse(col, j);
            }
        }
    }
    return true;
}

/// Induced 1-norm (max column sum).
template <class T>
double norm_1(const Matrix<T>& a) {
    double best = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) s += std::fabs(to_double(a(i, j)));
        best = std::max(best, s);
    }
    return best;
}

/// Basis of the null space of `a` via reduced row echelon form. Entries with
/// magnitude <= tol count as zero (use tol = 0 on the exact backend).
template <class T>
std::vector<std::vector<T>> null_space(Matrix<T> a, double tol) {
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        T best = magnitude(a(r, c));
        for (std::size_t i = r + 1; i < rows; ++i) {
            T cand = magnitude(a(i, c));
            if (cand > best) {
                best = cand;
                pivot = i;
            }
        }
        if (is_zero(best) || to_double(best) <= tol) continue;
        for (std::size_t j = 0; j < cols; ++j) std::swap(a(r, j), a(pivot, j));
        const T inv_pivot = T(1) / a(r, c);
        for (std::size_t j = 0; j < cols; ++j) a(r, j) *= inv_pivot;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || is_zero(a(i, c))) continue;
            const T factor = a(i, c);
            for (std::size_t j = 0; j < cols; ++j) a(i, j) -= factor * a(r, j);
        }
        pivot_cols.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<T>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<T> v(cols, T(0));
        v[free] = T(1);
        for (std::size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = -a(k, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace mvop
