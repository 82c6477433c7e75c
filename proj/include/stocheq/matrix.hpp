#ifndef STOCHEQ_MATRIX_HPP
#define STOCHEQ_MATRIX_HPP

#include <stocheq/scalar.hpp>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace stocheq {

/// Dense row-major matrix. Square in every public algorithm of this library;
/// rectangular shapes are only used for small internal work arrays.
template <Scalar T>
class Matrix {
public:
    using value_type = T;

    Matrix() = default;
    explicit Matrix(std::size_t n) : Matrix(n, n) {}
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return rows_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        std::swap_ranges(data_.begin() + a * cols_, data_.begin() + (a + 1) * cols_, data_.begin() + b * cols_);
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        check_same_shape(a, b);
        Matrix r = a;
        for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] += b.data_[k];
        return r;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        check_same_shape(a, b);
        Matrix r = a;
        for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] -= b.data_[k];
        return r;
    }

    friend Matrix operator*(const T& s, const Matrix& a) {
        Matrix r = a;
        for (auto& x : r.data_) x *= s;
        return r;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: inner dimension mismatch");
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (ScalarTraits<T>::is_zero(aik)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }

private:
    static void check_same_shape(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("Matrix: shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// Row vector times matrix.
template <Scalar T>
std::vector<T> left_multiply(std::span<const T> v, const Matrix<T>& m) {
    if (v.size() != m.rows()) throw std::invalid_argument("left_multiply: dimension mismatch");
    std::vector<T> out(m.cols(), T(0));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (ScalarTraits<T>::is_zero(v[i])) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
    }
    return out;
}

/// Copy of m with row i and column j removed.
template <Scalar T>
Matrix<T> delete_row_col(const Matrix<T>& m, std::size_t i, std::size_t j) {
    if (i >= m.rows() || j >= m.cols()) throw std::out_of_range("delete_row_col: index out of range");
    Matrix<T> out(m.rows() - 1, m.cols() - 1);
    for (std::size_t r = 0, ro = 0; r < m.rows(); ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, co = 0; c < m.cols(); ++c) {
            if (c == j) continue;
            out(ro, co++) = m(r, c);
        }
        ++ro;
    }
    return out;
}

/// Principal submatrix on the given (sorted or unsorted) index set.
template <Scalar T>
Matrix<T> submatrix(const Matrix<T>& m, std::span<const std::size_t> idx) {
    Matrix<T> out(idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b < idx.size(); ++b) out(a, b) = m(idx[a], idx[b]);
    return out;
}

/// Relabel states: result(perm[i], perm[j]) = m(i, j), i.e. S m S^T for the
/// permutation matrix S sending state i to perm[i].
template <Scalar T>
Matrix<T> permute(const Matrix<T>& m, std::span<const std::size_t> perm) {
    if (perm.size() != m.rows() || !m.is_square()) throw std::invalid_argument("permute: dimension mismatch");
    Matrix<T> out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(perm[i], perm[j]) = m(i, j);
    return out;
}

template <Scalar U, Scalar T>
Matrix<U> matrix_cast(const Matrix<T>& m) {
    Matrix<U> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = static_cast<U>(m(i, j));
    return out;
}

}  // namespace stocheq

#endif  // STOCHEQ_MATRIX_HPP
