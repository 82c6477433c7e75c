#ifndef STOCHEQ_DETERMINANT_HPP
#define STOCHEQ_DETERMINANT_HPP

// Determinants, minors, adjugate and the Z-matrix check.
//
// Exact path: every row of a rational matrix is scaled by the lcm of its
// denominators, the resulting integer matrix goes through fraction-free
// Bareiss elimination, and the row scales are divided back out at the end.
// Integer matrices whose Hadamard bound stays below 2^62 run Bareiss in
// 64-bit words with 128-bit products; everything else uses BigInt.
//
// Float path: Gaussian elimination with partial pivoting. A pivot smaller
// than kFloatPivotCutoff times the largest absolute row sum of the input is
// treated as structurally zero and the determinant reported as 0.

#include <stocheq/errors.hpp>
#include <stocheq/matrix.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

namespace stocheq {

inline constexpr double kFloatPivotCutoff = 1e-14;

/// Above this size adjugate() switches from n^2 minors to det * inverse
/// whenever the matrix is nonsingular.
inline constexpr std::size_t kAdjugateMinorLimit = 12;

namespace detail {

// Fraction-free elimination on a square integer work array (consumed).
// Int is the storage type, Wide must hold the product of two Int values.
template <typename Int, typename Wide>
Int bareiss_in_place(std::vector<Int>& a, std::size_t n) {
    if (n == 0) return Int(1);
    auto at = [&](std::size_t i, std::size_t j) -> Int& { return a[i * n + j]; };
    bool negate = false;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && at(p, k) == 0) ++p;
            if (p == n) return Int(0);
            for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
            negate = !negate;
        }
        const Wide pivot = at(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const Wide lead = at(i, k);
            for (std::size_t j = k + 1; j < n; ++j) {
                Wide v = Wide(at(i, j)) * pivot - lead * Wide(at(k, j));
                at(i, j) = static_cast<Int>(v / Wide(prev));
            }
            at(i, k) = 0;
        }
        prev = at(k, k);
    }
    Int d = at(n - 1, n - 1);
    return negate ? Int(-d) : d;
}

// Hadamard bound check: true when every minor of m (and therefore every
// Bareiss intermediate) fits in 62 bits.
inline bool fits_machine_bareiss(const Matrix<BigInt>& m) {
    long double log2_bound = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        long double norm2 = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const BigInt& x = m(i, j);
            if (boost::multiprecision::msb(BigInt(abs(x)) | 1) >= 62) return false;
            const long double v = static_cast<long double>(x);
            norm2 += v * v;
        }
        if (norm2 > 1) log2_bound += 0.5L * std::log2(norm2);
    }
    return log2_bound < 61.0L;
}

}  // namespace detail

/// Determinant of a square integer matrix. Fraction-free; uses machine words
/// when the Hadamard bound allows it.
inline BigInt integer_determinant(const Matrix<BigInt>& m) {
    if (!m.is_square()) throw DimensionMismatch("determinant: matrix is not square");
    const std::size_t n = m.rows();
    if (detail::fits_machine_bareiss(m)) {
        std::vector<std::int64_t> a(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a[i * n + j] = static_cast<std::int64_t>(m(i, j));
        return BigInt(detail::bareiss_in_place<std::int64_t, __int128>(a, n));
    }
    std::vector<BigInt> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
    return detail::bareiss_in_place<BigInt, BigInt>(a, n);
}

/// Scales each row by the lcm of its denominators. Returns the integer
/// matrix and the product of the scales, so det(m) = det(result) / scale.
inline std::pair<Matrix<BigInt>, BigInt> clear_denominators(const Matrix<Rational>& m) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    Matrix<BigInt> out(m.rows(), m.cols());
    BigInt scale = 1;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        BigInt l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) l = boost::multiprecision::lcm(l, BigInt(denominator(m(i, j))));
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = numerator(m(i, j)) * (l / denominator(m(i, j)));
        scale *= l;
    }
    return {std::move(out), std::move(scale)};
}

inline Rational determinant(const Matrix<Rational>& m) {
    if (!m.is_square()) throw DimensionMismatch("determinant: matrix is not square");
    auto [ints, scale] = clear_denominators(m);
    return Rational(integer_determinant(ints), scale);
}

inline BigInt determinant(const Matrix<BigInt>& m) { return integer_determinant(m); }

inline double determinant(const Matrix<double>& m) {
    if (!m.is_square()) throw DimensionMismatch("determinant: matrix is not square");
    const std::size_t n = m.rows();
    if (n == 0) return 1.0;
    double max_row = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0;
        for (double x : m.row(i)) s += std::fabs(x);
        max_row = std::max(max_row, s);
    }
    const double cutoff = kFloatPivotCutoff * max_row;
    Matrix<double> a = m;
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::fabs(a(i, k)) > std::fabs(a(p, k))) p = i;
        if (std::fabs(a(p, k)) <= cutoff) return 0.0;
        if (p != k) {
            a.swap_rows(p, k);
            det = -det;
        }
        const double pivot = a(k, k);
        det *= pivot;
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = a(i, k) / pivot;
            if (f == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return det;
}

/// Minor M_ij: determinant with row i and column j deleted (0-based).
template <Scalar T>
T minor(const Matrix<T>& m, std::size_t i, std::size_t j) {
    if (!m.is_square()) throw DimensionMismatch("minor: matrix is not square");
    if (i >= m.rows() || j >= m.cols()) throw std::out_of_range("minor: index out of range");
    if (m.rows() == 1) return T(1);
    return determinant(delete_row_col(m, i, j));
}

/// Principal minor M_ii (0-based). For a 1x1 matrix this is the empty
/// determinant, 1.
template <Scalar T>
T principal_minor(const Matrix<T>& m, std::size_t i) {
    return minor(m, i, i);
}

namespace detail {

// Gauss-Jordan inverse; std::nullopt when singular under the mode's zero test.
template <Scalar T>
std::optional<Matrix<T>> inverse(const Matrix<T>& m) {
    const std::size_t n = m.rows();
    Matrix<T> a = m;
    Matrix<T> inv = Matrix<T>::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        if constexpr (is_exact_v<T>) {
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return std::nullopt;
        } else {
            for (std::size_t i = k + 1; i < n; ++i)
                if (std::fabs(a(i, k)) > std::fabs(a(p, k))) p = i;
            if (a(p, k) == 0.0) return std::nullopt;
        }
        a.swap_rows(p, k);
        inv.swap_rows(p, k);
        const T pivot = a(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            a(k, j) /= pivot;
            inv(k, j) /= pivot;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || ScalarTraits<T>::is_zero(a(i, k))) continue;
            const T f = a(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

template <Scalar T>
Matrix<T> adjugate_by_minors(const Matrix<T>& m) {
    const std::size_t n = m.rows();
    Matrix<T> adj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            T c = minor(m, j, i);
            adj(i, j) = ((i + j) % 2 == 0) ? c : T(-c);
        }
    return adj;
}

}  // namespace detail

/// Classical adjoint: adj(m)(i,j) = (-1)^(i+j) M_ji(m), so that
/// adj(m) * m = m * adj(m) = det(m) I.
template <Scalar T>
Matrix<T> adjugate(const Matrix<T>& m) {
    if (!m.is_square()) throw DimensionMismatch("adjugate: matrix is not square");
    const std::size_t n = m.rows();
    if (n <= kAdjugateMinorLimit) return detail::adjugate_by_minors(m);
    // Rank-deficient inputs (rank n-1 gives the rank-1 adjugate) must keep
    // the minor path; only the invertible case can use the inverse.
    const T det = determinant(m);
    if (ScalarTraits<T>::is_zero(det)) return detail::adjugate_by_minors(m);
    if (auto inv = detail::inverse(m)) return det * *inv;
    return detail::adjugate_by_minors(m);
}

/// Nonnegative diagonal and nonpositive off-diagonal (float: 1e-12 slack).
template <Scalar T>
bool is_z_matrix(const Matrix<T>& m) {
    if (!m.is_square()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (i == j ? !ScalarTraits<T>::is_nonnegative(m(i, j)) : !ScalarTraits<T>::is_nonpositive(m(i, j)))
                return false;
        }
    return true;
}

}  // namespace stocheq

#endif  // STOCHEQ_DETERMINANT_HPP
