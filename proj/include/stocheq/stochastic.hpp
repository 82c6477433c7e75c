#ifndef STOCHEQ_STOCHASTIC_HPP
#define STOCHEQ_STOCHASTIC_HPP

#include <stocheq/determinant.hpp>
#include <stocheq/errors.hpp>
#include <stocheq/matrix.hpp>

#include <cmath>
#include <optional>
#include <string>

namespace stocheq {

/// Violation of the stochastic-matrix invariants. Coordinates are 0-based;
/// the message uses 1-based state labels.
struct NotStochastic : DomainError {
    NotStochastic(const std::string& what, std::size_t row, std::optional<std::size_t> col = std::nullopt)
        : DomainError(what), row(row), col(col) {}
    std::size_t row;
    std::optional<std::size_t> col;
};

inline constexpr double kFloatNegativeSlack = 1e-12;
inline constexpr double kFloatRowSumTolerance = 1e-9;

/// Square matrix with nonnegative entries and unit row sums.
///
/// Exact inputs must satisfy both conditions exactly. Float inputs may carry
/// entries down to -1e-12 (clamped to 0) and row sums within 1e-9 of 1
/// (rows are then renormalized).
template <Scalar T>
class StochasticMatrix {
public:
    explicit StochasticMatrix(Matrix<T> m) : m_(std::move(m)) { validate(); }

    static StochasticMatrix identity(std::size_t n) { return StochasticMatrix(Matrix<T>::identity(n)); }

    std::size_t size() const noexcept { return m_.rows(); }
    const Matrix<T>& matrix() const noexcept { return m_; }
    const T& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    friend bool operator==(const StochasticMatrix&, const StochasticMatrix&) = default;

private:
    void validate() {
        const std::size_t n = m_.rows();
        if (n == 0 || !m_.is_square())
            throw NotStochastic("stochastic matrix must be square and non-empty", 0);
        for (std::size_t i = 0; i < n; ++i) {
            T sum(0);
            for (std::size_t j = 0; j < n; ++j) {
                T& x = m_(i, j);
                if constexpr (is_exact_v<T>) {
                    if (x < 0) throw NotStochastic(entry_message("negative entry", i, j), i, j);
                } else {
                    if (!std::isfinite(x)) throw NotStochastic(entry_message("non-finite entry", i, j), i, j);
                    if (x < -kFloatNegativeSlack) throw NotStochastic(entry_message("negative entry", i, j), i, j);
                    if (x < 0) x = 0;
                }
                sum += x;
            }
            if constexpr (is_exact_v<T>) {
                if (sum != 1)
                    throw NotStochastic("row " + std::to_string(i + 1) + " sums to " + format_scalar(sum) + ", not 1", i);
            } else {
                if (std::fabs(sum - 1.0) > kFloatRowSumTolerance)
                    throw NotStochastic("row " + std::to_string(i + 1) + " sums to " + format_scalar(sum) + ", not 1", i);
                for (std::size_t j = 0; j < n; ++j) m_(i, j) /= sum;
            }
        }
    }

    static std::string entry_message(const char* what, std::size_t i, std::size_t j) {
        return std::string(what) + " at row " + std::to_string(i + 1) + ", column " + std::to_string(j + 1);
    }

    Matrix<T> m_;
};

/// I - P, the singular Z-matrix whose principal minors carry the equilibrium.
template <Scalar T>
Matrix<T> identity_minus(const StochasticMatrix<T>& p) {
    return Matrix<T>::identity(p.size()) - p.matrix();
}

/// Restriction of p to a closed set of states. Throws if mass leaves the set.
template <Scalar T>
StochasticMatrix<T> restrict_to(const StochasticMatrix<T>& p, std::span<const std::size_t> states) {
    return StochasticMatrix<T>(submatrix(p.matrix(), states));
}

template <Scalar U, Scalar T>
StochasticMatrix<U> stochastic_cast(const StochasticMatrix<T>& p) {
    return StochasticMatrix<U>(matrix_cast<U>(p.matrix()));
}

}  // namespace stocheq

#endif  // STOCHEQ_STOCHASTIC_HPP
