#ifndef STOCHEQ_ORACLE_HPP
#define STOCHEQ_ORACLE_HPP

// Reference methods that do not use minors: power iteration by repeated
// squaring, uniform damping, and a direct solve of pi (I - P) = 0, sum = 1.

#include <stocheq/equilibrium.hpp>
#include <stocheq/errors.hpp>

#include <cmath>
#include <limits>

namespace stocheq {

struct PowerMethodOptions {
    double tol = 1e-12;
    int max_squarings = 60;
    /// Stop as stalled once spread(m+1) / spread(m) > stall_ratio for
    /// stall_run consecutive squarings.
    double stall_ratio = 0.99;
    int stall_run = 5;
};

struct PowerMethodReport {
    /// Number of squarings performed: the final power is P^(2^iterations).
    int iterations = 0;
    /// max over columns of (max - min) over rows.
    double final_spread = 0;
    ProbabilityVector<double> pi_estimate;
    bool converged = false;
    /// The spread stopped shrinking before max_squarings.
    bool stalled = false;
    /// P^2 == P on the first squaring while the rows still differ: P is a
    /// fixed point of squaring (P = I is the typical case) and the averaged
    /// row says nothing about a unique equilibrium.
    bool idempotent = false;
};

namespace detail {

inline double column_spread(const Matrix<double>& m) {
    double worst = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            lo = std::min(lo, m(i, j));
            hi = std::max(hi, m(i, j));
        }
        worst = std::max(worst, hi - lo);
    }
    return worst;
}

inline ProbabilityVector<double> average_row(const Matrix<double>& m) {
    ProbabilityVector<double> pi{std::vector<double>(m.cols(), 0.0)};
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) pi.values[j] += m(i, j);
    double total = 0;
    for (double x : pi.values) total += x;
    for (double& x : pi.values) x /= total;
    return pi;
}

}  // namespace detail

/// P -> P^2 -> P^4 -> ... until every column of the power is constant to
/// within tol. Exact inputs are converted to float first.
template <Scalar T>
PowerMethodReport power_method(const StochasticMatrix<T>& p, const PowerMethodOptions& opts = {}) {
    Matrix<double> power = matrix_cast<double>(p.matrix());
    PowerMethodReport report;
    double spread = detail::column_spread(power);
    int stall = 0;
    while (spread > opts.tol && report.iterations < opts.max_squarings) {
        Matrix<double> next = power * power;
        // Squaring drifts off the simplex slowly; pull the rows back.
        for (std::size_t i = 0; i < next.rows(); ++i) {
            double s = 0;
            for (double x : next.row(i)) s += x;
            for (double& x : next.row(i)) x /= s;
        }
        if (report.iterations == 0 && next == power) report.idempotent = true;
        const double next_spread = detail::column_spread(next);
        ++report.iterations;
        stall = (next_spread > opts.stall_ratio * spread) ? stall + 1 : 0;
        power = std::move(next);
        spread = next_spread;
        if (report.idempotent || stall >= opts.stall_run) {
            report.stalled = spread > opts.tol;
            break;
        }
    }
    report.final_spread = spread;
    report.converged = spread <= opts.tol;
    report.pi_estimate = detail::average_row(power);
    return report;
}

/// (1 - eps) P + (eps / n) J. Strictly positive and stochastic for
/// 0 < eps < 1; exact inputs stay exact.
template <Scalar T>
StochasticMatrix<T> perturb(const StochasticMatrix<T>& p, const T& epsilon) {
    if (!(epsilon > T(0)) || !(epsilon < T(1)))
        throw DomainError("perturbation epsilon = " + format_scalar(epsilon) + " is outside (0, 1)");
    const std::size_t n = p.size();
    const T keep = T(1) - epsilon;
    const T spread = epsilon / T(static_cast<long>(n));
    Matrix<T> m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = keep * p(i, j) + spread;
    return StochasticMatrix<T>(std::move(m));
}

/// Solves pi (I - P) = 0 with the last equation replaced by sum(pi) = 1.
/// Throws SingularSystem when the equilibrium is not unique.
template <Scalar T>
ProbabilityVector<T> linear_solve_stationary(const StochasticMatrix<T>& p) {
    const std::size_t n = p.size();
    // Transposed system A x = b with A = (I - P)^T, last row all ones.
    Matrix<T> a = identity_minus(p).transpose();
    for (std::size_t j = 0; j < n; ++j) a(n - 1, j) = T(1);
    std::vector<T> b(n, T(0));
    b[n - 1] = T(1);

    double scale = 0;
    if constexpr (!is_exact_v<T>)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::fabs(a(i, j)));

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        if constexpr (is_exact_v<T>) {
            while (piv < n && a(piv, k) == 0) ++piv;
            if (piv == n) throw SingularSystem("stationary system is singular: equilibrium is not unique");
        } else {
            for (std::size_t i = k + 1; i < n; ++i)
                if (std::fabs(a(i, k)) > std::fabs(a(piv, k))) piv = i;
            if (std::fabs(a(piv, k)) <= kFloatPivotCutoff * scale)
                throw SingularSystem("stationary system is singular: equilibrium is not unique");
        }
        a.swap_rows(piv, k);
        std::swap(b[piv], b[k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (ScalarTraits<T>::is_zero(a(i, k))) continue;
            const T f = a(i, k) / a(k, k);
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
            b[i] -= f * b[k];
        }
    }
    ProbabilityVector<T> pi{std::vector<T>(n, T(0))};
    for (std::size_t k = n; k-- > 0;) {
        T acc = b[k];
        for (std::size_t j = k + 1; j < n; ++j) acc -= a(k, j) * pi.values[j];
        pi.values[k] = acc / a(k, k);
    }
    return pi;
}

}  // namespace stocheq

#endif  // STOCHEQ_ORACLE_HPP
