#ifndef STOCHEQ_EQUILIBRIUM_HPP
#define STOCHEQ_EQUILIBRIUM_HPP

// Stationary distributions from principal minors.
//
//   pi_i = M_ii(I - P) / sum_k M_kk(I - P)
//
// The sum vanishes exactly when 1 is a repeated eigenvalue of P, i.e. when
// the chain has two or more closed classes. That case is not an error: the
// result carries the class decomposition and the vertices of the
// equilibrium polytope instead.

#include <stocheq/errors.hpp>
#include <stocheq/reducibility.hpp>
#include <stocheq/weights.hpp>

#include <cmath>
#include <variant>

namespace stocheq {

template <Scalar T>
struct Unique {
    ProbabilityVector<T> pi;
    WeightVector<T> weights;
};

template <Scalar T>
struct Degenerate {
    DecompositionReport<T> report;
    WeightVector<T> weights;
};

template <Scalar T>
class EquilibriumResult {
public:
    EquilibriumResult(Unique<T> u) : v_(std::move(u)) {}
    EquilibriumResult(Degenerate<T> d) : v_(std::move(d)) {}

    bool is_unique() const noexcept { return std::holds_alternative<Unique<T>>(v_); }
    bool is_degenerate() const noexcept { return !is_unique(); }

    const Unique<T>& unique() const { return std::get<Unique<T>>(v_); }
    const Degenerate<T>& degenerate() const { return std::get<Degenerate<T>>(v_); }
    const ProbabilityVector<T>& pi() const { return unique().pi; }

    const WeightVector<T>& weights() const {
        return is_unique() ? unique().weights : degenerate().weights;
    }

private:
    std::variant<Unique<T>, Degenerate<T>> v_;
};

/// Float-mode numeric zero test for sum(w):
/// n * 1e-12 * (1 + max|(I-P)_ij|)^(n-1).
template <Scalar T>
double weight_sum_cutoff(const StochasticMatrix<T>& p) {
    const std::size_t n = p.size();
    double max_entry = 0;
    const Matrix<T> z = identity_minus(p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) max_entry = std::max(max_entry, ScalarTraits<T>::to_double(ScalarTraits<T>::abs(z(i, j))));
    return static_cast<double>(n) * 1e-12 * std::pow(1.0 + max_entry, static_cast<double>(n) - 1.0);
}

/// Equilibrium of p. Exact mode decides uniqueness by sum(w) != 0. Float
/// mode decides it from the class structure, which is tolerance-free, and
/// falls back to the closed-class vertex when sum(w) is numerically zero.
template <Scalar T>
EquilibriumResult<T> stationary(const StochasticMatrix<T>& p, const StructureOptions& opts = {}) {
    WeightVector<T> w = minor_weights(p);
    const T total = w.total();
    if constexpr (is_exact_v<T>) {
        if (total > 0) return Unique<T>{normalize(w), std::move(w)};
        DecompositionReport<T> report = equilibrium_polytope(p, opts);
        if (report.closed_class_count() < 2)
            throw InternalInconsistency("minor weights vanish but the chain has a single closed class");
        return Degenerate<T>{std::move(report), std::move(w)};
    } else {
        if (communicating_classes(p, opts).closed_class_count() >= 2)
            return Degenerate<T>{equilibrium_polytope(p, opts), std::move(w)};
        if (total > weight_sum_cutoff(p)) return Unique<T>{normalize(w), std::move(w)};
        DecompositionReport<T> report = equilibrium_polytope(p, opts);
        return Unique<T>{std::move(report.vertex_equilibria.front()), std::move(w)};
    }
}

/// pi_i / pi_j = M_ii(I-P) / M_jj(I-P), using two minors only (0-based).
template <Scalar T>
T relative_probability(const StochasticMatrix<T>& p, std::size_t i, std::size_t j) {
    if (i >= p.size() || j >= p.size()) throw std::out_of_range("relative_probability: state index out of range");
    const Matrix<T> z = identity_minus(p);
    const T wj = principal_minor(z, j);
    if (!(ScalarTraits<T>::abs(wj) > T(0)))
        throw DivisionByZero("state " + std::to_string(j + 1) + " has zero minor weight");
    if (i == j) return T(1);
    return principal_minor(z, i) / wj;
}

/// Max-norm residual |pi P - pi|_inf.
template <Scalar T>
T verify_equilibrium(const ProbabilityVector<T>& pi, const StochasticMatrix<T>& p) {
    if (pi.size() != p.size())
        throw DimensionMismatch("verify_equilibrium: vector has " + std::to_string(pi.size()) + " entries, matrix has " +
                                std::to_string(p.size()) + " states");
    const std::vector<T> image = left_multiply(pi.span(), p.matrix());
    T worst(0);
    for (std::size_t j = 0; j < image.size(); ++j) {
        T r = ScalarTraits<T>::abs(T(image[j] - pi[j]));
        if (r > worst) worst = r;
    }
    return worst;
}

}  // namespace stocheq

#endif  // STOCHEQ_EQUILIBRIUM_HPP
