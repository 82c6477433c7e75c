#ifndef STOCHEQ_WEIGHTS_HPP
#define STOCHEQ_WEIGHTS_HPP

// Minor weights w_i = M_ii(I - P).
//
// adj(I - P) annihilates I - P from both sides. When 1 is a simple eigenvalue
// of P the adjugate has rank one, so it equals u * pi up to scale, and its
// diagonal (the principal minors of I - P) is proportional to pi. I - P is a
// Z-matrix with nonnegative row sums, so every principal minor is >= 0.

#include <stocheq/determinant.hpp>
#include <stocheq/stochastic.hpp>

#include <algorithm>
#include <numeric>
#include <vector>

namespace stocheq {

/// Unnormalized stationary weights, one per state.
template <Scalar T>
struct WeightVector {
    std::vector<T> values;

    std::size_t size() const noexcept { return values.size(); }
    const T& operator[](std::size_t i) const { return values[i]; }
    T total() const { return std::accumulate(values.begin(), values.end(), T(0)); }
    friend bool operator==(const WeightVector&, const WeightVector&) = default;
};

/// Row probability vector.
template <Scalar T>
struct ProbabilityVector {
    std::vector<T> values;

    std::size_t size() const noexcept { return values.size(); }
    const T& operator[](std::size_t i) const { return values[i]; }
    std::span<const T> span() const noexcept { return values; }
    friend bool operator==(const ProbabilityVector&, const ProbabilityVector&) = default;
};

template <Scalar T>
WeightVector<T> minor_weights(const StochasticMatrix<T>& p) {
    const Matrix<T> z = identity_minus(p);
    WeightVector<T> w;
    w.values.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        T m = principal_minor(z, i);
        if constexpr (!is_exact_v<T>) m = std::max(m, 0.0);
        w.values.push_back(std::move(m));
    }
    return w;
}

/// w / sum(w). Caller guarantees sum(w) > 0.
template <Scalar T>
ProbabilityVector<T> normalize(const WeightVector<T>& w) {
    const T total = w.total();
    ProbabilityVector<T> pi;
    pi.values.reserve(w.size());
    for (const T& x : w.values) pi.values.push_back(x / total);
    return pi;
}

/// Places a distribution over `states` into an n-vector, zeros elsewhere.
template <Scalar T>
ProbabilityVector<T> embed(const ProbabilityVector<T>& local, std::span<const std::size_t> states, std::size_t n) {
    ProbabilityVector<T> out{std::vector<T>(n, T(0))};
    for (std::size_t k = 0; k < states.size(); ++k) out.values[states[k]] = local.values[k];
    return out;
}

}  // namespace stocheq

#endif  // STOCHEQ_WEIGHTS_HPP
