#ifndef STOCHEQ_CLOSED_FORM_HPP
#define STOCHEQ_CLOSED_FORM_HPP

// Explicit equilibrium formulas for n = 2, 3, 4, 5.
//
// These are independent of the general minor machinery (n = 2, 3, 4 use the
// expanded polynomials, n = 5 builds the four-by-four principal submatrices
// entry by entry) and exist mainly as cross-checks of stationary().
//
// Parameter layout is banded: row i lists its off-diagonal entries starting
// one column to the right of the diagonal and wrapping around. With rows
// named p, q, r, s, t:
//
//   n = 3:  [ 1-p1-p2   p1       p2     ]
//           [ q2        1-q1-q2  q1     ]
//           [ r1        r2       1-r1-r2]
//
//   n = 4:  [ 1-Σp  p1    p2    p3  ]
//           [ q3    1-Σq  q1    q2  ]
//           [ r2    r3    1-Σr  r1  ]
//           [ s1    s2    s3    1-Σs]
//
//   n = 5:  [ 1-Σp  p1    p2    p3    p4  ]
//           [ q4    1-Σq  q1    q2    q3  ]
//           [ r3    r4    1-Σr  r1    r2  ]
//           [ s2    s3    s4    1-Σs  s1  ]
//           [ t1    t2    t3    t4    1-Σt]
//
// n = 2 is the special case [[1-p, p], [q, 1-q]].

#include <stocheq/equilibrium.hpp>
#include <stocheq/errors.hpp>

#include <array>
#include <string>

namespace stocheq {

/// Off-diagonal parameters of an N-state chain in banded layout:
/// rows[i][k] = P(i, (i + k + 1) mod N).
template <Scalar T, std::size_t N>
struct BandedParams {
    static_assert(N >= 2);
    std::array<std::array<T, N - 1>, N> rows;
};

template <Scalar T>
using Params3 = BandedParams<T, 3>;
template <Scalar T>
using Params4 = BandedParams<T, 4>;
template <Scalar T>
using Params5 = BandedParams<T, 5>;

namespace detail {

template <Scalar T>
void check_probability(const T& x, const char* name) {
    if (!ScalarTraits<T>::is_nonnegative(x) || !ScalarTraits<T>::is_nonpositive(T(x - T(1))))
        throw DomainError(std::string(name) + " = " + format_scalar(x) + " is outside [0, 1]");
}

template <Scalar T, std::size_t N>
void check_params(const BandedParams<T, N>& params) {
    static constexpr char row_names[] = "pqrst";
    for (std::size_t i = 0; i < N; ++i) {
        T sum(0);
        for (std::size_t k = 0; k + 1 < N; ++k) {
            const std::string name = std::string(1, row_names[i % 5]) + std::to_string(k + 1);
            check_probability(params.rows[i][k], name.c_str());
            sum += params.rows[i][k];
        }
        if (!ScalarTraits<T>::is_nonpositive(T(sum - T(1))))
            throw DomainError("parameters of row " + std::to_string(i + 1) + " sum to " + format_scalar(sum) +
                              ", more than 1");
    }
}

template <Scalar T>
EquilibriumResult<T> from_weights(WeightVector<T> w, const StochasticMatrix<T>& p) {
    if (w.total() > T(0)) {
        ProbabilityVector<T> pi = normalize(w);
        return Unique<T>{std::move(pi), std::move(w)};
    }
    return Degenerate<T>{equilibrium_polytope(p), std::move(w)};
}

}  // namespace detail

/// The stochastic matrix described by banded parameters.
template <Scalar T, std::size_t N>
StochasticMatrix<T> banded_matrix(const BandedParams<T, N>& params) {
    detail::check_params(params);
    Matrix<T> m(N);
    for (std::size_t i = 0; i < N; ++i) {
        T off(0);
        for (std::size_t k = 0; k + 1 < N; ++k) {
            m(i, (i + k + 1) % N) = params.rows[i][k];
            off += params.rows[i][k];
        }
        m(i, i) = T(1) - off;
    }
    return StochasticMatrix<T>(std::move(m));
}

/// pi = [q, p] / (p + q) for P = [[1-p, p], [q, 1-q]].
template <Scalar T>
EquilibriumResult<T> closed_form_2(const T& p, const T& q) {
    detail::check_probability(p, "p");
    detail::check_probability(q, "q");
    const BandedParams<T, 2> params{{{{p}, {q}}}};
    return detail::from_weights(WeightVector<T>{{q, p}}, banded_matrix(params));
}

/// w1 = q1 r1 + q2 r1 + q2 r2 and its cyclic images
/// (q, r) -> (r, p) -> (p, q).
template <Scalar T>
EquilibriumResult<T> closed_form_3(const Params3<T>& params) {
    const StochasticMatrix<T> p = banded_matrix(params);
    auto w = [](const std::array<T, 2>& a, const std::array<T, 2>& b) {
        return T(a[0] * b[0] + a[1] * b[0] + a[1] * b[1]);
    };
    const auto& [pp, qq, rr] = params.rows;
    return detail::from_weights(WeightVector<T>{{w(qq, rr), w(rr, pp), w(pp, qq)}}, p);
}

namespace detail {

// Sixteen-term weight of the first state of a 4-state chain, written in the
// other three rows' parameters (a, b, c) = (q, r, s).
template <Scalar T>
T weight4(const std::array<T, 3>& q, const std::array<T, 3>& r, const std::array<T, 3>& s) {
    const auto& [q1, q2, q3] = q;
    const auto& [r1, r2, r3] = r;
    const auto& [s1, s2, s3] = s;
    return q1 * r1 * s1 + q1 * r2 * s1 + q1 * r2 * s2 + q1 * r2 * s3 +
           q2 * r1 * s1 + q2 * r2 * s1 + q2 * r2 * s3 + q2 * r3 * s1 +
           q3 * r1 * s1 + q3 * r1 * s2 + q3 * r2 * s1 + q3 * r2 * s2 +
           q3 * r2 * s3 + q3 * r3 * s1 + q3 * r3 * s2 + q3 * r3 * s3;
}

}  // namespace detail

/// Sixteen-term weights; w2..w4 follow from w1 under
/// (q, r, s) -> (r, s, p) -> (s, p, q) -> (p, q, r).
template <Scalar T>
EquilibriumResult<T> closed_form_4(const Params4<T>& params) {
    const StochasticMatrix<T> p = banded_matrix(params);
    const auto& [pp, qq, rr, ss] = params.rows;
    using detail::weight4;
    return detail::from_weights(
        WeightVector<T>{{weight4(qq, rr, ss), weight4(rr, ss, pp), weight4(ss, pp, qq), weight4(pp, qq, rr)}}, p);
}

/// Five weights, each the determinant of an explicitly assembled 4x4
/// principal submatrix of I - P.
template <Scalar T>
EquilibriumResult<T> closed_form_5(const Params5<T>& params) {
    const StochasticMatrix<T> p = banded_matrix(params);
    const auto& [a, b, c, d, e] = params.rows;  // p, q, r, s, t
    auto sum = [](const std::array<T, 4>& x) { return T(x[0] + x[1] + x[2] + x[3]); };
    const T sp = sum(a), sq = sum(b), sr = sum(c), ss = sum(d), st = sum(e);

    const Matrix<T> m1{{sq, -b[0], -b[1], -b[2]},
                       {-c[3], sr, -c[0], -c[1]},
                       {-d[2], -d[3], ss, -d[0]},
                       {-e[1], -e[2], -e[3], st}};
    const Matrix<T> m2{{sp, -a[1], -a[2], -a[3]},
                       {-c[2], sr, -c[0], -c[1]},
                       {-d[1], -d[3], ss, -d[0]},
                       {-e[0], -e[2], -e[3], st}};
    const Matrix<T> m3{{sp, -a[0], -a[2], -a[3]},
                       {-b[3], sq, -b[1], -b[2]},
                       {-d[1], -d[2], ss, -d[0]},
                       {-e[0], -e[1], -e[3], st}};
    const Matrix<T> m4{{sp, -a[0], -a[1], -a[3]},
                       {-b[3], sq, -b[0], -b[2]},
                       {-c[2], -c[3], sr, -c[1]},
                       {-e[0], -e[1], -e[2], st}};
    const Matrix<T> m5{{sp, -a[0], -a[1], -a[2]},
                       {-b[3], sq, -b[0], -b[1]},
                       {-c[2], -c[3], sr, -c[0]},
                       {-d[1], -d[2], -d[3], ss}};

    WeightVector<T> w{{determinant(m1), determinant(m2), determinant(m3), determinant(m4), determinant(m5)}};
    if constexpr (!is_exact_v<T>)
        for (auto& x : w.values) x = std::max(x, 0.0);
    return detail::from_weights(std::move(w), p);
}

}  // namespace stocheq

#endif  // STOCHEQ_CLOSED_FORM_HPP
