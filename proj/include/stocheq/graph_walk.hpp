#ifndef STOCHEQ_GRAPH_WALK_HPP
#define STOCHEQ_GRAPH_WALK_HPP

// Simple random walk on a directed multigraph.
//
// With adjacency A (a_ij = number of links i -> j) and out-degrees
// d = A u, the walk is P = D^-1 A. Working with the integer matrix D - A
// instead of I - P gives
//
//   pi_i  ∝  d_i * M_ii(D - A)
//
// so every minor, numerator and the common denominator are integers and
// the only division is the final normalization.

#include <stocheq/determinant.hpp>
#include <stocheq/equilibrium.hpp>
#include <stocheq/errors.hpp>
#include <stocheq/reducibility.hpp>

#include <vector>

namespace stocheq {

class Graph {
public:
    explicit Graph(Matrix<BigInt> adjacency) : a_(std::move(adjacency)) {
        if (!a_.is_square() || a_.rows() == 0) throw DimensionMismatch("adjacency matrix must be square and non-empty");
        for (std::size_t i = 0; i < a_.rows(); ++i)
            for (std::size_t j = 0; j < a_.cols(); ++j)
                if (a_(i, j) < 0)
                    throw DomainError("negative link count at row " + std::to_string(i + 1) + ", column " +
                                      std::to_string(j + 1));
    }

    /// Empty graph on n nodes.
    static Graph empty(std::size_t n) { return Graph(Matrix<BigInt>(n), unchecked{}); }

    /// Adds `multiplicity` links i -> j (0-based).
    void add_edge(std::size_t i, std::size_t j, const BigInt& multiplicity = 1) {
        if (i >= size() || j >= size()) throw std::out_of_range("add_edge: node index out of range");
        if (multiplicity < 0) throw DomainError("add_edge: negative multiplicity");
        a_(i, j) += multiplicity;
    }

    std::size_t size() const noexcept { return a_.rows(); }
    const Matrix<BigInt>& adjacency() const noexcept { return a_; }

    bool is_symmetric() const { return a_ == a_.transpose(); }

private:
    struct unchecked {};
    Graph(Matrix<BigInt> a, unchecked) : a_(std::move(a)) {}

    Matrix<BigInt> a_;
};

struct DegreeData {
    std::vector<BigInt> degrees;
};

/// Out-degrees d_i = sum_j a_ij; throws ZeroOutDegree for an empty row.
inline DegreeData degree_vector(const Graph& g) {
    DegreeData d;
    d.degrees.reserve(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        BigInt s = 0;
        for (const BigInt& x : g.adjacency().row(i)) s += x;
        if (s == 0) throw ZeroOutDegree(i);
        d.degrees.push_back(std::move(s));
    }
    return d;
}

/// P = D^-1 A in exact arithmetic.
inline StochasticMatrix<Rational> walk_matrix(const Graph& g) {
    const DegreeData d = degree_vector(g);
    Matrix<Rational> p(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) p(i, j) = Rational(g.adjacency()(i, j), d.degrees[i]);
    return StochasticMatrix<Rational>(std::move(p));
}

/// D - A.
inline Matrix<BigInt> degree_minus_adjacency(const Graph& g) {
    const DegreeData d = degree_vector(g);
    Matrix<BigInt> l(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) l(i, j) = (i == j ? d.degrees[i] : BigInt(0)) - g.adjacency()(i, j);
    return l;
}

struct GraphEquilibrium {
    EquilibriumResult<Rational> result;
    std::vector<BigInt> degrees;
    /// M_ii(D - A), all nonnegative.
    std::vector<BigInt> minors;
    /// d_i * M_ii(D - A).
    std::vector<BigInt> numerators;
    /// Sum of numerators; zero in the degenerate case.
    BigInt denominator;
};

inline GraphEquilibrium graph_stationary(const Graph& g) {
    const Matrix<BigInt> l = degree_minus_adjacency(g);
    GraphEquilibrium out{EquilibriumResult<Rational>(Unique<Rational>{}), degree_vector(g).degrees, {}, {}, 0};
    for (std::size_t i = 0; i < g.size(); ++i) {
        BigInt m = principal_minor(l, i);
        if (m < 0) throw InternalInconsistency("negative principal minor of D - A");
        out.numerators.push_back(out.degrees[i] * m);
        out.denominator += out.numerators.back();
        out.minors.push_back(std::move(m));
    }

    WeightVector<Rational> w;
    for (const BigInt& x : out.numerators) w.values.emplace_back(x);
    if (out.denominator > 0) {
        ProbabilityVector<Rational> pi;
        for (const BigInt& x : out.numerators) pi.values.emplace_back(x, out.denominator);
        out.result = Unique<Rational>{std::move(pi), std::move(w)};
    } else {
        out.result = Degenerate<Rational>{equilibrium_polytope(walk_matrix(g)), std::move(w)};
    }
    return out;
}

}  // namespace stocheq

#endif  // STOCHEQ_GRAPH_WALK_HPP
