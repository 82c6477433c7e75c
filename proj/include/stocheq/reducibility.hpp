#ifndef STOCHEQ_REDUCIBILITY_HPP
#define STOCHEQ_REDUCIBILITY_HPP

// Communicating classes and the equilibrium polytope of a reducible chain.
//
// States i -> j are linked when p_ij is structurally nonzero (exact: != 0,
// float: > edge_threshold). Classes are the strongly connected components
// of that digraph; a class is closed when no link leaves it. Each closed
// class restricted to itself is an irreducible stochastic matrix with a
// unique equilibrium, and the set of all equilibria of P is the convex hull
// of those, embedded with zeros on the remaining states.

#include <stocheq/errors.hpp>
#include <stocheq/stochastic.hpp>
#include <stocheq/weights.hpp>

#include <algorithm>
#include <cstddef>
#include <vector>

namespace stocheq {

inline constexpr double kDefaultEdgeThreshold = 1e-14;

struct StructureOptions {
    /// Float mode only: entries above this count as transitions.
    double edge_threshold = kDefaultEdgeThreshold;
};

template <Scalar T>
struct DecompositionReport {
    /// Communicating classes, each sorted ascending, ordered by smallest member.
    std::vector<std::vector<std::size_t>> classes;
    std::vector<bool> closed;
    std::vector<std::size_t> transitory_states;
    /// One per closed class, in class order. Empty until filled by
    /// equilibrium_polytope().
    std::vector<ProbabilityVector<T>> vertex_equilibria;

    std::size_t closed_class_count() const {
        return static_cast<std::size_t>(std::count(closed.begin(), closed.end(), true));
    }
};

template <Scalar T>
bool is_edge(const T& x, const StructureOptions& opts = {}) {
    if constexpr (is_exact_v<T>) {
        return x != 0;
    } else {
        return x > opts.edge_threshold;
    }
}

namespace detail {

// Iterative Tarjan. Returns component id per node; ids are in reverse
// topological order of the condensation.
inline std::vector<std::size_t> tarjan(const std::vector<std::vector<std::size_t>>& adj) {
    const std::size_t n = adj.size();
    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, unvisited), low(n, 0), comp(n, unvisited);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::pair<std::size_t, std::size_t>> call;  // (node, next edge)
    std::size_t counter = 0, ncomp = 0;

    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != unvisited) continue;
        call.emplace_back(root, 0);
        while (!call.empty()) {
            auto& [v, e] = call.back();
            if (e == 0 && index[v] == unvisited) {
                index[v] = low[v] = counter++;
                stack.push_back(v);
                on_stack[v] = true;
            }
            if (e < adj[v].size()) {
                const std::size_t w = adj[v][e++];
                if (index[w] == unvisited) {
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = ncomp;
                } while (w != v);
                ++ncomp;
            }
            const std::size_t done = v;
            call.pop_back();
            if (!call.empty()) {
                const std::size_t parent = call.back().first;
                low[parent] = std::min(low[parent], low[done]);
            }
        }
    }
    return comp;
}

}  // namespace detail

/// Communicating classes and closed/transitory flags; vertex_equilibria is
/// left empty.
template <Scalar T>
DecompositionReport<T> communicating_classes(const StochasticMatrix<T>& p, const StructureOptions& opts = {}) {
    const std::size_t n = p.size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && is_edge(p(i, j), opts)) adj[i].push_back(j);

    const std::vector<std::size_t> comp = detail::tarjan(adj);
    const std::size_t ncomp = n ? *std::max_element(comp.begin(), comp.end()) + 1 : 0;

    std::vector<std::vector<std::size_t>> by_comp(ncomp);
    for (std::size_t i = 0; i < n; ++i) by_comp[comp[i]].push_back(i);
    // Deterministic order: by smallest member. Members are already ascending.
    std::sort(by_comp.begin(), by_comp.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });

    std::vector<std::size_t> class_of(n);
    for (std::size_t c = 0; c < by_comp.size(); ++c)
        for (std::size_t i : by_comp[c]) class_of[i] = c;

    DecompositionReport<T> report;
    report.closed.assign(by_comp.size(), true);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j : adj[i])
            if (class_of[j] != class_of[i]) report.closed[class_of[i]] = false;
    for (std::size_t c = 0; c < by_comp.size(); ++c)
        if (!report.closed[c]) report.transitory_states.insert(report.transitory_states.end(), by_comp[c].begin(), by_comp[c].end());
    std::sort(report.transitory_states.begin(), report.transitory_states.end());
    report.classes = std::move(by_comp);
    return report;
}

template <Scalar T>
bool is_irreducible(const StochasticMatrix<T>& p, const StructureOptions& opts = {}) {
    return communicating_classes(p, opts).classes.size() == 1;
}

/// Decomposition plus one vertex equilibrium per closed class. A chain with
/// a unique equilibrium yields a single vertex.
template <Scalar T>
DecompositionReport<T> equilibrium_polytope(const StochasticMatrix<T>& p, const StructureOptions& opts = {}) {
    DecompositionReport<T> report = communicating_classes(p, opts);
    for (std::size_t c = 0; c < report.classes.size(); ++c) {
        if (!report.closed[c]) continue;
        const auto& states = report.classes[c];
        const StochasticMatrix<T> block = restrict_to(p, std::span<const std::size_t>(states));
        const WeightVector<T> w = minor_weights(block);
        const T total = w.total();
        if (!(total > T(0)))
            throw InternalInconsistency("closed class restriction has vanishing minor weights");
        report.vertex_equilibria.push_back(embed(normalize(w), std::span<const std::size_t>(states), p.size()));
    }
    return report;
}

}  // namespace stocheq

#endif  // STOCHEQ_REDUCIBILITY_HPP
