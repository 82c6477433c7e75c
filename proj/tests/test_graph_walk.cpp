#include "oracles.hpp"

#include <gtest/gtest.h>

#include <stocheq/graph_walk.hpp>

namespace stocheq {
namespace {

using testing::Rng;
using R = Rational;

Graph path3() {
    Graph g = Graph::empty(3);
    g.add_edge(0, 1);
    g.add_edge(1, 0);
    g.add_edge(1, 2);
    g.add_edge(2, 1);
    return g;
}

TEST(Graph, Validation) {
    EXPECT_THROW(Graph(Matrix<BigInt>(2, 3)), DimensionMismatch);
    EXPECT_THROW(Graph(Matrix<BigInt>(0)), DimensionMismatch);
    EXPECT_THROW(Graph(Matrix<BigInt>{{0, -1}, {1, 0}}), DomainError);
    Graph g = Graph::empty(2);
    EXPECT_THROW(g.add_edge(0, 2), std::out_of_range);
    EXPECT_THROW(g.add_edge(0, 1, -1), DomainError);
}

TEST(DegreeVector, ZeroOutDegreeNamesTheNode) {
    Graph g = Graph::empty(3);
    g.add_edge(0, 1);
    g.add_edge(2, 1);
    try {
        degree_vector(g);
        FAIL();
    } catch (const ZeroOutDegree& e) {
        EXPECT_EQ(e.node, 1u);
        EXPECT_NE(std::string(e.what()).find("2"), std::string::npos);
    }
    EXPECT_THROW(graph_stationary(g), ZeroOutDegree);
}

TEST(GraphStationary, PathOfThree) {
    const auto eq = graph_stationary(path3());
    EXPECT_EQ(eq.degrees, (std::vector<BigInt>{1, 2, 1}));
    EXPECT_EQ(eq.minors, (std::vector<BigInt>{1, 1, 1}));
    EXPECT_EQ(eq.numerators, (std::vector<BigInt>{1, 2, 1}));
    EXPECT_EQ(eq.denominator, 4);
    ASSERT_TRUE(eq.result.is_unique());
    EXPECT_EQ(eq.result.pi().values, (std::vector<R>{R(1, 4), R(1, 2), R(1, 4)}));
}

TEST(GraphStationary, DirectedTriangle) {
    Graph g = Graph::empty(3);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 0);
    const auto eq = graph_stationary(g);
    EXPECT_EQ(eq.result.pi().values, (std::vector<R>{R(1, 3), R(1, 3), R(1, 3)}));
}

TEST(GraphStationary, SelfLoopsCount) {
    // Node 1 has a self loop of multiplicity 2 and one link to node 2.
    Graph g(Matrix<BigInt>{{2, 1}, {1, 0}});
    const auto eq = graph_stationary(g);
    EXPECT_EQ(eq.result.pi(), stationary(walk_matrix(g)).pi());
    EXPECT_EQ(eq.result.pi().values, (std::vector<R>{R(3, 4), R(1, 4)}));
}

TEST(GraphStationary, DisconnectedIsDegenerate) {
    Graph g = Graph::empty(4);
    g.add_edge(0, 1);
    g.add_edge(1, 0);
    g.add_edge(2, 3);
    g.add_edge(3, 2);
    const auto eq = graph_stationary(g);
    EXPECT_EQ(eq.denominator, 0);
    ASSERT_TRUE(eq.result.is_degenerate());
    EXPECT_EQ(eq.result.degenerate().report.vertex_equilibria.size(), 2u);
}

TEST(GraphStationary, ExactlyMatchesGeneralMethod) {
    Rng rng(60);
    for (int trial = 0; trial < 100; ++trial) {
        const Graph g = testing::random_connected_graph(rng, 1 + trial % 8, trial % 2 == 0);
        const auto eq = graph_stationary(g);
        const auto general = stationary(walk_matrix(g));
        ASSERT_TRUE(eq.result.is_unique());
        ASSERT_EQ(eq.result.pi(), general.pi());
        for (const BigInt& m : eq.minors) ASSERT_GE(m, 0);
    }
}

TEST(GraphStationary, UndirectedIsProportionalToDegree) {
    Rng rng(61);
    for (int trial = 0; trial < 100; ++trial) {
        const Graph g = testing::random_connected_graph(rng, 2 + trial % 8, true);
        ASSERT_TRUE(g.is_symmetric());
        const auto eq = graph_stationary(g);
        const auto& pi = eq.result.pi();
        for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t j = 0; j < g.size(); ++j)
                ASSERT_EQ(pi[i] / pi[j], R(eq.degrees[i], eq.degrees[j]));
    }
}

TEST(GraphStationary, UndirectedMinorsAllEqual) {
    // Matrix-tree theorem: every cofactor of a symmetric Laplacian is the
    // spanning tree count.
    Rng rng(62);
    for (int trial = 0; trial < 50; ++trial) {
        const auto eq = graph_stationary(testing::random_connected_graph(rng, 2 + trial % 7, true));
        for (const BigInt& m : eq.minors) ASSERT_EQ(m, eq.minors.front());
    }
}

}  // namespace
}  // namespace stocheq
