#include "oracles.hpp"

#include <gtest/gtest.h>

#include <stocheq/equilibrium.hpp>
#include <stocheq/reducibility.hpp>

namespace stocheq {
namespace {

using testing::Rng;
using R = Rational;
using Classes = std::vector<std::vector<std::size_t>>;

TEST(CommunicatingClasses, IrreducibleChain) {
    const StochasticMatrix<R> p(Matrix<R>{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
    const auto rep = communicating_classes(p);
    EXPECT_EQ(rep.classes, (Classes{{0, 1, 2}}));
    EXPECT_EQ(rep.closed, (std::vector<bool>{true}));
    EXPECT_TRUE(rep.transitory_states.empty());
    EXPECT_TRUE(rep.vertex_equilibria.empty());
    EXPECT_TRUE(is_irreducible(p));
}

TEST(CommunicatingClasses, IdentityIsAllSingletons) {
    const auto rep = communicating_classes(StochasticMatrix<R>::identity(4));
    EXPECT_EQ(rep.classes, (Classes{{0}, {1}, {2}, {3}}));
    EXPECT_EQ(rep.closed_class_count(), 4u);
    EXPECT_FALSE(is_irreducible(StochasticMatrix<R>::identity(4)));
}

TEST(CommunicatingClasses, TransitoryMiddleState) {
    const StochasticMatrix<R> p(Matrix<R>{{1, 0, 0}, {R(1, 3), R(1, 2), R(1, 6)}, {0, 0, 1}});
    const auto rep = communicating_classes(p);
    EXPECT_EQ(rep.classes, (Classes{{0}, {1}, {2}}));
    EXPECT_EQ(rep.closed, (std::vector<bool>{true, false, true}));
    EXPECT_EQ(rep.transitory_states, std::vector<std::size_t>{1});
}

TEST(CommunicatingClasses, MatchesClosureOracle) {
    Rng rng(50);
    for (int trial = 0; trial < 300; ++trial) {
        const auto p = testing::random_stochastic(rng, 1 + trial % 8, 0.25);
        ASSERT_EQ(communicating_classes(p).closed_class_count(), testing::closed_class_count_by_closure(p.matrix()));
    }
}

TEST(CommunicatingClasses, ClassesPartitionTheStates) {
    Rng rng(51);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + trial % 8;
        const auto rep = communicating_classes(testing::random_stochastic(rng, n, 0.2));
        std::vector<int> seen(n, 0);
        for (const auto& c : rep.classes) {
            ASSERT_TRUE(std::is_sorted(c.begin(), c.end()));
            for (std::size_t i : c) ++seen[i];
        }
        for (int s : seen) ASSERT_EQ(s, 1);
        for (std::size_t c = 1; c < rep.classes.size(); ++c) ASSERT_LT(rep.classes[c - 1][0], rep.classes[c][0]);
    }
}

TEST(CommunicatingClasses, FloatEdgeThreshold) {
    const StochasticMatrix<double> p(Matrix<double>{{1 - 1e-15, 1e-15}, {0.5, 0.5}});
    EXPECT_EQ(communicating_classes(p).closed_class_count(), 1u);
    EXPECT_EQ(communicating_classes(p).classes.size(), 2u);  // 1e-15 is not a link
    EXPECT_TRUE(is_irreducible(p, StructureOptions{1e-16}));
}

TEST(EquilibriumPolytope, IdentityVerticesAreUnitVectors) {
    for (std::size_t n = 1; n <= 5; ++n) {
        const auto rep = equilibrium_polytope(StochasticMatrix<R>::identity(n));
        ASSERT_EQ(rep.vertex_equilibria.size(), n);
        for (std::size_t k = 0; k < n; ++k) {
            std::vector<R> e(n, 0);
            e[k] = 1;
            EXPECT_EQ(rep.vertex_equilibria[k].values, e);
        }
    }
}

TEST(EquilibriumPolytope, BlockDiagonalTwoBlocks) {
    // Blocks {1,3} and {2}; {1,3} is the two-state chain with p = 1/3, q = 2/3.
    const StochasticMatrix<R> p(Matrix<R>{{R(2, 3), 0, R(1, 3)}, {0, 1, 0}, {R(2, 3), 0, R(1, 3)}});
    const auto rep = equilibrium_polytope(p);
    ASSERT_EQ(rep.classes, (Classes{{0, 2}, {1}}));
    ASSERT_EQ(rep.vertex_equilibria.size(), 2u);
    EXPECT_EQ(rep.vertex_equilibria[0].values, (std::vector<R>{R(2, 3), 0, R(1, 3)}));
    EXPECT_EQ(rep.vertex_equilibria[1].values, (std::vector<R>{0, 1, 0}));
}

TEST(EquilibriumPolytope, TransitoryStatesGetZeroMass) {
    Rng rng(52);
    for (int trial = 0; trial < 150; ++trial) {
        const auto chain = testing::random_structured(rng, 2 + trial % 7, testing::Structure::Transitory);
        const auto rep = equilibrium_polytope(chain.p);
        ASSERT_EQ(rep.vertex_equilibria.size(), chain.closed_classes);
        ASSERT_FALSE(rep.transitory_states.empty());
        for (const auto& v : rep.vertex_equilibria) {
            for (std::size_t t : rep.transitory_states) ASSERT_EQ(v[t], 0);
            ASSERT_EQ(verify_equilibrium(v, chain.p), 0);
        }
    }
}

TEST(EquilibriumPolytope, VerticesAreEquilibriaAndConvexCombinationsToo) {
    Rng rng(53);
    for (int trial = 0; trial < 100; ++trial) {
        const auto chain = testing::random_structured(rng, 2 + trial % 7, testing::Structure::BlockDiagonal);
        const auto rep = equilibrium_polytope(chain.p);
        ASSERT_EQ(rep.vertex_equilibria.size(), chain.closed_classes);
        ProbabilityVector<R> mix{std::vector<R>(chain.p.size(), 0)};
        const R share(1, static_cast<long>(rep.vertex_equilibria.size()));
        for (const auto& v : rep.vertex_equilibria) {
            ASSERT_EQ(verify_equilibrium(v, chain.p), 0);
            for (std::size_t i = 0; i < v.size(); ++i) mix.values[i] += share * v[i];
        }
        ASSERT_EQ(verify_equilibrium(mix, chain.p), 0);
    }
}

TEST(EquilibriumPolytope, IrreducibleGivesTheUniqueEquilibrium) {
    Rng rng(54);
    for (int trial = 0; trial < 50; ++trial) {
        const auto chain = testing::random_structured(rng, 1 + trial % 7, testing::Structure::Irreducible);
        const auto rep = equilibrium_polytope(chain.p);
        ASSERT_EQ(rep.vertex_equilibria.size(), 1u);
        ASSERT_EQ(rep.vertex_equilibria[0], stationary(chain.p).pi());
    }
}

TEST(Degeneracy, SumOfWeightsVanishesIffTwoClosedClasses) {
    Rng rng(55);
    const testing::Structure kinds[] = {testing::Structure::Irreducible, testing::Structure::BlockDiagonal,
                                        testing::Structure::Transitory};
    for (int trial = 0; trial < 300; ++trial) {
        const auto chain = testing::random_structured(rng, 1 + trial % 8, kinds[trial % 3]);
        const bool vanishes = minor_weights(chain.p).total() == 0;
        ASSERT_EQ(vanishes, communicating_classes(chain.p).closed_class_count() >= 2);
    }
}

}  // namespace
}  // namespace stocheq
