#include "oracles.hpp"

#include <gtest/gtest.h>

#include <stocheq/io.hpp>

namespace stocheq {
namespace {

using io::parse_literal;
using io::InputFormat;
using io::InputKind;
using io::json;
using io::ParseError;
using R = Rational;

TEST(Literal, Forms) {
    EXPECT_EQ(parse_literal("3")->value, 3);
    EXPECT_FALSE(parse_literal("3")->decimal);
    EXPECT_EQ(parse_literal("-2/6")->value, R(-1, 3));
    EXPECT_EQ(parse_literal("0.25")->value, R(1, 4));
    EXPECT_TRUE(parse_literal("0.25")->decimal);
    EXPECT_EQ(parse_literal("0.1")->value, R(1, 10));
    EXPECT_EQ(parse_literal(".5")->value, R(1, 2));
    EXPECT_EQ(parse_literal("1e-3")->value, R(1, 1000));
    EXPECT_EQ(parse_literal("2.5E2")->value, 250);
    EXPECT_EQ(parse_literal("007")->value, 7);
    EXPECT_EQ(parse_literal("010/08")->value, R(5, 4));
}

TEST(Literal, Malformed) {
    for (const char* bad : {"", "abc", "1/0", "1//2", "1.2.3", "e5", "1e", "--1", "1/2.5", "0x10", "."})
        EXPECT_FALSE(parse_literal(bad).has_value()) << bad;
}

TEST(ParseInput, ExactMatrixWithCommentsAndCommas) {
    const auto doc = io::parse_input("# two-state chain\n1/3, 2/3\n\n1 0\n");
    ASSERT_EQ(doc.kind, InputKind::Matrix);
    EXPECT_EQ(doc.source_mode, Mode::Exact);
    EXPECT_EQ(doc.matrix<R>().matrix(), (Matrix<R>{{R(1, 3), R(2, 3)}, {1, 0}}));
}

TEST(ParseInput, DecimalsInferFloat) {
    const auto doc = io::parse_input("0.5 0.5\n0.25 0.75\n");
    EXPECT_EQ(doc.source_mode, Mode::Float);
    EXPECT_DOUBLE_EQ(doc.matrix<double>()(1, 1), 0.75);
}

TEST(ParseInput, ForcedExactReadsDecimalsExactly) {
    const auto doc = io::parse_input("0.1 0.9\n0.3 0.7\n", InputFormat::Auto, Mode::Exact);
    EXPECT_EQ(doc.source_mode, Mode::Exact);
    EXPECT_EQ(doc.matrix<R>()(0, 0), R(1, 10));
}

TEST(ParseInput, ErrorsCarryPositions) {
    try {
        io::parse_input("1 0\n0 x\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line, 2u);
        EXPECT_EQ(e.column, 3u);
        EXPECT_NE(std::string(e.what()).find("line 2, column 3"), std::string::npos);
    }
    EXPECT_THROW(io::parse_input("1 0\n0\n"), ParseError);
    EXPECT_THROW(io::parse_input("1/2 1/3\n0 1\n"), ParseError);
    EXPECT_THROW(io::parse_input("-1 2\n0 1\n"), ParseError);
    EXPECT_THROW(io::parse_input("# nothing\n"), ParseError);
}

TEST(ParseInput, RowSumErrorNamesTheLine) {
    try {
        io::parse_input("1 0\n\n1/2 1/3\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line, 3u);
    }
}

TEST(ParseInput, GraphEdgeList) {
    const auto doc = io::parse_input("nodes 3\n1 2\n2 1\n2 3 2\n3 2 2\n");
    ASSERT_EQ(doc.kind, InputKind::Graph);
    EXPECT_EQ(doc.graph().adjacency(), (Matrix<BigInt>{{0, 1, 0}, {1, 0, 2}, {0, 2, 0}}));
}

TEST(ParseInput, GraphAdjacencyNeedsExplicitFormat) {
    const auto doc = io::parse_input("0 1\n1 0\n", InputFormat::Graph);
    ASSERT_EQ(doc.kind, InputKind::Graph);
    EXPECT_TRUE(doc.graph().is_symmetric());
}

TEST(ParseInput, GraphErrors) {
    EXPECT_THROW(io::parse_input("nodes 2\n1 3\n"), ParseError);
    EXPECT_THROW(io::parse_input("nodes 0\n"), ParseError);
    EXPECT_THROW(io::parse_input("nodes 2\n1 2 -1\n"), ParseError);
    EXPECT_THROW(io::parse_input("nodes 2\n1 2\n", InputFormat::Auto, Mode::Float), ParseError);
    EXPECT_THROW(io::parse_input("0 1/2\n1 0\n", InputFormat::Graph), ParseError);
}

TEST(ParseInput, JsonMatrix) {
    const auto exact = io::parse_input(R"({"kind": "matrix", "rows": [["1/3", "2/3"], [1, 0]]})");
    EXPECT_EQ(exact.source_mode, Mode::Exact);
    EXPECT_EQ(exact.matrix<R>()(0, 1), R(2, 3));
    const auto flt = io::parse_input(R"({"kind": "matrix", "n": 2, "rows": [[0.5, 0.5], [0.1, 0.9]]})");
    EXPECT_EQ(flt.source_mode, Mode::Float);
    const auto forced = io::parse_input(R"({"kind": "matrix", "rows": [[0.5, 0.5], [0.1, 0.9]]})", InputFormat::Auto,
                                        Mode::Exact);
    EXPECT_EQ(forced.matrix<R>()(1, 0), R(1, 10));
}

TEST(ParseInput, JsonGraph) {
    const auto doc = io::parse_input(R"({"kind": "graph", "n": 3, "edges": [[1, 2], [2, 1], [2, 3, 4], [3, 2, 4]]})");
    ASSERT_EQ(doc.kind, InputKind::Graph);
    EXPECT_EQ(doc.graph().adjacency()(1, 2), 4);
    const auto rows = io::parse_input(R"({"kind": "graph", "rows": [[0, 1], [1, 0]]})");
    EXPECT_EQ(rows.graph().size(), 2u);
}

TEST(ParseInput, JsonErrors) {
    EXPECT_THROW(io::parse_input("{"), ParseError);
    EXPECT_THROW(io::parse_input(R"({"rows": [[1]]})"), ParseError);
    EXPECT_THROW(io::parse_input(R"({"kind": "tensor"})"), ParseError);
    EXPECT_THROW(io::parse_input(R"({"kind": "matrix", "n": 3, "rows": [[1]]})"), ParseError);
    EXPECT_THROW(io::parse_input(R"({"kind": "graph", "edges": [[1, 2]]})"), ParseError);
    EXPECT_THROW(io::parse_input(R"({"kind": "graph", "n": 2, "edges": [[1, 5]]})"), ParseError);
    EXPECT_THROW(io::parse_input(R"({"kind": "matrix", "rows": [[true]]})"), ParseError);
}

TEST(ParseVector, Forms) {
    EXPECT_EQ(io::parse_vector("[\"2/5\", \"3/5\", 0]").size(), 3u);
    EXPECT_EQ(io::parse_vector("2/5 3/5 0")[1].value, R(3, 5));
    EXPECT_EQ(io::parse_vector(R"({"pi": ["1/4", "3/4"]})")[0].value, R(1, 4));
    EXPECT_THROW(io::parse_vector(""), ParseError);
    EXPECT_THROW(io::parse_vector("1/2 x"), ParseError);
}

TEST(Output, ScalarsAndVectors) {
    EXPECT_EQ(io::to_json(R(2, 3)), json("2/3"));
    EXPECT_EQ(io::to_json(R(5)), json("5"));
    EXPECT_EQ(io::to_json(0.25), json(0.25));
    const std::vector<R> v{R(1, 4), R(1, 2)};
    EXPECT_EQ(io::format_vector(std::span<const R>(v)), "[1/4, 1/2]");
    const std::vector<std::size_t> idx{0, 2};
    EXPECT_EQ(io::format_indices(idx), "{1, 3}");
    EXPECT_EQ(io::indices_to_json(idx), json::parse("[1, 3]"));
}

TEST(Output, UniqueResultRoundTripsExactly) {
    testing::Rng rng(80);
    for (int trial = 0; trial < 50; ++trial) {
        const auto chain = testing::random_structured(rng, 1 + trial % 6, testing::Structure::Irreducible);
        const auto r = stationary(chain.p);
        const json j = json::parse(io::to_json(r).dump());
        ASSERT_EQ(j.at("type"), "EquilibriumResult");
        ASSERT_EQ(j.at("mode"), "exact");
        ASSERT_EQ(j.at("variant"), "Unique");
        const auto back = io::parse_vector(j.dump());
        ASSERT_EQ(back.size(), r.pi().size());
        for (std::size_t i = 0; i < back.size(); ++i) ASSERT_EQ(back[i].value, r.pi()[i]);
    }
}

TEST(Output, FloatResultRoundTripsBitForBit) {
    testing::Rng rng(81);
    for (int trial = 0; trial < 30; ++trial) {
        const auto p = testing::random_positive_float(rng, 2 + trial % 8);
        const auto r = stationary(p);
        const json j = json::parse(io::to_json(r).dump());
        ASSERT_EQ(j.at("mode"), "float");
        for (std::size_t i = 0; i < p.size(); ++i) ASSERT_EQ(j.at("pi")[i].get<double>(), r.pi()[i]);
    }
}

TEST(Output, DegenerateResultCarriesTheReport) {
    const auto r = stationary(StochasticMatrix<R>::identity(2));
    const json j = io::to_json(r);
    EXPECT_EQ(j.at("variant"), "Degenerate");
    EXPECT_FALSE(j.contains("pi"));
    const json& rep = j.at("report");
    EXPECT_EQ(rep.at("type"), "DecompositionReport");
    EXPECT_EQ(rep.at("classes"), json::parse("[[1], [2]]"));
    EXPECT_EQ(rep.at("closed_flags"), json::parse("[true, true]"));
    EXPECT_EQ(rep.at("transitory_states"), json::array());
    EXPECT_EQ(rep.at("vertex_equilibria"), json::parse(R"([["1", "0"], ["0", "1"]])"));
}

TEST(Output, PowerMethodReport) {
    const auto rep = power_method(StochasticMatrix<double>::identity(2));
    const json j = io::to_json(rep);
    EXPECT_EQ(j.at("type"), "PowerMethodReport");
    EXPECT_EQ(j.at("converged"), false);
    EXPECT_EQ(j.at("idempotent"), true);
    EXPECT_EQ(j.at("pi_estimate").size(), 2u);
}

}  // namespace
}  // namespace stocheq
