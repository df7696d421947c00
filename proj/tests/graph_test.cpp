#include <cmath>
#include <cstdio>
#include <filesystem>
#include <set>
#include <string>

#include <gtest/gtest.h>

#include "radiomis/graph.hpp"
#include "radiomis/rng.hpp"

namespace radiomis {
namespace {

std::set<std::pair<NodeId, NodeId>> edge_set(const Graph& g) {
  std::set<std::pair<NodeId, NodeId>> s;
  for (const Edge& e : g.edges()) s.emplace(e.u, e.v);
  return s;
}

TEST(MatchingLowerBound, EightNodes) {
  const Graph g = generate_matching_lower_bound(8);
  EXPECT_EQ(g.node_count(), 8u);
  EXPECT_EQ(edge_set(g), (std::set<std::pair<NodeId, NodeId>>{{0, 1}, {2, 3}}));
  for (NodeId v = 4; v < 8; ++v) EXPECT_EQ(g.degree(v), 0u) << v;
  EXPECT_EQ(max_degree(g), 1u);
}

TEST(MatchingLowerBound, SmallestInstance) {
  const Graph g = generate_matching_lower_bound(4);
  EXPECT_EQ(edge_set(g), (std::set<std::pair<NodeId, NodeId>>{{0, 1}}));
  EXPECT_EQ(g.degree(2), 0u);
  EXPECT_EQ(g.degree(3), 0u);
}

TEST(MatchingLowerBound, RejectsSizesOtherThanMultiplesOfFour) {
  EXPECT_THROW(generate_matching_lower_bound(6), GraphError);
  EXPECT_THROW(generate_matching_lower_bound(0), GraphError);
  EXPECT_THROW(generate_matching_lower_bound(2), GraphError);
}

TEST(MatchingLowerBound, QuarterEdgesAndDegreeOneForEverySize) {
  for (std::size_t n = 4; n <= 512; n += 4) {
    const Graph g = generate_matching_lower_bound(n);
    ASSERT_EQ(g.edge_count(), n / 4);
    ASSERT_EQ(max_degree(g), 1u);
  }
}

TEST(Gnp, ExtremeProbabilities) {
  EXPECT_EQ(generate_gnp(5, 0.0, 1).edge_count(), 0u);
  const Graph full = generate_gnp(5, 1.0, 1);
  EXPECT_EQ(full.edge_count(), 10u);
  EXPECT_EQ(full, generate_clique(5));
}

TEST(Gnp, SameSeedSameGraph) {
  EXPECT_EQ(generate_gnp(100, 0.1, 42), generate_gnp(100, 0.1, 42));
  EXPECT_NE(generate_gnp(100, 0.1, 42), generate_gnp(100, 0.1, 43));
}

TEST(Gnp, RejectsBadProbability) {
  EXPECT_THROW(generate_gnp(5, -0.1, 0), GraphError);
  EXPECT_THROW(generate_gnp(5, 1.5, 0), GraphError);
}

TEST(Gnp, EdgeCountMeanWithinFiveSigma) {
  const std::size_t n = 60;
  const double p = 0.15;
  const int seeds = 400;
  const double pairs = n * (n - 1) / 2.0;
  double sum = 0.0;
  for (int s = 0; s < seeds; ++s) sum += double(generate_gnp(n, p, s).edge_count());
  const double mean = sum / seeds;
  const double sigma = std::sqrt(pairs * p * (1 - p) / seeds);
  EXPECT_NEAR(mean, p * pairs, 5 * sigma);
}

TEST(MaxDegree, Examples) {
  EXPECT_EQ(max_degree(generate_star(5)), 4u);
  EXPECT_EQ(max_degree(Graph(3, {})), 0u);
  EXPECT_EQ(max_degree(generate_clique(7)), 6u);
  EXPECT_EQ(max_degree(generate_path(2)), 1u);
  EXPECT_EQ(max_degree(generate_path(9)), 2u);
}

TEST(GraphConstruction, RejectsInvalidEdges) {
  EXPECT_THROW(Graph(3, {{1, 1}}), GraphError);
  EXPECT_THROW(Graph(3, {{0, 3}}), GraphError);
  EXPECT_THROW(Graph(3, {{0, 1}, {1, 0}}), GraphError);
}

TEST(GraphConstruction, NormalisesOrientation) {
  const Graph g(3, {{2, 0}, {1, 2}});
  EXPECT_EQ(edge_set(g), (std::set<std::pair<NodeId, NodeId>>{{0, 2}, {1, 2}}));
  EXPECT_TRUE(g.has_edge(0, 2));
  EXPECT_TRUE(g.has_edge(2, 0));
  EXPECT_FALSE(g.has_edge(0, 1));
  ASSERT_EQ(g.neighbors(2).size(), 2u);
  EXPECT_EQ(g.neighbors(2)[0], 0u);
  EXPECT_EQ(g.neighbors(2)[1], 1u);
}

TEST(EdgeList, LoadsExamples) {
  const Graph g = load_edge_list("4 1\n0 1\n");
  EXPECT_EQ(g.node_count(), 4u);
  EXPECT_EQ(edge_set(g), (std::set<std::pair<NodeId, NodeId>>{{0, 1}}));

  const Graph empty = load_edge_list("3 0\n");
  EXPECT_EQ(empty.node_count(), 3u);
  EXPECT_EQ(empty.edge_count(), 0u);
}

void expect_error_at_line(std::string_view text, std::size_t line) {
  try {
    load_edge_list(text);
    ADD_FAILURE() << "accepted: " << text;
  } catch (const GraphError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_NE(std::string(e.what()).find("line " + std::to_string(line)), std::string::npos);
  }
}

TEST(EdgeList, ErrorsCarryLineNumbers) {
  expect_error_at_line("2 1\n0 5\n", 2);
  expect_error_at_line("", 1);
  expect_error_at_line("x y\n", 1);
  expect_error_at_line("4 2\n0 1\n2 2\n", 3);
  expect_error_at_line("4 3\n0 1\n1 2\n0 1\n", 4);
  expect_error_at_line("4 1\n0 1\n1 2\n", 3);
  expect_error_at_line("4 1\n0\n", 2);
}

TEST(EdgeList, RejectsEdgeCountMismatch) {
  EXPECT_THROW(load_edge_list("4 2\n0 1\n"), GraphError);
}

TEST(EdgeList, RoundTripOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    NodeRng rng(seed, 0);
    const std::size_t n = 1 + rng.next() % 40;
    const Graph g = generate_gnp(n, rng.uniform01(), seed);
    const std::string text = save_edge_list(g);
    ASSERT_EQ(load_edge_list(text), g) << "seed " << seed;
    ASSERT_EQ(save_edge_list(load_edge_list(text)), text) << "seed " << seed;
  }
}

TEST(EdgeList, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "radiomis_graph_test.txt";
  const Graph g = generate_star(6);
  save_edge_list_file(g, path.string());
  EXPECT_EQ(load_edge_list_file(path.string()), g);
  std::filesystem::remove(path);
  EXPECT_THROW(load_edge_list_file(path.string()), GraphError);
}

TEST(GeneratorSpec, ParsesEveryFamily) {
  EXPECT_EQ(GeneratorSpec::parse("gnp:50:0.25").generate(3), generate_gnp(50, 0.25, 3));
  EXPECT_EQ(GeneratorSpec::parse("matching:16").generate(0), generate_matching_lower_bound(16));
  EXPECT_EQ(GeneratorSpec::parse("star:9").generate(0), generate_star(9));
  EXPECT_EQ(GeneratorSpec::parse("clique:9").generate(0), generate_clique(9));
  EXPECT_EQ(GeneratorSpec::parse("path:9").generate(0), generate_path(9));
  EXPECT_TRUE(GeneratorSpec::parse("gnp:5:0.5").randomized());
  EXPECT_FALSE(GeneratorSpec::parse("path:5").randomized());
}

TEST(GeneratorSpec, ToStringRoundTrips) {
  for (const char* text : {"gnp:64:0.2", "matching:256", "star:8", "clique:3", "path:1"}) {
    const GeneratorSpec spec = GeneratorSpec::parse(text);
    EXPECT_EQ(GeneratorSpec::parse(spec.to_string()).generate(7), spec.generate(7)) << text;
  }
}

TEST(GeneratorSpec, RejectsMalformedSpecs) {
  for (const char* text : {"", "gnp:10", "gnp:10:x", "gnp:10:2", "ring:5", "path:-3", "path:x",
                           "matching:6", "star:0"}) {
    EXPECT_THROW(GeneratorSpec::parse(text).generate(0), GraphError) << text;
  }
}

}  // namespace
}  // namespace radiomis
