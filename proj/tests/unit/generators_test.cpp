#include <gtest/gtest.h>

#include "mixedfree/mixedfree.hpp"

using namespace mixedfree;

TEST(Generate, PathIsP4) { EXPECT_EQ(generate({"path", {4}, 1}).graph, path_graph(4)); }

TEST(Generate, DisjointCliques) {
  const auto g = generate({"disjoint_cliques", {3, 8}, 1}).graph;
  EXPECT_EQ(g.size(), 24);
  EXPECT_EQ(g.edge_count(), 3u * 28u);
  EXPECT_EQ(clique_number(g).first, 8);
  EXPECT_TRUE(g.adjacent(0, 7));
  EXPECT_FALSE(g.adjacent(7, 8));
}

TEST(Generate, CycleAndGrid) {
  EXPECT_EQ(generate({"cycle", {5}, 1}).graph, cycle_graph(5));
  const auto grid = generate({"grid", {3, 4}, 1}).graph;
  EXPECT_EQ(grid.size(), 12);
  EXPECT_EQ(grid.edge_count(), 3u * 3u + 2u * 4u);
  EXPECT_TRUE(grid.adjacent(0, 1));
  EXPECT_TRUE(grid.adjacent(0, 4));  // row-major
  EXPECT_FALSE(grid.adjacent(3, 4));
}

TEST(Generate, ErdosRenyiExtremes) {
  EXPECT_EQ(generate({"erdos_renyi", {10, 0}, 3}).graph.edge_count(), 0u);
  EXPECT_EQ(generate({"erdos_renyi", {10, 100}, 3}).graph, complete_graph(10));
}

TEST(Generate, Deterministic) {
  for (const auto& fam : generator_families()) {
    std::vector<int> params = fam == "grid" || fam == "disjoint_cliques" ? std::vector<int>{3, 4}
                              : fam == "erdos_renyi"                        ? std::vector<int>{15, 40}
                              : fam == "bounded_tww"                        ? std::vector<int>{15, 2}
                                                                            : std::vector<int>{15};
    const auto a = generate({fam, params, 77}), b = generate({fam, params, 77});
    EXPECT_EQ(a.graph, b.graph) << fam;
  }
  EXPECT_NE(generate({"erdos_renyi", {20, 50}, 1}).graph, generate({"erdos_renyi", {20, 50}, 2}).graph);
}

TEST(Generate, BoundedTwinwidthSequenceVerifies) {
  for (int t = 0; t <= 3; ++t)
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
      const int n = 5 + static_cast<int>(seed % 30);
      const auto out = generate({"bounded_tww", {n, t}, seed});
      ASSERT_TRUE(out.sequence.has_value());
      EXPECT_LE(width_of_sequence(out.graph, *out.sequence), t) << n << " " << seed;
    }
}

TEST(Generate, BoundedTwinwidthSmallAgreesWithOracle) {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const auto out = generate({"bounded_tww", {9, 1}, seed});
    EXPECT_LE(width_of_sequence(out.graph, *out.sequence), 1);
    EXPECT_LE(twinwidth_exact(out.graph).first, 1);
  }
}

TEST(Generate, CographsAreCographs) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const int n = 1 + static_cast<int>(seed % 40);
    EXPECT_TRUE(is_cograph(generate({"cograph", {n, static_cast<int>(seed % 101)}, seed}).graph));
  }
}

TEST(Generate, BadParameters) {
  EXPECT_THROW(generate({"nope", {3}, 1}), InputError);
  EXPECT_THROW(generate({"path", {}, 1}), InputError);
  EXPECT_THROW(generate({"cycle", {2}, 1}), InputError);
  EXPECT_THROW(generate({"erdos_renyi", {5, 101}, 1}), InputError);
  EXPECT_THROW(generate({"grid", {-1, 3}, 1}), InputError);
}
