#include <gtest/gtest.h>

#include <sstream>

#include "../support/families.hpp"
#include "mixedfree/mixedfree.hpp"

using namespace mixedfree;
using mftest::graph_from_mask;
using mftest::pair_count;

namespace {

OrderedGraph p4() { return path_graph(4); }

OrderedGraph disjoint_union(const OrderedGraph& a, const OrderedGraph& b) {
  std::vector<std::pair<int, int>> edges;
  for (auto e : a.edges()) edges.push_back(e);
  for (auto [u, v] : b.edges()) edges.emplace_back(u + a.size(), v + a.size());
  return OrderedGraph::from_edges(a.size() + b.size(), edges);
}

OrderedGraph join(const OrderedGraph& a, const OrderedGraph& b) {
  auto edges = disjoint_union(a, b).edges();
  for (int u = 0; u < a.size(); ++u)
    for (int v = 0; v < b.size(); ++v) edges.emplace_back(u, a.size() + v);
  return OrderedGraph::from_edges(a.size() + b.size(), edges);
}

}  // namespace

TEST(Induced, PathPrefixIsShorterPath) {
  const auto g = induced(p4(), {0, 1, 2});
  EXPECT_EQ(g, path_graph(3));
  EXPECT_EQ(g.labels(), (std::vector<Label>{1, 2, 3}));
}

TEST(Induced, EmptyAndFull) {
  EXPECT_EQ(induced(p4(), {}).size(), 0);
  EXPECT_EQ(induced(p4(), {0, 1, 2, 3}), p4());
}

TEST(Induced, UnknownVertexRejected) { EXPECT_THROW(induced(p4(), {0, 7}), InputError); }

TEST(Induced, KeepsParentLabels) {
  const auto g = induced(p4(), {1, 3});
  EXPECT_EQ(g.labels(), (std::vector<Label>{2, 4}));
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(Graph, RejectsAsymmetricRowsAndLoops) {
  std::vector<Bitset> rows(2, Bitset(2));
  rows[0].set(1);
  EXPECT_THROW(OrderedGraph{rows}, InputError);
  EXPECT_THROW(OrderedGraph::from_edges(2, {{1, 1}}), InputError);
}

TEST(Clique, Examples) {
  EXPECT_EQ(clique_number(OrderedGraph(5)).first, 1);
  EXPECT_EQ(clique_number(complete_graph(7)).first, 7);
  EXPECT_EQ(clique_number(p4()).first, 2);
}

TEST(Clique, WitnessIsClique) {
  detail::Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto g = mftest::random_graph(rng, 20, 50);
    const auto [w, wit] = clique_number(g);
    EXPECT_EQ(wit.size(), w);
    EXPECT_TRUE(is_clique(g, wit.vertices));
    EXPECT_EQ(w, naive_clique_number(g));
  }
}

TEST(Clique, CapRefuses) { EXPECT_THROW(clique_number(OrderedGraph(10), 5), OracleCapError); }

TEST(Chromatic, Examples) {
  EXPECT_EQ(chromatic_exact(cycle_graph(5)).first, 3);
  EXPECT_EQ(chromatic_exact(complete_graph(4)).first, 4);
  EXPECT_EQ(chromatic_exact(p4()).first, 2);
}

TEST(Chromatic, CapRefuses) { EXPECT_THROW(chromatic_exact(OrderedGraph(30)), OracleCapError); }

// Brute force: least k admitting a proper k-colouring, by trying all k^n maps.
TEST(Chromatic, MatchesBruteForceOnSmallGraphs) {
  detail::Rng rng(11);
  for (int i = 0; i < 60; ++i) {
    const int n = rng.range(1, 7);
    const auto g = mftest::random_graph(rng, n, rng.range(10, 90));
    int brute = 0;
    for (int k = 1; k <= n && brute == 0; ++k) {
      std::vector<int> c(static_cast<std::size_t>(n), 0);
      while (true) {
        bool ok = true;
        for (auto [u, v] : g.edges()) ok = ok && c[static_cast<std::size_t>(u)] != c[static_cast<std::size_t>(v)];
        if (ok) {
          brute = k;
          break;
        }
        std::size_t p = 0;
        while (p < c.size() && ++c[p] == k) c[p++] = 0;
        if (p == c.size()) break;
      }
    }
    const auto [chi, col] = chromatic_exact(g);
    EXPECT_EQ(chi, brute);
    EXPECT_TRUE(is_proper(g, col));
    EXPECT_EQ(col.num_colors(), chi);
  }
}

TEST(IsProper, Examples) {
  const auto k2 = complete_graph(2);
  EXPECT_FALSE(is_proper(k2, Coloring{{1, 1}}));
  EXPECT_TRUE(is_proper(k2, Coloring{{1, 2}}));
  EXPECT_TRUE(is_proper(OrderedGraph(4), Coloring{{1, 1, 1, 1}}));
}

TEST(IsProper, MissingVertexRejected) { EXPECT_THROW(is_proper(complete_graph(3), Coloring{{1, 2}}), InputError); }

TEST(PairClass, Examples) {
  const auto k22 = OrderedGraph::from_edges(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
  EXPECT_EQ(pair_class(k22, {0, 1}, {2, 3}), PairClass::Complete);
  const auto two = OrderedGraph::from_edges(4, {{0, 1}, {2, 3}});
  EXPECT_EQ(pair_class(two, {0, 1}, {2, 3}), PairClass::Anticomplete);
  EXPECT_EQ(pair_class(p4(), {0}, {2, 3}), PairClass::Anticomplete);
  EXPECT_EQ(pair_class(p4(), {0, 1}, {2, 3}), PairClass::Impure);
}

TEST(PairClass, OverlapOrEmptyRejected) {
  EXPECT_THROW(pair_class(p4(), {0, 1}, {1, 2}), InputError);
  EXPECT_THROW(pair_class(p4(), {}, {1, 2}), InputError);
}

TEST(PairClass, Symmetric) {
  detail::Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto g = mftest::random_graph(rng, 8, 50);
    VertexList a, b;
    for (int v = 0; v < 8; ++v) {
      const auto r = rng.below(3);
      if (r == 0) a.push_back(v);
      if (r == 1) b.push_back(v);
    }
    if (a.empty() || b.empty()) continue;
    EXPECT_EQ(pair_class(g, a, b), pair_class(g, b, a));
  }
}

TEST(Semipure, Examples) {
  EXPECT_TRUE(is_semipure(p4(), {1, 2}, {0}));
  EXPECT_FALSE(is_semipure(p4(), {0, 1}, {2, 3}));
  const auto k22 = OrderedGraph::from_edges(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
  EXPECT_TRUE(is_semipure(k22, {0, 1}, {2, 3}));
}

TEST(Cograph, Examples) {
  EXPECT_FALSE(is_cograph(p4()));
  EXPECT_TRUE(is_cograph(cycle_graph(4)));
  EXPECT_TRUE(is_cograph(complete_graph(5)));
}

TEST(Cograph, ColorExamples) {
  EXPECT_EQ(cograph_color(complete_graph(3)).num_colors(), 3);
  EXPECT_EQ(cograph_color(disjoint_union(complete_graph(3), complete_graph(3))).num_colors(), 3);
  const auto g = join(complete_graph(2), OrderedGraph(3));
  const auto c = cograph_color(g);
  EXPECT_TRUE(is_proper(g, c));
  EXPECT_EQ(c.num_colors(), 3);
  EXPECT_EQ(chromatic_exact(g).first, 3);
}

TEST(Cograph, NonCographRejected) { EXPECT_THROW(cograph_color(p4()), PromiseViolated); }

TEST(Cograph, AgreesWithInducedP4SearchUpToSix) {
  for (int n = 1; n <= 6; ++n)
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pair_count(n)); ++mask) {
      const auto g = graph_from_mask(n, mask);
      ASSERT_EQ(is_cograph(g), !mftest::has_induced_p4(g)) << n << " " << mask;
    }
}

TEST(Cograph, AgreesWithInducedP4SearchSampledSeven) {
  detail::Rng rng(7);
  for (int i = 0; i < 3000; ++i) {
    const auto g = graph_from_mask(7, rng.below(std::uint64_t{1} << 21));
    ASSERT_EQ(is_cograph(g), !mftest::has_induced_p4(g));
  }
}

TEST(Cograph, PerfectOnGeneratedCographs) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const int n = 4 + static_cast<int>(seed % 20);
    const auto g = generate({"cograph", {n}, seed}).graph;
    ASSERT_TRUE(is_cograph(g));
    const auto c = cograph_color(g);
    EXPECT_TRUE(is_proper(g, c));
    EXPECT_EQ(c.num_colors(), clique_number(g).first);
    EXPECT_EQ(chromatic_exact(g).first, clique_number(g).first);
  }
}

TEST(Greedy, Examples) {
  EXPECT_EQ(greedy_fallback(OrderedGraph(5)).num_colors(), 1);
  EXPECT_EQ(greedy_fallback(complete_graph(6)).num_colors(), 6);
  const auto c5 = cycle_graph(5);
  const auto c = greedy_fallback(c5);
  EXPECT_TRUE(is_proper(c5, c));
  EXPECT_LE(c.num_colors(), 3);
}

TEST(Greedy, ProperWithinMaxDegreePlusOne) {
  detail::Rng rng(9);
  for (int i = 0; i < 50; ++i) {
    const auto g = mftest::random_graph(rng, 30, rng.range(5, 60));
    int maxdeg = 0;
    for (int v = 0; v < g.size(); ++v) maxdeg = std::max(maxdeg, g.degree(v));
    const auto c = greedy_fallback(g);
    EXPECT_TRUE(is_proper(g, c));
    EXPECT_LE(c.num_colors(), maxdeg + 1);
  }
}

TEST(GraphIo, RoundTripWithOrder) {
  const std::string text = "c sample\np 4 3\ne 1 2\ne 2 3\ne 3 4\no 3 1 4 2\n";
  const auto g = parse_graph(text);
  EXPECT_EQ(g.labels(), (std::vector<Label>{3, 1, 4, 2}));
  EXPECT_TRUE(g.adjacent(0, 2));   // 3-4
  EXPECT_FALSE(g.adjacent(0, 1));  // 3-1
  const auto again = parse_graph(format_graph(g));
  EXPECT_EQ(again, g);
  EXPECT_EQ(again.labels(), g.labels());
}

TEST(GraphIo, IdentityOrderOmitted) { EXPECT_EQ(format_graph(p4()), "p 4 3\ne 1 2\ne 2 3\ne 3 4\n"); }

TEST(GraphIo, Errors) {
  for (const std::string bad : {"e 1 2\n", "p 3 1\ne 1 1\n", "p 3 2\ne 1 2\ne 2 1\n", "p 3 1\ne 1 4\n",
                                "p 3 2\ne 1 2\n", "p 3 0\no 1 1 2\n", "p 2 0\nx\n", "p 2 1\r\ne 1 2\n", "",
                                "p 2 0\ne 1 two\n", "p 3 0\no 1 2\n"})
    EXPECT_THROW(parse_graph(bad), InputError) << bad;
}

TEST(GraphIo, ColoringRoundTrip) {
  const auto g = parse_graph("p 3 2\ne 1 2\ne 2 3\no 2 3 1\n");
  const Coloring c{{2, 1, 1}};
  std::ostringstream os;
  write_coloring(os, g, c);
  EXPECT_EQ(os.str(), "v 1 1\nv 2 2\nv 3 1\n");
  std::istringstream is(os.str());
  EXPECT_EQ(read_coloring(is, g).color, c.color);
}

TEST(GraphIo, ColoringErrors) {
  const auto g = p4();
  for (const std::string bad : {"v 1 1\nv 2 2\nv 3 1\n", "v 1 1\nv 1 2\nv 2 1\nv 3 2\nv 4 1\n", "v 9 1\n",
                                "v 1 0\nv 2 1\nv 3 2\nv 4 1\n", "w 1 1\n"}) {
    std::istringstream is(bad);
    EXPECT_THROW(read_coloring(is, g), InputError) << bad;
  }
}
