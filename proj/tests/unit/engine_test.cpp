#include <gtest/gtest.h>

#include "../support/families.hpp"
#include "mixedfree/mixedfree.hpp"

using namespace mixedfree;

namespace {

OrderedGraph cliques(int count, int size) { return generate({"disjoint_cliques", {count, size}, 1}).graph; }

VertexList range(int lo, int hi) {
  VertexList v;
  for (int i = lo; i < hi; ++i) v.push_back(i);
  return v;
}

// Rows of the pictured blob: the first character is the entry towards the
// instance's first vertex, the rest the columns left of the blob; the second
// string covers the columns right of it, ending with the last vertex.
struct FigureRow {
  const char* left;
  const char* right;
};

constexpr FigureRow kFigure[] = {
    {"00000111100001111000011", "00000000000000000000000"}, {"00000111100001111000011", "00000000000000000000000"},
    {"11111111111111111111111", "11111111111111110000000"}, {"00000111100001111000011", "00000000000000000000000"},
    {"11111111111111111111111", "11111111111111110000000"}, {"00000000000000000000000", "11111111111111110000000"},
    {"11111111111111111111111", "11111111111111110000000"}, {"11111111111111111111111", "00000000000000001111110"},
    {"11111111111111111111111", "00000000000000001111110"}, {"00000000000000000000000", "01010101010101010101010"},
    {"00000000000000000000000", "01010101010101010101010"}, {"11111111111111111111111", "00000000000000001111110"},
};

// 23 vertices left of the blob, the 12 blob rows, 23 to the right.
struct Fixture {
  OrderedGraph g;
  std::vector<int> blob_of;
  Bitset blob;
};

Fixture figure_fixture() {
  constexpr int side = 23, rows = 12, n = 2 * side + rows;
  std::vector<std::pair<int, int>> edges;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < side; ++c) {
      if (kFigure[r].left[c] == '1') edges.emplace_back(side + r, c);
      if (kFigure[r].right[c] == '1') edges.emplace_back(side + r, side + rows + c);
    }
  Fixture f{OrderedGraph::from_edges(n, edges), std::vector<int>(n, 0), Bitset(n)};
  for (int v = 0; v < n; ++v) f.blob_of[static_cast<std::size_t>(v)] = v < side ? 0 : v < side + rows ? 1 : 2;
  for (int r = 0; r < rows; ++r) f.blob.set(static_cast<std::size_t>(side + r));
  return f;
}

void expect_clean(const EngineTrace& trace, const std::string& what) {
  const auto rep = check_trace(trace);
  EXPECT_TRUE(rep.ok()) << what << ": " << (rep.failures.empty() ? "" : rep.failures.front());
}

}  // namespace

TEST(Engine, EdgelessOneColour) {
  for (int d = 2; d <= 5; ++d) EXPECT_EQ(color_bounded(OrderedGraph(12), d).coloring.num_colors(), 1);
}

TEST(Engine, SmallCliqueIsExactBase) {
  const auto r = color_bounded(complete_graph(5), 4);
  EXPECT_EQ(r.coloring.num_colors(), 5);
  EXPECT_EQ(r.trace.nodes.front().kind, NodeKind::Exact);
}

TEST(Engine, RejectsLowOrder) {
  EXPECT_THROW(color_bounded(path_graph(3), 1), InputError);
  EngineOptions opts;
  opts.k = -1;
  EXPECT_THROW(color_bounded(path_graph(3), 3, opts), InputError);
}

TEST(Engine, ThreeCliquesOfEight) {
  const auto g = cliques(3, 8);
  const auto r = color_bounded(g, 4);
  EXPECT_TRUE(is_proper(g, r.coloring));
  EXPECT_EQ(chromatic_exact(g).first, 8);
  const auto& root = r.trace.nodes.front();
  ASSERT_EQ(root.kind, NodeKind::Recursive);
  EXPECT_EQ(root.k, 1);
  ASSERT_EQ(root.m, 3);
  EXPECT_EQ(root.blobs[0], range(0, 7));
  EXPECT_EQ(root.blobs[1], range(7, 15));
  EXPECT_EQ(root.blobs[2], range(15, 23));
  EXPECT_EQ(root.blobs[3], range(23, 24));
  expect_clean(r.trace, "3K8");

  // Colour count against the table with the constants this run consumed.
  const auto consts = r.trace.measured_constants();
  std::map<int, std::int64_t> alpha;
  for (int d = 3; d <= 4; ++d) {
    const auto it = consts.find(d);
    const std::int64_t c = it == consts.end() ? 1 : std::max({1, it->second.first, it->second.second});
    alpha[d] = 8 * c * (c + 1);
  }
  const auto table = build_table(4, 8, alpha);
  const auto bound = table.at(4, 8);
  if (bound.exact) {
    EXPECT_LE(static_cast<u128>(r.coloring.num_colors()), *bound.exact);
  } else {
    EXPECT_GE(bound.log2, std::log2(static_cast<long double>(r.coloring.num_colors())));
  }
}

TEST(Engine, TraceJsonListsBlobs) {
  const auto r = color_bounded(cliques(3, 8), 4);
  const auto j = trace_to_json(r.trace);
  EXPECT_EQ(j["schema"], 1);
  const auto& root = j["nodes"][0];
  EXPECT_EQ(root["blobs"].size(), 3u);
  EXPECT_EQ(root["blobs"][0].size(), 7u);
  EXPECT_EQ(root["blobs"][0][0], 1);
  EXPECT_EQ(root["rest"], Json::array({24}));
}

TEST(Blobs, TwoCliquesExample) {
  const auto g = cliques(2, 8);
  const auto b = form_blobs(g, 8, 1);
  ASSERT_EQ(b.m, 2);
  EXPECT_EQ(b.blobs[0], range(0, 7));
  EXPECT_EQ(b.blobs[1], range(7, 15));
  EXPECT_EQ(b.blobs[2], range(15, 16));
  // Replay the definition with the independent clique oracle.
  for (int i = 0; i < b.m; ++i) {
    const auto& blob = b.blobs[static_cast<std::size_t>(i)];
    EXPECT_EQ(naive_clique_number(g, blob), 7);
    EXPECT_LT(naive_clique_number(g, VertexList(blob.begin(), blob.end() - 1)), 7);
  }
  EXPECT_LT(naive_clique_number(g, b.blobs[2]), 7);
}

TEST(Blobs, Preconditions) {
  EXPECT_THROW(form_blobs(cliques(2, 8), 4, 1), InputError);
  EXPECT_THROW(form_blobs(cliques(2, 8), 8, 2), InputError);
  EXPECT_THROW(form_blobs(cliques(2, 8), 8, 0), InputError);
}

TEST(Blobs, RandomInstancesSatisfyDefinition) {
  detail::Rng rng(51);
  for (int t = 0; t < 60; ++t) {
    const auto g = mftest::random_graph(rng, rng.range(20, 40), rng.range(40, 80));
    const int omega = clique_number(g).first;
    for (int k = 1; k_in_range(omega, k); ++k) {
      const auto b = form_blobs(g, omega, k);
      Vertex next = 0;
      for (std::size_t i = 0; i < b.blobs.size(); ++i) {
        for (auto v : b.blobs[i]) ASSERT_EQ(v, next++);
        const int w = naive_clique_number(g, b.blobs[i]);
        if (static_cast<int>(i) < b.m) {
          ASSERT_EQ(w, omega - k);
          ASSERT_LT(naive_clique_number(g, VertexList(b.blobs[i].begin(), b.blobs[i].end() - 1)), omega - k);
        } else {
          ASSERT_LT(w, omega - k);
        }
      }
      ASSERT_EQ(next, g.size());
    }
  }
}

TEST(MixedClasses, DisjointCliquesFormAPath) {
  // Blob i > 1 starts with the last vertex of clique i - 1, so it meets blob
  // i + 1 in a corner; the first blob sees only constant rows.
  const auto g = cliques(4, 8);
  const auto b = form_blobs(g, 8, 1);
  const auto mc = partition_blobs_by_mixed(g, b);
  EXPECT_EQ(mc.compression, OrderedGraph::from_edges(4, {{1, 2}, {2, 3}}));
  EXPECT_EQ(mc.classes.size(), 2u);
}

TEST(MixedClasses, ClassesHaveNoMixedConnection) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto g = mftest::blob_chain(seed, 6, 8, 2, 70);
    const int omega = clique_number(g).first;
    const int k = omega - 8;
    if (!k_in_range(omega, k)) continue;
    const auto b = form_blobs(g, omega, k);
    const auto mc = partition_blobs_by_mixed(g, b);
    for (const auto& cls : mc.classes)
      for (auto i : cls)
        for (auto j : cls) {
          if (i >= j) continue;
          const auto z = classify_zone(g, span_of(b.blobs[static_cast<std::size_t>(i)]), span_of(b.blobs[static_cast<std::size_t>(j)]));
          EXPECT_NE(z, ZoneClass::Mixed);
          EXPECT_NE(z, ZoneClass::Constant1);
        }
  }
}

TEST(RichPoor, DisjointCliquesAllPoor) {
  const auto g = cliques(3, 6);
  const auto rp = classify_rich_poor(g, {range(0, 6), range(6, 12), range(12, 18)});
  EXPECT_TRUE(rp.rich.empty());
  EXPECT_EQ(rp.poor.size(), 18u);
}

TEST(RichPoor, SingleCompleteVertexIsRich) {
  // K9 then K8; vertex 0 is complete to the K8.
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < 9; ++u)
    for (int v = u + 1; v < 9; ++v) edges.emplace_back(u, v);
  for (int u = 9; u < 17; ++u)
    for (int v = u + 1; v < 17; ++v) edges.emplace_back(u, v);
  for (int v = 9; v < 17; ++v) edges.emplace_back(0, v);
  const auto g = OrderedGraph::from_edges(17, edges);
  const auto rp = classify_rich_poor(g, {range(0, 9), range(9, 17)});
  EXPECT_EQ(rp.rich, VertexList{0});
  EXPECT_EQ(rp.poor.size(), 16u);
}

TEST(Subblobs, FigureFixture) {
  const auto f = figure_fixture();
  const int base = 23;
  VertexList x0, x1;
  for (int r = 0; r < 12; ++r) (f.g.adjacent(base + r, 0) ? x1 : x0).push_back(base + r);
  EXPECT_EQ(x0, (VertexList{base + 0, base + 1, base + 3, base + 5, base + 9, base + 10}));

  const auto red = form_subblobs(f.g, f.blob, x0);
  ASSERT_EQ(red.size(), 3u);
  EXPECT_EQ(red[0], (VertexList{base + 0, base + 1, base + 3}));
  EXPECT_EQ(red[1], (VertexList{base + 5}));
  EXPECT_EQ(red[2], (VertexList{base + 9, base + 10}));
  const auto blue = form_subblobs(f.g, f.blob, x1);
  ASSERT_EQ(blue.size(), 2u);
  EXPECT_EQ(blue[0], (VertexList{base + 2, base + 4, base + 6}));
  EXPECT_EQ(blue[1], (VertexList{base + 7, base + 8, base + 11}));

  const auto red_keys = assign_bucket(f.g, f.blob_of, 1, 0, 0, red);
  EXPECT_FALSE(red_keys[0].key.right);
  EXPECT_FALSE(red_keys[1].key.right);
  EXPECT_TRUE(red_keys[2].key.right);
  const auto blue_keys = assign_bucket(f.g, f.blob_of, 1, 1, 0, blue);
  EXPECT_FALSE(blue_keys[0].key.right);
  EXPECT_TRUE(blue_keys[1].key.right);
  // The blob has no inner edges: every subblob is independent.
  for (const auto& a : red_keys) EXPECT_EQ(a.key.u, 0);
  EXPECT_FALSE(red_keys[0].witness.has_value());
  EXPECT_EQ(red_keys[1].witness_blob, 0);
}

TEST(Subblobs, AllTwinsSingleSubblob) {
  const auto f = figure_fixture();
  const VertexList rows{23, 24, 26};
  const auto s = form_subblobs(f.g, f.blob, rows);
  ASSERT_EQ(s.size(), 1u);
  const auto keys = assign_bucket(f.g, f.blob_of, 1, 0, 0, s);
  EXPECT_FALSE(keys[0].key.right);
  EXPECT_EQ(keys[0].key.x, 0);
  EXPECT_EQ(keys[0].key.u, 0);
}

TEST(Subblobs, GreedyMaximalityAndTwins) {
  detail::Rng rng(53);
  for (int t = 0; t < 100; ++t) {
    const auto g = mftest::random_graph(rng, 24, rng.range(5, 40));
    Bitset blob(24);
    VertexList members;
    for (int v = 8; v < 16; ++v) {
      blob.set(static_cast<std::size_t>(v));
      if (rng.percent(70)) members.push_back(v);
    }
    const auto subs = form_subblobs(g, blob, members);
    auto twins = [&](Vertex a, Vertex b) {
      for (Vertex w = 0; w < 24; ++w)
        if (!blob.test(static_cast<std::size_t>(w)) && g.adjacent(a, w) != g.adjacent(b, w)) return false;
      return true;
    };
    VertexList flat;
    for (std::size_t j = 0; j < subs.size(); ++j) {
      for (auto v : subs[j]) {
        EXPECT_TRUE(twins(subs[j].front(), v));
        flat.push_back(v);
      }
      if (j > 0) {
        EXPECT_FALSE(twins(subs[j - 1].front(), subs[j].front()));
      }
    }
    EXPECT_EQ(flat, members);
  }
}

TEST(Buckets, ULevelsFollowCliqueNumber) {
  EXPECT_EQ(floor_log2(1), 0);
  EXPECT_EQ(floor_log2(2), 1);
  EXPECT_EQ(floor_log2(3), 1);
  EXPECT_EQ(floor_log2(8), 3);
  EXPECT_EQ(floor_log2(15), 3);
}

TEST(Engine, DegreeTwoFallbackFlagsPromise) {
  const auto g = cycle_graph(5);
  EngineOptions opts;
  opts.k = 1;
  const auto r = color_bounded(g, 2, opts);
  EXPECT_TRUE(is_proper(g, r.coloring));
  // omega = 2 is below the recursion range, so the base case handles it.
  EXPECT_EQ(r.trace.count(&TraceNode::promise_violated), 0);

  // A non-cograph with omega >= 5 at d = 2.
  std::vector<std::pair<int, int>> edges{{0, 1}, {1, 2}, {2, 3}};
  for (int u = 4; u < 10; ++u)
    for (int v = u + 1; v < 10; ++v) edges.emplace_back(u, v);
  const auto h = OrderedGraph::from_edges(10, edges);
  const auto s = color_bounded(h, 2, opts);
  EXPECT_TRUE(is_proper(h, s.coloring));
  EXPECT_EQ(s.trace.count(&TraceNode::promise_violated), 1);
  EXPECT_EQ(s.trace.nodes.front().kind, NodeKind::Greedy);
}

TEST(Engine, CographAtDegreeTwoIsOptimal) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto g = generate({"cograph", {40, 70}, seed}).graph;
    const auto r = color_bounded(g, 2);
    EXPECT_EQ(r.coloring.num_colors(), clique_number(g).first);
    EXPECT_EQ(r.trace.count(&TraceNode::promise_violated), 0);
  }
}

TEST(Engine, TraceChecksOnFamilies) {
  int recursive = 0, subblobs = 0, strips = 0;
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    std::vector<std::pair<OrderedGraph, int>> cases;  // graph, k (0 = default)
    cases.emplace_back(generate({"erdos_renyi", {40, 60}, seed}).graph, 0);
    cases.emplace_back(generate({"cograph", {45, 75}, seed}).graph, 0);
    cases.emplace_back(generate({"bounded_tww", {40, 2}, seed}).graph, 1);
    cases.emplace_back(cliques(4, 9), 0);
    const auto chain = mftest::blob_chain(seed, 5, 10, 2, 80);
    cases.emplace_back(chain, clique_number(chain).first - 10);
    for (const auto& [g, k] : cases)
      for (int d = 2; d <= 4; ++d) {
        EngineOptions opts;
        opts.k = k;
        const auto r = color_bounded(g, d, opts);
        ASSERT_TRUE(is_proper(g, r.coloring));
        const auto rep = check_trace(r.trace);
        ASSERT_TRUE(rep.ok()) << rep.failures.front();
        recursive += r.trace.nodes.front().kind == NodeKind::Recursive ? 1 : 0;
        if (rep.checked.count("subblob_clique")) subblobs += static_cast<int>(rep.checked.at("subblob_clique"));
        if (rep.checked.count("mixed_strip")) strips += static_cast<int>(rep.checked.at("mixed_strip"));
      }
  }
  EXPECT_GT(recursive, 20);
  EXPECT_GT(subblobs, 50);
  EXPECT_GT(strips, 5);
}

TEST(Engine, Deterministic) {
  const auto g = mftest::blob_chain(9, 5, 10, 2, 80);
  EngineOptions opts;
  opts.k = clique_number(g).first - 10;
  const auto a = color_bounded(g, 3, opts), b = color_bounded(g, 3, opts);
  EXPECT_EQ(a.coloring.color, b.coloring.color);
  EXPECT_EQ(trace_to_json(a.trace).dump(), trace_to_json(b.trace).dump());
}

TEST(Engine, ReplayReproducesColouring) {
  const auto g = mftest::blob_chain(4, 6, 8, 2, 60);
  EngineOptions opts;
  opts.k = clique_number(g).first - 8;
  const auto r = color_bounded(g, 4, opts);
  EXPECT_EQ(replay_coloring(r.trace).color, r.coloring.color);
}

TEST(Engine, SquashStaysProperAndNeverGrows) {
  detail::Rng rng(57);
  for (int t = 0; t < 30; ++t) {
    const auto g = mftest::random_graph(rng, 50, rng.range(20, 80));
    const auto r = color_bounded(g, 3);
    const auto s = squash_colors(g, r.coloring);
    EXPECT_TRUE(is_proper(g, s));
    EXPECT_LE(s.num_colors(), r.coloring.num_colors());
  }
}

TEST(Engine, ExactSkippedAboveChromaticCap) {
  EngineOptions opts;
  opts.caps.chromatic_n = 10;
  const auto g = cycle_graph(15);
  const auto r = color_bounded(g, 3, opts);
  EXPECT_TRUE(is_proper(g, r.coloring));
  EXPECT_EQ(r.trace.count(&TraceNode::exact_skipped), 1);
}

TEST(Engine, CliqueCapRefuses) {
  EngineOptions opts;
  opts.caps.clique_n = 10;
  EXPECT_THROW(color_bounded(OrderedGraph(20), 3, opts), OracleCapError);
}
