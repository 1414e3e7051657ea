#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "twinwidth.hpp"

namespace mixedfree {

struct GenSpec {
  std::string family;
  std::vector<int> params;
  std::uint64_t seed = 1;
};

struct Generated {
  OrderedGraph graph;
  std::optional<ContractionSequence> sequence;  // bounded_tww only
};

namespace detail {

// Raw 64-bit draws only, so outputs do not depend on the standard library's
// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t below(std::uint64_t bound) { return bound <= 1 ? 0 : eng_() % bound; }
  int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
  bool percent(int p) { return static_cast<int>(below(100)) < p; }

 private:
  std::mt19937_64 eng_;
};

inline void need(const GenSpec& s, std::size_t count, const char* usage) {
  if (s.params.size() != count) throw InputError("family " + s.family + " expects parameters " + usage);
}

// Random cotree over vertices [lo, lo + size): unions and joins of contiguous
// children, so the order is the left-to-right leaf order.
inline void cotree(Rng& rng, std::vector<std::pair<int, int>>& edges, int lo, int size, bool join, int join_pct) {
  if (size <= 1) return;
  const int parts = rng.range(2, std::min(size, 4));
  std::vector<int> sizes(static_cast<std::size_t>(parts), 1);
  for (int extra = size - parts; extra > 0; --extra) ++sizes[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(parts)))];
  int start = lo;
  std::vector<std::pair<int, int>> ranges;
  for (auto s : sizes) {
    ranges.emplace_back(start, s);
    // Children alternate the operation, with some randomness in where joins fall.
    cotree(rng, edges, start, s, join ? false : rng.percent(join_pct), join_pct);
    start += s;
  }
  if (!join) return;
  for (std::size_t a = 0; a < ranges.size(); ++a)
    for (std::size_t b = a + 1; b < ranges.size(); ++b)
      for (int u = ranges[a].first; u < ranges[a].first + ranges[a].second; ++u)
        for (int v = ranges[b].first; v < ranges[b].first + ranges[b].second; ++v) edges.emplace_back(u, v);
}

enum class Rel : char { None, Black, Red };

// Reverse contraction: starting from one part, repeatedly split a part in two
// while keeping every red degree <= t; red pairs must eventually resolve,
// which singletons force. Each split is retried with fresh choices on failure.
inline Generated bounded_tww(Rng& rng, int n, int t) {
  if (n < 1) throw InputError("bounded_tww needs n >= 1");
  if (t < 0) throw InputError("bounded_tww needs t >= 0");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    struct Part {
      int size;
    };
    std::vector<Part> parts{{n}};
    std::vector<std::vector<Rel>> rel(1, std::vector<Rel>(1, Rel::None));
    std::vector<int> order{0};  // left-to-right sequence of part ids
    std::vector<std::pair<int, int>> splits;  // (left id, right id)
    bool failed = false;
    while (static_cast<int>(parts.size()) < n && !failed) {
      std::vector<int> splittable;
      for (std::size_t p = 0; p < parts.size(); ++p)
        if (parts[p].size >= 2) splittable.push_back(static_cast<int>(p));
      const int p = splittable[static_cast<std::size_t>(rng.below(splittable.size()))];
      const int total = parts[static_cast<std::size_t>(p)].size;
      bool placed = false;
      for (int tries = 0; tries < 50 && !placed; ++tries) {
        const int left = rng.range(1, total - 1);
        const int q = static_cast<int>(parts.size());
        auto next = rel;
        for (auto& row : next) row.push_back(Rel::None);
        next.emplace_back(static_cast<std::size_t>(q) + 1, Rel::None);
        auto sizes = parts;
        sizes[static_cast<std::size_t>(p)].size = left;
        sizes.push_back({total - left});
        auto pick = [&](int a, int b) {
          const bool singletons = sizes[static_cast<std::size_t>(a)].size == 1 && sizes[static_cast<std::size_t>(b)].size == 1;
          const auto r = rng.below(singletons ? 2 : 3);
          return r == 0 ? Rel::None : r == 1 ? Rel::Black : Rel::Red;
        };
        for (int o = 0; o < q; ++o) {
          if (o == p) continue;
          const Rel was = rel[static_cast<std::size_t>(p)][static_cast<std::size_t>(o)];
          Rel a = was, b = was;
          if (was == Rel::Red) {
            // The merged pair must be impure again.
            do {
              a = pick(p, o);
              b = pick(q, o);
            } while (a == b && a != Rel::Red);
          }
          next[static_cast<std::size_t>(p)][static_cast<std::size_t>(o)] = next[static_cast<std::size_t>(o)][static_cast<std::size_t>(p)] = a;
          next[static_cast<std::size_t>(q)][static_cast<std::size_t>(o)] = next[static_cast<std::size_t>(o)][static_cast<std::size_t>(q)] = b;
        }
        const Rel inner = pick(p, q);
        next[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = next[static_cast<std::size_t>(q)][static_cast<std::size_t>(p)] = inner;
        bool ok = true;
        for (std::size_t a = 0; a < next.size() && ok; ++a) {
          int red = 0;
          for (std::size_t b = 0; b < next.size(); ++b) red += next[a][b] == Rel::Red ? 1 : 0;
          ok = red <= t;
        }
        if (!ok) continue;
        rel = std::move(next);
        parts = std::move(sizes);
        auto it = std::find(order.begin(), order.end(), p);
        order.insert(it + 1, q);
        splits.emplace_back(p, q);
        placed = true;
      }
      failed = !placed;
    }
    if (failed) continue;

    // Final parts are singletons; position = place in `order`.
    std::vector<int> pos(parts.size());
    for (std::size_t i = 0; i < order.size(); ++i) pos[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
    std::vector<std::pair<int, int>> edges;
    for (std::size_t a = 0; a < parts.size(); ++a)
      for (std::size_t b = a + 1; b < parts.size(); ++b) {
        check_invariant(rel[a][b] != Rel::Red, "red pair between singletons");
        if (rel[a][b] == Rel::Black) edges.emplace_back(pos[a], pos[b]);
      }
    Generated out;
    out.graph = OrderedGraph::from_edges(n, edges);

    // Replaying splits backwards gives the merges; a part is named by its
    // leftmost position, which the left half of each split always holds.
    std::vector<int> leftmost(parts.size());
    for (std::size_t p = 0; p < parts.size(); ++p) leftmost[p] = pos[p];
    ContractionSequence seq;
    for (auto it = splits.rbegin(); it != splits.rend(); ++it) {
      const auto [a, b] = *it;
      seq.merges.emplace_back(leftmost[static_cast<std::size_t>(a)], leftmost[static_cast<std::size_t>(b)]);
      leftmost[static_cast<std::size_t>(a)] = std::min(leftmost[static_cast<std::size_t>(a)], leftmost[static_cast<std::size_t>(b)]);
    }
    out.sequence = std::move(seq);
    return out;
  }
  throw InputError("bounded_tww: no construction found within the retry budget");
}

}  // namespace detail

// Families and parameters:
//   cograph n [join_percent]   path n   cycle n   grid rows cols
//   disjoint_cliques count size   erdos_renyi n percent   bounded_tww n t
inline Generated generate(const GenSpec& spec) {
  detail::Rng rng(spec.seed);
  const auto& p = spec.params;
  for (auto v : p)
    if (v < 0) throw InputError("generator parameters must be nonnegative");
  Generated out;
  if (spec.family == "cograph") {
    if (p.empty() || p.size() > 2) throw InputError("family cograph expects parameters n [join_percent]");
    std::vector<std::pair<int, int>> edges;
    detail::cotree(rng, edges, 0, p[0], rng.percent(50), p.size() == 2 ? p[1] : 50);
    out.graph = OrderedGraph::from_edges(p[0], edges);
  } else if (spec.family == "path") {
    detail::need(spec, 1, "n");
    out.graph = path_graph(p[0]);
  } else if (spec.family == "cycle") {
    detail::need(spec, 1, "n");
    if (p[0] < 3) throw InputError("cycle needs n >= 3");
    out.graph = cycle_graph(p[0]);
  } else if (spec.family == "grid") {
    detail::need(spec, 2, "rows cols");
    const int r = p[0], c = p[1];
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) {
        if (j + 1 < c) edges.emplace_back(i * c + j, i * c + j + 1);
        if (i + 1 < r) edges.emplace_back(i * c + j, (i + 1) * c + j);
      }
    out.graph = OrderedGraph::from_edges(r * c, edges);
  } else if (spec.family == "disjoint_cliques") {
    detail::need(spec, 2, "count size");
    std::vector<std::pair<int, int>> edges;
    for (int b = 0; b < p[0]; ++b)
      for (int i = 0; i < p[1]; ++i)
        for (int j = i + 1; j < p[1]; ++j) edges.emplace_back(b * p[1] + i, b * p[1] + j);
    out.graph = OrderedGraph::from_edges(p[0] * p[1], edges);
  } else if (spec.family == "erdos_renyi") {
    detail::need(spec, 2, "n percent");
    if (p[1] > 100) throw InputError("edge percent must be <= 100");
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < p[0]; ++u)
      for (int v = u + 1; v < p[0]; ++v)
        if (rng.percent(p[1])) edges.emplace_back(u, v);
    out.graph = OrderedGraph::from_edges(p[0], edges);
  } else if (spec.family == "bounded_tww") {
    detail::need(spec, 2, "n t");
    out = detail::bounded_tww(rng, p[0], p[1]);
  } else {
    throw InputError("unknown generator family '" + spec.family + "'");
  }
  return out;
}

inline const std::vector<std::string>& generator_families() {
  static const std::vector<std::string> f{"cograph", "path", "cycle", "grid", "disjoint_cliques", "erdos_renyi", "bounded_tww"};
  return f;
}

}  // namespace mixedfree
