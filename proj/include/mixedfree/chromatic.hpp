#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "clique.hpp"
#include "graph.hpp"

namespace mixedfree {

// Saturation-degree greedy (DSATUR). Ties: higher degree, then smaller vertex,
// unless `order_hint` is given, in which case ties go to the earlier position
// in the hint. Always proper, deterministic.
inline Coloring greedy_fallback(const OrderedGraph& g, std::span<const Vertex> order_hint = {}) {
  const int n = g.size();
  std::vector<int> rank(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) rank[static_cast<std::size_t>(v)] = v;
  if (!order_hint.empty()) {
    if (static_cast<int>(order_hint.size()) != n) throw InputError("order hint has wrong length");
    for (int i = 0; i < n; ++i) rank[static_cast<std::size_t>(order_hint[static_cast<std::size_t>(i)])] = i;
  }
  Coloring c;
  c.color.assign(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<char>> seen(static_cast<std::size_t>(n));
  std::vector<int> sat(static_cast<std::size_t>(n), 0);
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    for (int v = 0; v < n; ++v) {
      if (c.color[static_cast<std::size_t>(v)]) continue;
      if (pick < 0) {
        pick = v;
        continue;
      }
      auto key = [&](int x) {
        return std::tuple(sat[static_cast<std::size_t>(x)], order_hint.empty() ? g.degree(x) : 0,
                          -rank[static_cast<std::size_t>(x)]);
      };
      if (key(v) > key(pick)) pick = v;
    }
    auto& used = seen[static_cast<std::size_t>(pick)];
    int col = 1;
    while (col < static_cast<int>(used.size()) && used[static_cast<std::size_t>(col)]) ++col;
    c.color[static_cast<std::size_t>(pick)] = col;
    const auto& nb = g.neighbors(pick);
    for (auto u = nb.find_first(); u < nb.size(); u = nb.find_next(u + 1)) {
      auto& su = seen[u];
      if (su.size() <= static_cast<std::size_t>(col)) su.resize(static_cast<std::size_t>(col) + 1, 0);
      if (!su[static_cast<std::size_t>(col)]) {
        su[static_cast<std::size_t>(col)] = 1;
        ++sat[u];
      }
    }
  }
  return c;
}

namespace detail {

// Decides k-colourability by DSATUR branching with colour-symmetry breaking
// (a vertex may open at most one new colour).
class KColorSearch {
 public:
  KColorSearch(const OrderedGraph& g, int k) : g_(g), k_(k), n_(g.size()) {
    color_.assign(static_cast<std::size_t>(n_), 0);
    forbid_.assign(static_cast<std::size_t>(n_), std::vector<int>(static_cast<std::size_t>(k_) + 1, 0));
    sat_.assign(static_cast<std::size_t>(n_), 0);
  }

  std::optional<Coloring> solve(std::span<const Vertex> seed_clique) {
    // Precolour a maximum clique with 1..|K|: sound symmetry breaking.
    int used = 0;
    for (auto v : seed_clique) {
      if (used >= k_) return std::nullopt;
      assign(v, ++used);
    }
    if (!search(static_cast<int>(seed_clique.size()), used)) return std::nullopt;
    return Coloring{color_};
  }

 private:
  void assign(Vertex v, int col) {
    color_[static_cast<std::size_t>(v)] = col;
    const auto& nb = g_.neighbors(v);
    for (auto u = nb.find_first(); u < nb.size(); u = nb.find_next(u + 1))
      if (forbid_[u][static_cast<std::size_t>(col)]++ == 0) ++sat_[u];
  }
  void unassign(Vertex v) {
    const int col = color_[static_cast<std::size_t>(v)];
    color_[static_cast<std::size_t>(v)] = 0;
    const auto& nb = g_.neighbors(v);
    for (auto u = nb.find_first(); u < nb.size(); u = nb.find_next(u + 1))
      if (--forbid_[u][static_cast<std::size_t>(col)] == 0) --sat_[u];
  }

  bool search(int colored, int used) {
    if (colored == n_) return true;
    int pick = -1;
    for (int v = 0; v < n_; ++v) {
      if (color_[static_cast<std::size_t>(v)]) continue;
      if (pick < 0 || sat_[static_cast<std::size_t>(v)] > sat_[static_cast<std::size_t>(pick)] ||
          (sat_[static_cast<std::size_t>(v)] == sat_[static_cast<std::size_t>(pick)] && g_.degree(v) > g_.degree(pick)))
        pick = v;
    }
    const int limit = std::min(k_, used + 1);
    for (int col = 1; col <= limit; ++col) {
      if (forbid_[static_cast<std::size_t>(pick)][static_cast<std::size_t>(col)]) continue;
      assign(pick, col);
      if (search(colored + 1, std::max(used, col))) return true;
      unassign(pick);
    }
    return false;
  }

  const OrderedGraph& g_;
  int k_;
  int n_;
  std::vector<int> color_;
  std::vector<std::vector<int>> forbid_;
  std::vector<int> sat_;
};

}  // namespace detail

// Exact chromatic number. Lower bound from the clique number, upper bound from
// DSATUR; k is raised from the lower bound until a k-colouring is found.
inline std::pair<int, Coloring> chromatic_exact(const OrderedGraph& g, int cap = 24) {
  if (g.size() > cap)
    throw OracleCapError("chromatic_exact on " + std::to_string(g.size()) + " vertices (cap " + std::to_string(cap) + ")");
  if (g.empty()) return {0, Coloring{}};
  const auto clique = max_clique_within(g, g.all_vertices());
  Coloring best = greedy_fallback(g);
  int upper = best.num_colors();
  for (int k = clique.size(); k < upper; ++k) {
    detail::KColorSearch s(g, k);
    if (auto c = s.solve(clique.vertices)) {
      best = *c;
      break;
    }
  }
  best = best.normalized();
  return {best.num_colors(), best};
}

}  // namespace mixedfree
