#pragma once

#include <optional>
#include <vector>

#include "graph.hpp"

namespace mixedfree {

namespace detail {

// Connected components of G[s] (complement = true: of the complement of G[s]),
// each listed in vertex order; components ordered by their first vertex.
inline std::vector<Bitset> components_within(const OrderedGraph& g, const Bitset& s, bool complement) {
  std::vector<Bitset> out;
  Bitset left = s;
  while (left.any()) {
    Bitset comp(s.size());
    Bitset frontier(s.size());
    const auto start = left.find_first();
    frontier.set(start);
    left.reset(start);
    while (frontier.any()) {
      const auto v = frontier.find_first();
      frontier.reset(v);
      comp.set(v);
      Bitset next = left;
      if (complement) {
        next.subtract(g.neighbors(static_cast<Vertex>(v)));
      } else {
        next &= g.neighbors(static_cast<Vertex>(v));
      }
      frontier |= next;
      left.subtract(next);
    }
    out.push_back(std::move(comp));
  }
  return out;
}

// Colours G[s] with omega(G[s]) colours via the cotree; colours written into
// `color` (1-based, local to s). Returns the number of colours, or nullopt if
// G[s] is not a cograph.
inline std::optional<int> cotree_color(const OrderedGraph& g, const Bitset& s, std::vector<int>& color) {
  const auto count = s.count();
  if (count == 0) return 0;
  if (count == 1) {
    color[s.find_first()] = 1;
    return 1;
  }
  auto parts = components_within(g, s, false);
  if (parts.size() > 1) {
    int best = 0;
    for (const auto& p : parts) {
      auto c = cotree_color(g, p, color);
      if (!c) return std::nullopt;
      best = std::max(best, *c);
    }
    return best;
  }
  parts = components_within(g, s, true);
  if (parts.size() == 1) return std::nullopt;
  int offset = 0;
  for (const auto& p : parts) {
    auto c = cotree_color(g, p, color);
    if (!c) return std::nullopt;
    for (auto v = p.find_first(); v < p.size(); v = p.find_next(v + 1)) color[v] += offset;
    offset += *c;
  }
  return offset;
}

}  // namespace detail

// P4-free test by complement-reducibility: a graph on >= 2 vertices is a cograph
// iff it or its complement is disconnected and every part is a cograph.
inline bool is_cograph(const OrderedGraph& g) {
  std::vector<int> scratch(static_cast<std::size_t>(g.size()), 0);
  return detail::cotree_color(g, g.all_vertices(), scratch).has_value();
}

// Optimal colouring of a cograph: disjoint unions reuse one palette, joins
// concatenate palettes. Uses exactly omega(g) colours.
inline Coloring cograph_color(const OrderedGraph& g) {
  Coloring c;
  c.color.assign(static_cast<std::size_t>(g.size()), 0);
  if (!detail::cotree_color(g, g.all_vertices(), c.color)) throw PromiseViolated("graph is not a cograph (contains an induced P4)");
  return c;
}

}  // namespace mixedfree
