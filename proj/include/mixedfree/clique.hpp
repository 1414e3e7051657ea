#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace mixedfree {

namespace detail {

// Bitset branch-and-bound maximum clique (greedy colour-class bounds). Vertices
// are branched in reverse colour order; ties follow the vertex order, so the
// witness is deterministic.
class CliqueSearch {
 public:
  // Stops as soon as a clique of size >= stop_at is found; floor is the size a
  // clique must exceed to be recorded.
  CliqueSearch(const OrderedGraph& g, int floor, int stop_at) : g_(g), floor_(floor), stop_at_(stop_at) {}

  void run(Bitset candidates) {
    if (candidates.none()) return;
    expand(std::move(candidates));
  }

  const VertexList& best() const { return best_; }

 private:
  int best_size() const { return std::max<int>(floor_, static_cast<int>(best_.size())); }

  void expand(Bitset p) {
    std::vector<Vertex> order;
    std::vector<int> bound;
    {
      Bitset uncolored = p;
      int color = 0;
      while (uncolored.any()) {
        ++color;
        Bitset q = uncolored;
        for (auto v = q.find_first(); v < q.size(); v = q.find_first()) {
          q.reset(v);
          q.subtract(g_.neighbors(static_cast<Vertex>(v)));
          uncolored.reset(v);
          order.push_back(static_cast<Vertex>(v));
          bound.push_back(color);
        }
      }
    }
    for (auto i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
      if (static_cast<int>(current_.size()) + bound[static_cast<std::size_t>(i)] <= best_size()) return;
      const Vertex v = order[static_cast<std::size_t>(i)];
      current_.push_back(v);
      Bitset next = p & g_.neighbors(v);
      if (next.none()) {
        if (static_cast<int>(current_.size()) > best_size()) best_ = current_;
      } else {
        expand(std::move(next));
      }
      current_.pop_back();
      if (done()) return;
      p.reset(static_cast<std::size_t>(v));
    }
  }

  bool done() const { return stop_at_ > 0 && static_cast<int>(best_.size()) >= stop_at_; }

  const OrderedGraph& g_;
  int floor_;
  int stop_at_;
  VertexList current_;
  VertexList best_;
};

}  // namespace detail

// Maximum clique inside `candidates`, no size cap. Empty candidates give an
// empty clique.
inline CliqueWitness max_clique_within(const OrderedGraph& g, const Bitset& candidates) {
  detail::CliqueSearch s(g, 0, 0);
  s.run(candidates);
  CliqueWitness w{s.best()};
  std::sort(w.vertices.begin(), w.vertices.end());
  return w;
}

// Some clique of exactly `size` vertices inside `candidates`, if one exists.
inline std::optional<CliqueWitness> find_clique_of_size(const OrderedGraph& g, const Bitset& candidates, int size) {
  if (size <= 0) return CliqueWitness{};
  detail::CliqueSearch s(g, size - 1, size);
  s.run(candidates);
  if (static_cast<int>(s.best().size()) < size) return std::nullopt;
  CliqueWitness w{s.best()};
  w.vertices.resize(static_cast<std::size_t>(size));
  std::sort(w.vertices.begin(), w.vertices.end());
  return w;
}

// Exact clique number with witness; refuses graphs above the cap.
inline std::pair<int, CliqueWitness> clique_number(const OrderedGraph& g, int cap = 64) {
  if (g.size() > cap)
    throw OracleCapError("clique_number on " + std::to_string(g.size()) + " vertices (cap " + std::to_string(cap) + ")");
  auto w = max_clique_within(g, g.all_vertices());
  return {w.size(), std::move(w)};
}

inline int clique_size_within(const OrderedGraph& g, const Bitset& candidates) {
  return max_clique_within(g, candidates).size();
}

inline bool is_clique(const OrderedGraph& g, std::span<const Vertex> vs) {
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (!g.adjacent(vs[i], vs[j])) return false;
  return true;
}

}  // namespace mixedfree
