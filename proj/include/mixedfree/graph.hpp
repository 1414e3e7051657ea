#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bitset.hpp"
#include "errors.hpp"

namespace mixedfree {

// A vertex is its position in the order (0-based). Position i corresponds to
// row/column i of the adjacency matrix.
using Vertex = int;
using VertexList = std::vector<Vertex>;
using Label = std::int64_t;

// Simple undirected graph together with a total vertex order. Vertices are the
// positions 0..n-1 in that order; `label(v)` keeps the id the vertex had when
// the graph was loaded (or in the parent graph, for induced subgraphs).
class OrderedGraph {
 public:
  OrderedGraph() = default;

  // Edgeless graph on n vertices labelled 1..n.
  explicit OrderedGraph(int n) : rows_(static_cast<std::size_t>(n), Bitset(static_cast<std::size_t>(n))) {
    default_labels();
  }

  // Takes adjacency rows; validates symmetry and the zero diagonal.
  explicit OrderedGraph(std::vector<Bitset> rows, std::vector<Label> labels = {})
      : rows_(std::move(rows)), labels_(std::move(labels)) {
    const auto n = rows_.size();
    for (std::size_t u = 0; u < n; ++u) {
      if (rows_[u].size() != n) throw InputError("adjacency row has wrong length");
      if (rows_[u].test(u)) throw InputError("self-loop at vertex " + std::to_string(u + 1));
      for (auto v = rows_[u].find_first(); v < n; v = rows_[u].find_next(v + 1))
        if (!rows_[v].test(u)) throw InputError("adjacency is not symmetric");
    }
    if (labels_.empty()) {
      default_labels();
    } else if (labels_.size() != n) {
      throw InputError("label vector has wrong length");
    }
  }

  // Edges are 0-based position pairs.
  static OrderedGraph from_edges(int n, std::span<const std::pair<int, int>> edges) {
    std::vector<Bitset> rows(static_cast<std::size_t>(n), Bitset(static_cast<std::size_t>(n)));
    for (auto [u, v] : edges) {
      if (u < 0 || v < 0 || u >= n || v >= n) throw InputError("edge endpoint out of range");
      if (u == v) throw InputError("self-loop at vertex " + std::to_string(u + 1));
      rows[static_cast<std::size_t>(u)].set(static_cast<std::size_t>(v));
      rows[static_cast<std::size_t>(v)].set(static_cast<std::size_t>(u));
    }
    return OrderedGraph(std::move(rows));
  }
  static OrderedGraph from_edges(int n, std::initializer_list<std::pair<int, int>> edges) {
    return from_edges(n, std::span<const std::pair<int, int>>(edges.begin(), edges.size()));
  }

  int size() const { return static_cast<int>(rows_.size()); }
  bool empty() const { return rows_.empty(); }
  bool adjacent(Vertex u, Vertex v) const { return rows_[idx(u)].test(idx(v)); }
  const Bitset& neighbors(Vertex v) const { return rows_[idx(v)]; }
  int degree(Vertex v) const { return static_cast<int>(rows_[idx(v)].count()); }
  Label label(Vertex v) const { return labels_[idx(v)]; }
  const std::vector<Label>& labels() const { return labels_; }
  const std::vector<Bitset>& rows() const { return rows_; }

  std::size_t edge_count() const {
    std::size_t m = 0;
    for (const auto& r : rows_) m += r.count();
    return m / 2;
  }

  // Edges (u, v) with u < v, lexicographic.
  std::vector<std::pair<Vertex, Vertex>> edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (int u = 0; u < size(); ++u)
      for (auto v = rows_[idx(u)].find_next(idx(u) + 1); v < rows_.size(); v = rows_[idx(u)].find_next(v + 1))
        out.emplace_back(u, static_cast<Vertex>(v));
    return out;
  }

  Bitset all_vertices() const {
    Bitset b(rows_.size());
    b.set_all();
    return b;
  }

  // Matrix entry M[u, v] as 0/1.
  int entry(Vertex u, Vertex v) const { return adjacent(u, v) ? 1 : 0; }

  friend bool operator==(const OrderedGraph& a, const OrderedGraph& b) { return a.rows_ == b.rows_; }

 private:
  static std::size_t idx(Vertex v) { return static_cast<std::size_t>(v); }
  void default_labels() {
    labels_.resize(rows_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i) labels_[i] = static_cast<Label>(i + 1);
  }

  std::vector<Bitset> rows_;
  std::vector<Label> labels_;
};

// Proper-or-not color assignment; colors are integers 1..K.
struct Coloring {
  std::vector<int> color;

  int num_colors() const {
    std::vector<int> c = color;
    std::sort(c.begin(), c.end());
    return static_cast<int>(std::unique(c.begin(), c.end()) - c.begin());
  }

  // Flattens arbitrary ordered keys to 1..K in first-use (vertex) order.
  template <typename Key>
  static Coloring from_keys(const std::vector<Key>& keys) {
    std::map<Key, int> ids;
    Coloring out;
    out.color.reserve(keys.size());
    for (const auto& k : keys) {
      auto [it, inserted] = ids.try_emplace(k, static_cast<int>(ids.size()) + 1);
      out.color.push_back(it->second);
    }
    return out;
  }

  // Renumbers to 1..K by first use.
  Coloring normalized() const { return from_keys(color); }
};

struct CliqueWitness {
  VertexList vertices;
  int size() const { return static_cast<int>(vertices.size()); }
};

// Sorted, duplicate-free copy of `s`, validated against g.
inline VertexList checked_vertex_set(const OrderedGraph& g, std::span<const Vertex> s) {
  VertexList out(s.begin(), s.end());
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) throw InputError("duplicate vertex in set");
  if (!out.empty() && (out.front() < 0 || out.back() >= g.size()))
    throw InputError("unknown vertex id in set");
  return out;
}

inline Bitset to_bitset(int n, std::span<const Vertex> s) {
  Bitset b(static_cast<std::size_t>(n));
  for (auto v : s) b.set(static_cast<std::size_t>(v));
  return b;
}

// Induced subgraph on S with the inherited order; labels carry over so every
// vertex can be mapped back to g.
inline OrderedGraph induced(const OrderedGraph& g, std::span<const Vertex> s) {
  const VertexList sorted = checked_vertex_set(g, s);
  const auto k = sorted.size();
  std::vector<Bitset> rows(k, Bitset(k));
  std::vector<Label> labels(k);
  for (std::size_t i = 0; i < k; ++i) {
    labels[i] = g.label(sorted[i]);
    for (std::size_t j = i + 1; j < k; ++j) {
      if (g.adjacent(sorted[i], sorted[j])) {
        rows[i].set(j);
        rows[j].set(i);
      }
    }
  }
  return OrderedGraph(std::move(rows), std::move(labels));
}
inline OrderedGraph induced(const OrderedGraph& g, std::initializer_list<Vertex> s) {
  return induced(g, std::span<const Vertex>(s.begin(), s.size()));
}

// Same graph with vertices relabelled by `perm`: new position i holds old vertex perm[i].
inline OrderedGraph reorder(const OrderedGraph& g, std::span<const Vertex> perm) {
  const auto n = static_cast<std::size_t>(g.size());
  if (perm.size() != n) throw InputError("order has wrong length");
  std::vector<char> seen(n, 0);
  for (auto p : perm) {
    if (p < 0 || static_cast<std::size_t>(p) >= n || seen[static_cast<std::size_t>(p)])
      throw InputError("order is not a permutation");
    seen[static_cast<std::size_t>(p)] = 1;
  }
  std::vector<Bitset> rows(n, Bitset(n));
  std::vector<Label> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = g.label(perm[i]);
    for (std::size_t j = 0; j < n; ++j)
      if (g.adjacent(perm[i], perm[j])) rows[i].set(j);
  }
  return OrderedGraph(std::move(rows), std::move(labels));
}

inline bool is_proper(const OrderedGraph& g, const Coloring& c) {
  if (c.color.size() != static_cast<std::size_t>(g.size()))
    throw InputError("coloring does not cover every vertex");
  for (auto col : c.color)
    if (col <= 0) throw InputError("vertex without a color");
  for (auto [u, v] : g.edges())
    if (c.color[static_cast<std::size_t>(u)] == c.color[static_cast<std::size_t>(v)]) return false;
  return true;
}

enum class PairClass { Complete, Anticomplete, Impure };

inline std::string to_string(PairClass p) {
  switch (p) {
    case PairClass::Complete: return "complete";
    case PairClass::Anticomplete: return "anticomplete";
    case PairClass::Impure: return "impure";
  }
  return "?";
}

namespace detail {
inline std::pair<Bitset, Bitset> checked_pair(const OrderedGraph& g, std::span<const Vertex> a,
                                              std::span<const Vertex> b) {
  auto as = checked_vertex_set(g, a);
  auto bs = checked_vertex_set(g, b);
  if (as.empty() || bs.empty()) throw InputError("pure-pair sets must be nonempty");
  auto ab = to_bitset(g.size(), as);
  auto bb = to_bitset(g.size(), bs);
  if (ab.intersects(bb)) throw InputError("pure-pair sets must be disjoint");
  return {std::move(ab), std::move(bb)};
}

// Purity of a single vertex towards a set (bitset form, no validation).
inline PairClass vertex_towards(const OrderedGraph& g, Vertex v, const Bitset& b) {
  const auto hit = g.neighbors(v).intersection_count(b);
  if (hit == 0) return PairClass::Anticomplete;
  if (hit == b.count()) return PairClass::Complete;
  return PairClass::Impure;
}

inline PairClass pair_class_bits(const OrderedGraph& g, const Bitset& a, const Bitset& b) {
  bool all = true, none = true;
  const auto bsize = b.count();
  for (auto v = a.find_first(); v < a.size(); v = a.find_next(v + 1)) {
    const auto hit = g.neighbors(static_cast<Vertex>(v)).intersection_count(b);
    if (hit != 0) none = false;
    if (hit != bsize) all = false;
    if (!all && !none) return PairClass::Impure;
  }
  return all ? PairClass::Complete : (none ? PairClass::Anticomplete : PairClass::Impure);
}
}  // namespace detail

inline PairClass pair_class(const OrderedGraph& g, std::span<const Vertex> a, std::span<const Vertex> b) {
  auto [ab, bb] = detail::checked_pair(g, a, b);
  return detail::pair_class_bits(g, ab, bb);
}
inline PairClass pair_class(const OrderedGraph& g, std::initializer_list<Vertex> a, std::initializer_list<Vertex> b) {
  return pair_class(g, std::span<const Vertex>(a.begin(), a.size()), std::span<const Vertex>(b.begin(), b.size()));
}

// Every vertex of A is complete or anticomplete towards B.
inline bool is_semipure(const OrderedGraph& g, std::span<const Vertex> a, std::span<const Vertex> b) {
  auto [ab, bb] = detail::checked_pair(g, a, b);
  for (auto v = ab.find_first(); v < ab.size(); v = ab.find_next(v + 1))
    if (detail::vertex_towards(g, static_cast<Vertex>(v), bb) == PairClass::Impure) return false;
  return true;
}
inline bool is_semipure(const OrderedGraph& g, std::initializer_list<Vertex> a, std::initializer_list<Vertex> b) {
  return is_semipure(g, std::span<const Vertex>(a.begin(), a.size()), std::span<const Vertex>(b.begin(), b.size()));
}

// Named small graphs used throughout tests and generators.
inline OrderedGraph complete_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return OrderedGraph::from_edges(n, e);
}

inline OrderedGraph path_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u + 1 < n; ++u) e.emplace_back(u, u + 1);
  return OrderedGraph::from_edges(n, e);
}

inline OrderedGraph cycle_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u + 1 < n; ++u) e.emplace_back(u, u + 1);
  if (n >= 3) e.emplace_back(n - 1, 0);
  return OrderedGraph::from_edges(n, e);
}

inline OrderedGraph complement(const OrderedGraph& g) {
  const auto n = static_cast<std::size_t>(g.size());
  std::vector<Bitset> rows(n, Bitset(n));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (u != v && !g.adjacent(static_cast<Vertex>(u), static_cast<Vertex>(v))) rows[u].set(v);
  return OrderedGraph(std::move(rows), g.labels());
}

}  // namespace mixedfree
