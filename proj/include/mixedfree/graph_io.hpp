#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "graph.hpp"

namespace mixedfree {

namespace detail {

inline std::string at_line(int lineno) { return "line " + std::to_string(lineno) + ": "; }

inline Label parse_id(std::istringstream& ls, int lineno, const char* what) {
  std::string tok;
  if (!(ls >> tok)) throw InputError(at_line(lineno) + "missing " + what);
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    throw InputError(at_line(lineno) + "bad " + what + " '" + tok + "'");
  }
  if (used != tok.size()) throw InputError(at_line(lineno) + "bad " + what + " '" + tok + "'");
  return v;
}

inline void expect_end(std::istringstream& ls, int lineno) {
  std::string extra;
  if (ls >> extra) throw InputError(at_line(lineno) + "unexpected token '" + extra + "'");
}

}  // namespace detail

// "p n m", m lines "e u v" (1-based), optional "o p1 .. pn", "c" comments.
// Vertex ids become labels; the graph's positions follow the order line.
inline OrderedGraph read_graph(std::istream& is) {
  std::string line;
  int lineno = 0;
  long long n = -1, m = -1;
  std::vector<std::pair<int, int>> edges;
  std::set<std::pair<int, int>> seen;
  std::vector<int> order;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') throw InputError(detail::at_line(lineno) + "CR line ending");
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "c") continue;
    if (tag == "p") {
      if (n >= 0) throw InputError(detail::at_line(lineno) + "duplicate problem line");
      n = detail::parse_id(ls, lineno, "vertex count");
      m = detail::parse_id(ls, lineno, "edge count");
      detail::expect_end(ls, lineno);
      if (n < 0 || m < 0 || n > 1'000'000) throw InputError(detail::at_line(lineno) + "bad sizes");
    } else if (tag == "e") {
      if (n < 0) throw InputError(detail::at_line(lineno) + "edge before problem line");
      const auto u = detail::parse_id(ls, lineno, "endpoint"), v = detail::parse_id(ls, lineno, "endpoint");
      detail::expect_end(ls, lineno);
      if (u < 1 || v < 1 || u > n || v > n) throw InputError(detail::at_line(lineno) + "endpoint out of range");
      if (u == v) throw InputError(detail::at_line(lineno) + "self-loop");
      const std::pair<int, int> key{static_cast<int>(std::min(u, v)), static_cast<int>(std::max(u, v))};
      if (!seen.insert(key).second) throw InputError(detail::at_line(lineno) + "duplicate edge");
      edges.emplace_back(static_cast<int>(u) - 1, static_cast<int>(v) - 1);
    } else if (tag == "o") {
      if (n < 0) throw InputError(detail::at_line(lineno) + "order before problem line");
      if (!order.empty()) throw InputError(detail::at_line(lineno) + "duplicate order line");
      std::vector<char> used(static_cast<std::size_t>(n), 0);
      for (long long i = 0; i < n; ++i) {
        const auto v = detail::parse_id(ls, lineno, "order entry");
        if (v < 1 || v > n || used[static_cast<std::size_t>(v - 1)]) throw InputError(detail::at_line(lineno) + "order is not a permutation");
        used[static_cast<std::size_t>(v - 1)] = 1;
        order.push_back(static_cast<int>(v) - 1);
      }
      detail::expect_end(ls, lineno);
    } else {
      throw InputError(detail::at_line(lineno) + "unknown line type '" + tag + "'");
    }
  }
  if (n < 0) throw InputError("missing problem line");
  if (static_cast<long long>(edges.size()) != m)
    throw InputError("problem line declares " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  auto g = OrderedGraph::from_edges(static_cast<int>(n), edges);
  if (order.empty()) return g;
  if (static_cast<long long>(order.size()) != n) throw InputError("order line has wrong length");
  return reorder(g, order);
}

inline OrderedGraph parse_graph(const std::string& text) {
  std::istringstream is(text);
  return read_graph(is);
}

// Writes labels as vertex ids. The order line is omitted when the labels are
// 1..n in order.
inline void write_graph(std::ostream& os, const OrderedGraph& g) {
  const int n = g.size();
  bool identity = true;
  std::vector<Label> sorted = g.labels();
  for (int v = 0; v < n; ++v) identity = identity && g.label(v) == v + 1;
  std::sort(sorted.begin(), sorted.end());
  for (int v = 0; v < n; ++v)
    if (sorted[static_cast<std::size_t>(v)] != v + 1) throw InputError("labels must be a permutation of 1..n to be written");
  os << "p " << n << ' ' << g.edge_count() << '\n';
  std::vector<std::pair<Label, Label>> edges;
  for (auto [u, v] : g.edges()) edges.emplace_back(std::min(g.label(u), g.label(v)), std::max(g.label(u), g.label(v)));
  std::sort(edges.begin(), edges.end());
  for (auto [u, v] : edges) os << "e " << u << ' ' << v << '\n';
  if (!identity) {
    os << 'o';
    for (int v = 0; v < n; ++v) os << ' ' << g.label(v);
    os << '\n';
  }
}

inline std::string format_graph(const OrderedGraph& g) {
  std::ostringstream os;
  write_graph(os, g);
  return os.str();
}

// "v <vertex> <color>" per vertex, in label order.
inline void write_coloring(std::ostream& os, const OrderedGraph& g, const Coloring& c) {
  if (c.color.size() != static_cast<std::size_t>(g.size())) throw InputError("coloring does not match graph");
  std::vector<std::pair<Label, int>> rows;
  for (int v = 0; v < g.size(); ++v) rows.emplace_back(g.label(v), c.color[static_cast<std::size_t>(v)]);
  std::sort(rows.begin(), rows.end());
  for (auto [v, col] : rows) os << "v " << v << ' ' << col << '\n';
}

inline Coloring read_coloring(std::istream& is, const OrderedGraph& g) {
  std::map<Label, Vertex> pos;
  for (int v = 0; v < g.size(); ++v) pos[g.label(v)] = v;
  Coloring c;
  c.color.assign(static_cast<std::size_t>(g.size()), 0);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag != "v") throw InputError(detail::at_line(lineno) + "expected 'v <vertex> <color>'");
    const auto v = detail::parse_id(ls, lineno, "vertex");
    const auto col = detail::parse_id(ls, lineno, "color");
    detail::expect_end(ls, lineno);
    auto it = pos.find(v);
    if (it == pos.end()) throw InputError(detail::at_line(lineno) + "unknown vertex " + std::to_string(v));
    if (col < 1 || col > 1'000'000'000) throw InputError(detail::at_line(lineno) + "color must be a positive integer");
    auto& slot = c.color[static_cast<std::size_t>(it->second)];
    if (slot != 0) throw InputError(detail::at_line(lineno) + "vertex colored twice");
    slot = static_cast<int>(col);
  }
  for (int v = 0; v < g.size(); ++v)
    if (c.color[static_cast<std::size_t>(v)] == 0) throw InputError("vertex " + std::to_string(g.label(v)) + " has no color");
  return c;
}

}  // namespace mixedfree
