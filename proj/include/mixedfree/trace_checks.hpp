#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "engine.hpp"
#include "minor.hpp"

namespace mixedfree {

namespace detail {

// Bron-Kerbosch with pivoting over plain adjacency lists; deliberately shares
// nothing with the bitset branch and bound used by the engine.
inline void bk(const std::vector<std::vector<char>>& adj, std::vector<int>& r, std::vector<int> p, std::vector<int> x, int& best) {
  if (p.empty() && x.empty()) {
    best = std::max(best, static_cast<int>(r.size()));
    return;
  }
  if (static_cast<int>(r.size() + p.size()) <= best) return;
  int pivot = -1, most = -1;
  for (const auto* set : {&p, &x})
    for (int u : *set) {
      int c = 0;
      for (int v : p) c += adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
      if (c > most) most = c, pivot = u;
    }
  const auto candidates = p;
  for (int v : candidates) {
    if (pivot >= 0 && adj[static_cast<std::size_t>(pivot)][static_cast<std::size_t>(v)]) continue;
    std::vector<int> np, nx;
    for (int w : p)
      if (adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)]) np.push_back(w);
    for (int w : x)
      if (adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)]) nx.push_back(w);
    r.push_back(v);
    bk(adj, r, np, nx, best);
    r.pop_back();
    p.erase(std::find(p.begin(), p.end(), v));
    x.push_back(v);
  }
}

}  // namespace detail

inline int naive_clique_number(const OrderedGraph& g, const VertexList& verts) {
  const auto n = static_cast<std::size_t>(g.size());
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (auto u : verts)
    for (auto v : verts) adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = g.adjacent(u, v);
  std::vector<int> r;
  int best = 0;
  detail::bk(adj, r, verts, {}, best);
  return best;
}

inline int naive_clique_number(const OrderedGraph& g) {
  VertexList all(static_cast<std::size_t>(g.size()));
  std::iota(all.begin(), all.end(), 0);
  return naive_clique_number(g, all);
}

struct TraceCheckReport {
  std::map<std::string, long> checked;  // property -> instances examined
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
  void expect(const std::string& property, bool holds, const std::string& where) {
    ++checked[property];
    if (!holds) failures.push_back(property + " at " + where);
  }
};

// Re-derives the inequalities the construction relies on from the recorded
// decomposition, using only the node graphs and exact oracles.
inline TraceCheckReport check_trace(const EngineTrace& trace) {
  TraceCheckReport rep;
  rep.expect("replay", replay_coloring(trace).color == trace.nodes.front().coloring.color, "root");
  for (const auto& nd : trace.nodes) {
    const std::string at = "node " + std::to_string(nd.id);
    rep.expect("node_proper", is_proper(nd.graph, nd.coloring), at);
    rep.expect("node_omega", nd.graph.size() == 0 || naive_clique_number(nd.graph) == nd.omega, at);
    if (nd.kind != NodeKind::Recursive) continue;
    const auto& g = nd.graph;
    const int target = nd.omega - nd.k;

    // Blobs: convex, consecutive, covering; each of the first m has clique
    // number exactly omega - k and loses it without its last vertex; the rest
    // stays below omega - k.
    Vertex next = 0;
    for (std::size_t i = 0; i < nd.blobs.size(); ++i) {
      const auto& b = nd.blobs[i];
      bool convex = true;
      for (auto v : b) convex = convex && v == next++;
      rep.expect("blob_convex", convex, at + " blob " + std::to_string(i + 1));
      const int w = b.empty() ? 0 : naive_clique_number(g, b);
      if (static_cast<int>(i) < nd.m) {
        rep.expect("blob_clique", w == target, at + " blob " + std::to_string(i + 1));
        VertexList shorter(b.begin(), b.end() - 1);
        rep.expect("blob_minimal", naive_clique_number(g, shorter) < target, at + " blob " + std::to_string(i + 1));
      } else {
        rep.expect("rest_clique", w < target, at);
      }
    }
    rep.expect("blob_cover", next == g.size(), at);

    for (std::size_t c = 0; c < nd.classes.size(); ++c) {
      const auto& cr = nd.classes[c];
      const auto& gc = cr.graph;
      const std::string cat = at + " class " + std::to_string(c);
      std::vector<int> blob_of(static_cast<std::size_t>(gc.size()), -1);
      std::vector<Interval> spans;
      for (std::size_t b = 0; b < cr.blobs.size(); ++b) {
        for (auto v : cr.blobs[b]) blob_of[static_cast<std::size_t>(v)] = static_cast<int>(b);
        spans.push_back(span_of(cr.blobs[b]));
      }
      for (std::size_t a = 0; a < cr.blobs.size(); ++a)
        for (std::size_t b = a + 1; b < cr.blobs.size(); ++b)
          rep.expect("class_not_mixed", classify_zone(gc, spans[a], spans[b]) != ZoneClass::Mixed, cat);

      // Rich iff complete towards another blob of the class, by entry scan.
      std::vector<char> rich(static_cast<std::size_t>(gc.size()), 0);
      for (auto v : cr.split.rich) rich[static_cast<std::size_t>(v)] = 1;
      for (Vertex v = 0; v < gc.size(); ++v) {
        bool complete_somewhere = false;
        for (std::size_t b = 0; b < cr.blobs.size(); ++b) {
          if (static_cast<int>(b) == blob_of[static_cast<std::size_t>(v)]) continue;
          bool all = true;
          for (auto w : cr.blobs[b]) all = all && gc.entry(v, w);
          complete_somewhere = complete_somewhere || all;
        }
        rep.expect("rich_poor_split", complete_somewhere == static_cast<bool>(rich[static_cast<std::size_t>(v)]), cat);
      }
      for (auto u : cr.split.poor)
        for (auto v : cr.split.poor)
          if (u < v && blob_of[static_cast<std::size_t>(u)] != blob_of[static_cast<std::size_t>(v)])
            rep.expect("poor_independent", !gc.adjacent(u, v), cat);

      const int ulimit = floor_log2(nd.k);
      for (std::size_t s = 0; s < cr.subblobs.size(); ++s) {
        const auto& sb = cr.subblobs[s];
        const std::string sat = cat + " subblob " + std::to_string(s);
        const int w = naive_clique_number(gc, sb.vertices);
        rep.expect("subblob_clique", w <= nd.k && w == sb.bucket.clique, sat);
        const int u = sb.bucket.key.u;
        rep.expect("bucket_u_range", u >= 0 && u <= ulimit && (1 << u) <= std::max(w, 1) && std::max(w, 1) < (2 << u), sat);
      }

      // Mixed strip: consecutive members of a bucket within one blob span rows
      // whose restriction to the blobs on the z side is mixed.
      for (const auto& br : cr.buckets)
        for (const auto& bb : br.blobs) {
          const auto blob_span = spans[static_cast<std::size_t>(bb.blob)];
          for (std::size_t p = 1; p < bb.subblobs.size(); ++p) {
            const auto& prev = cr.subblobs[static_cast<std::size_t>(bb.subblobs[p - 1])];
            const auto& cur = cr.subblobs[static_cast<std::size_t>(bb.subblobs[p])];
            const Interval rows{prev.vertices.front(), cur.vertices.front() + 1};
            const Interval cols = br.key.right ? Interval{blob_span.end, gc.size()} : Interval{0, blob_span.begin};
            const bool mixed = !cols.empty() && classify_zone(gc, rows, cols) == ZoneClass::Mixed;
            rep.expect("mixed_strip", mixed, cat + " blob " + std::to_string(bb.blob));
          }
        }

      for (const auto& br : cr.buckets)
        for (const auto& f : br.classes) {
          const int bound = 2 * (nd.k >> br.key.u) + 1;
          rep.expect("f_class_clique", naive_clique_number(gc, f.vertices) <= bound && f.bound == bound, cat);
        }
    }
  }
  return rep;
}

// Every horizontal and vertical compression built at depth d of the trace
// admits no (d-1)-almost mixed minor. Only expected when the input honours the
// promise; returns the offending (node, kind) descriptions.
inline std::vector<std::string> check_compressions_drop_order(const EngineTrace& trace, const Caps& caps = {}) {
  std::vector<std::string> bad;
  for (const auto& nd : trace.nodes)
    for (const auto& cr : nd.classes)
      for (const auto& br : cr.buckets)
        for (const auto& bb : br.blobs)
          for (const auto* gx : {&bb.gh, &bb.gv})
            if (find_almost_mixed_minor(*gx, nd.d - 1, std::nullopt, caps))
              bad.push_back("node " + std::to_string(nd.id) + (gx == &bb.gh ? " H" : " V") + " blob " + std::to_string(bb.blob));
  return bad;
}

}  // namespace mixedfree
