#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "caps.hpp"
#include "chromatic.hpp"
#include "clique.hpp"
#include "cograph.hpp"
#include "compression.hpp"

namespace mixedfree {

struct EngineOptions {
  int k = 0;             // 0: floor(omega / 8)
  int exact_n_cap = 0;   // instances this small go straight to exact colouring
  int max_depth = 256;
  Caps caps = Caps{};    // clique_n bounds every instance; chromatic_n bounds the exact base case
};

inline int default_k(int omega) { return omega / 8; }

// Lemma range: omega >= 5 and 1 <= k < omega / 4.
inline bool k_in_range(int omega, int k) { return omega >= 5 && k >= 1 && 4 * k < omega; }

struct BlobDecomposition {
  std::vector<VertexList> blobs;  // B_1..B_m, then B_{m+1} (possibly empty)
  int m = 0;
};

// Greedy prefixes with clique number omega - k. Adding a vertex raises the
// clique number by at most one, so only cliques through the new vertex are
// searched.
inline BlobDecomposition form_blobs(const OrderedGraph& g, int omega, int k) {
  if (!k_in_range(omega, k)) throw InputError("form_blobs needs omega >= 5 and 1 <= k < omega/4");
  const int target = omega - k;
  BlobDecomposition out;
  VertexList cur;
  Bitset cur_bits(static_cast<std::size_t>(g.size()));
  int cur_clique = 0;
  for (Vertex v = 0; v < g.size(); ++v) {
    Bitset cands = g.neighbors(v);
    cands &= cur_bits;
    cur.push_back(v);
    cur_bits.set(static_cast<std::size_t>(v));
    if (find_clique_of_size(g, cands, cur_clique)) ++cur_clique;
    if (cur_clique == target) {
      out.blobs.push_back(std::move(cur));
      cur.clear();
      cur_bits.clear();
      cur_clique = 0;
    }
  }
  out.m = static_cast<int>(out.blobs.size());
  out.blobs.push_back(std::move(cur));
  return out;
}

inline Interval span_of(const VertexList& convex) { return {convex.front(), convex.back() + 1}; }

struct MixedClasses {
  OrderedGraph compression;        // mixed compression over B_1..B_m
  DegeneracyColoring coloring;
  std::vector<std::vector<int>> classes;  // blob indices, by colour
};

// Colour classes of the mixed compression over the full blobs; within a class
// no two blobs have a mixed connection.
inline MixedClasses partition_blobs_by_mixed(const OrderedGraph& g, const BlobDecomposition& blobs) {
  const int m = blobs.m;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const auto z = classify_zone(g, span_of(blobs.blobs[static_cast<std::size_t>(i)]), span_of(blobs.blobs[static_cast<std::size_t>(j)]));
      // Two complete blobs would give a clique of 2(omega - k) > omega.
      check_invariant(z != ZoneClass::Constant1, "constant-1 connection between full blobs");
      if (z == ZoneClass::Mixed) edges.emplace_back(i, j);
    }
  MixedClasses out;
  out.compression = OrderedGraph::from_edges(m, edges);
  out.coloring = degeneracy_coloring(out.compression);
  out.classes.resize(static_cast<std::size_t>(out.coloring.coloring.num_colors()));
  for (int i = 0; i < m; ++i)
    out.classes[static_cast<std::size_t>(out.coloring.coloring.color[static_cast<std::size_t>(i)] - 1)].push_back(i);
  return out;
}

struct RichPoor {
  VertexList rich;
  VertexList poor;
};

// v in blob i is rich iff it is complete towards some other blob.
inline RichPoor classify_rich_poor(const OrderedGraph& g, const std::vector<VertexList>& blobs) {
  RichPoor out;
  std::vector<Bitset> bits;
  for (const auto& b : blobs) bits.push_back(to_bitset(g.size(), b));
  for (std::size_t i = 0; i < blobs.size(); ++i)
    for (auto v : blobs[i]) {
      bool rich = false;
      for (std::size_t j = 0; j < blobs.size() && !rich; ++j)
        if (j != i && bits[j].is_subset_of(g.neighbors(v))) rich = true;
      (rich ? out.rich : out.poor).push_back(v);
    }
  std::sort(out.rich.begin(), out.rich.end());
  std::sort(out.poor.begin(), out.poor.end());
  return out;
}

// Maximal-prefix partition of `members` (ordered, inside blob `blob`) into
// classes of twins with respect to everything outside the blob.
inline std::vector<VertexList> form_subblobs(const OrderedGraph& g, const Bitset& blob, const VertexList& members) {
  std::vector<VertexList> out;
  Bitset outside = g.all_vertices();
  outside.subtract(blob);
  Bitset head_nb(static_cast<std::size_t>(g.size()));
  for (auto v : members) {
    Bitset nb = g.neighbors(v);
    nb &= outside;
    if (!out.empty() && nb == head_nb) {
      out.back().push_back(v);
    } else {
      out.push_back({v});
      head_nb = std::move(nb);
    }
  }
  return out;
}

struct BucketKey {
  int x = 0, y = 0;
  bool right = false;  // z: L (false) or R (true)
  int u = 0;
  auto tie() const { return std::tuple(x, y, right, u); }
  friend bool operator<(const BucketKey& a, const BucketKey& b) { return a.tie() < b.tie(); }
  friend bool operator==(const BucketKey& a, const BucketKey& b) { return a.tie() == b.tie(); }
};

struct BucketAssignment {
  BucketKey key;
  int clique = 0;
  std::optional<Vertex> witness;  // for every subblob but the first
  int witness_blob = -1;
};

inline int floor_log2(int x) {
  int u = 0;
  while ((2 << u) <= x) ++u;
  return u;
}

// z from the least vertex outside blob i separating consecutive
// representatives (the minimum vertex of each subblob); u from the clique
// number of the subblob.
inline std::vector<BucketAssignment> assign_bucket(const OrderedGraph& g, const std::vector<int>& blob_of, int blob,
                                                   int x, int y, const std::vector<VertexList>& subblobs) {
  std::vector<BucketAssignment> out;
  for (std::size_t j = 0; j < subblobs.size(); ++j) {
    BucketAssignment a;
    a.key.x = x;
    a.key.y = y;
    if (j > 0) {
      const Vertex vj = subblobs[j].front(), vp = subblobs[j - 1].front();
      for (Vertex w = 0; w < g.size(); ++w) {
        if (blob_of[static_cast<std::size_t>(w)] == blob) continue;
        if (g.adjacent(vj, w) != g.adjacent(vp, w)) {
          a.witness = w;
          break;
        }
      }
      check_invariant(a.witness.has_value(), "consecutive subblobs have no separating vertex");
      a.witness_blob = blob_of[static_cast<std::size_t>(*a.witness)];
      a.key.right = a.witness_blob > blob;
    }
    a.clique = clique_size_within(g, to_bitset(g.size(), subblobs[j]));
    a.key.u = floor_log2(std::max(1, a.clique));
    out.push_back(a);
  }
  return out;
}

enum class NodeRole { Root, Rest, Poor, Subblob, CompressionH, CompressionV, FClass };

inline std::string to_string(NodeRole r) {
  switch (r) {
    case NodeRole::Root: return "root";
    case NodeRole::Rest: return "rest";
    case NodeRole::Poor: return "poor";
    case NodeRole::Subblob: return "subblob";
    case NodeRole::CompressionH: return "compression_h";
    case NodeRole::CompressionV: return "compression_v";
    case NodeRole::FClass: return "f_class";
  }
  return "?";
}

enum class NodeKind { Empty, Exact, Greedy, Cograph, Recursive };

inline std::string to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Empty: return "empty";
    case NodeKind::Exact: return "exact";
    case NodeKind::Greedy: return "greedy";
    case NodeKind::Cograph: return "cograph";
    case NodeKind::Recursive: return "recursive";
  }
  return "?";
}

struct SubblobRecord {
  VertexList vertices;  // in the class instance
  int blob = 0;         // class-local blob index
  BucketAssignment bucket;
  int node = -1;        // lambda_1 recursion
};

struct BlobBucketRecord {
  int blob = 0;
  std::vector<int> subblobs;  // indices into ClassRecord::subblobs, in order
  VertexList vertices;        // G_i, in the class instance
  Division division;          // D_i over G_i
  OrderedGraph gh, gv, gm;
  std::vector<int> phi_m, phi_h, phi_v;  // per entry of `subblobs`
  int h_node = -1, v_node = -1;
};

struct FClassRecord {
  std::array<int, 4> lambda2{};
  VertexList vertices;  // in the class instance
  int clique = 0;
  int bound = 0;        // 2 floor(k / 2^u) + 1
  int node = -1;
};

struct BucketRecord {
  BucketKey key;
  std::vector<int> subblobs;
  std::vector<BlobBucketRecord> blobs;
  std::vector<FClassRecord> classes;
};

struct ClassRecord {
  std::vector<int> blob_ids;        // indices into TraceNode::blobs
  VertexList vertices;              // in the node instance
  OrderedGraph graph;               // the class instance
  std::vector<VertexList> blobs;    // class-local
  RichPoor split;                   // class-local
  std::vector<int> poor_nodes;      // per class-local blob, -1 when no poor vertex
  std::vector<SubblobRecord> subblobs;
  std::vector<BucketRecord> buckets;
};

struct TraceNode {
  int id = 0;
  int parent = -1;
  int depth = 0;
  NodeRole role = NodeRole::Root;
  NodeKind kind = NodeKind::Empty;
  int d = 0, n = 0, omega = 0, k = 0;
  bool promise_violated = false;  // d = 2 on a non-cograph
  bool exact_skipped = false;     // base case above the exact cap
  OrderedGraph graph;
  // Vertex i of this instance is parent_map[i] of the parent instance; the
  // palette prefixes this node's colours in the parent's colour keys. Both are
  // only meaningful for rest, poor and f_class nodes.
  VertexList parent_map;
  std::vector<int> palette;
  std::vector<VertexList> blobs;
  int m = 0;
  OrderedGraph mixed_compression;
  Coloring mixed_classes;
  int rest_node = -1;
  std::vector<ClassRecord> classes;
  Coloring coloring;
  std::vector<int> children;
};

struct EngineTrace {
  std::vector<TraceNode> nodes;  // nodes[0] is the root

  // Per-d maxima of the constants the construction actually consumed: the
  // number of mixed classes (C_A) and the colours of phi^M (C_M).
  std::map<int, std::pair<int, int>> measured_constants() const {
    std::map<int, std::pair<int, int>> out;
    for (const auto& nd : nodes) {
      if (nd.kind != NodeKind::Recursive) continue;
      auto& [ca, cm] = out[nd.d];
      ca = std::max(ca, static_cast<int>(nd.classes.size()));
      for (const auto& cr : nd.classes)
        for (const auto& b : cr.buckets)
          for (const auto& bb : b.blobs)
            for (auto c : bb.phi_m) cm = std::max(cm, c);
    }
    return out;
  }

  int count(bool TraceNode::*flag) const {
    int c = 0;
    for (const auto& nd : nodes) c += nd.*flag ? 1 : 0;
    return c;
  }
};

struct EngineResult {
  Coloring coloring;
  EngineTrace trace;
};

namespace detail {

inline VertexList compose(const VertexList& outer, const VertexList& inner) {
  VertexList out;
  out.reserve(inner.size());
  for (auto v : inner) out.push_back(outer[static_cast<std::size_t>(v)]);
  return out;
}

using ColorKey = std::vector<int>;

inline ColorKey extend(ColorKey prefix, int c) {
  prefix.push_back(c);
  return prefix;
}

class Engine {
 public:
  explicit Engine(const EngineOptions& opts) : opts_(opts) {}

  int run(const OrderedGraph& g, int d, NodeRole role, int parent, VertexList parent_map, ColorKey palette, int depth) {
    if (depth > opts_.max_depth) throw EngineBug("recursion depth guard exceeded at depth " + std::to_string(depth));
    const int id = static_cast<int>(trace_.nodes.size());
    trace_.nodes.emplace_back();
    if (parent >= 0) trace_.nodes[static_cast<std::size_t>(parent)].children.push_back(id);

    TraceNode nd;
    nd.id = id;
    nd.parent = parent;
    nd.depth = depth;
    nd.role = role;
    nd.d = d;
    nd.n = g.size();
    nd.graph = g;
    nd.parent_map = std::move(parent_map);
    nd.palette = std::move(palette);
    nd.omega = g.size() == 0 ? 0 : clique_number(g, opts_.caps.clique_n).first;
    nd.k = opts_.k > 0 ? opts_.k : default_k(nd.omega);

    if (g.size() == 0) {
      nd.kind = NodeKind::Empty;
    } else if (!k_in_range(nd.omega, nd.k) || g.size() <= opts_.exact_n_cap) {
      if (g.size() <= opts_.caps.chromatic_n) {
        nd.kind = NodeKind::Exact;
        nd.coloring = chromatic_exact(g, opts_.caps.chromatic_n).second;
      } else {
        nd.kind = NodeKind::Greedy;
        nd.exact_skipped = true;
        nd.coloring = greedy_fallback(g);
      }
    } else if (d == 2) {
      if (is_cograph(g)) {
        nd.kind = NodeKind::Cograph;
        nd.coloring = cograph_color(g);
      } else {
        nd.kind = NodeKind::Greedy;
        nd.promise_violated = true;
        nd.coloring = greedy_fallback(g);
      }
    } else {
      nd.kind = NodeKind::Recursive;
      recurse(nd);
    }
    check_invariant(is_proper(g, nd.coloring), "node " + std::to_string(id) + " colouring is not proper");
    // Children registered themselves on the placeholder slot.
    nd.children = std::move(trace_.nodes[static_cast<std::size_t>(id)].children);
    trace_.nodes[static_cast<std::size_t>(id)] = std::move(nd);
    return id;
  }

  EngineTrace take_trace() { return std::move(trace_); }

 private:
  const Coloring& colors_of(int node) const { return trace_.nodes[static_cast<std::size_t>(node)].coloring; }

  // Coloring Steps 1-6 on a node with omega >= 5 and 1 <= k < omega / 4.
  void recurse(TraceNode& nd) {
    const auto& g = nd.graph;
    const int n = g.size();
    std::vector<ColorKey> keys(static_cast<std::size_t>(n));

    const auto blobs = form_blobs(g, nd.omega, nd.k);
    nd.blobs = blobs.blobs;
    nd.m = blobs.m;
    for (int i = 0; i < blobs.m; ++i)
      check_invariant(clique_size_within(g, to_bitset(n, blobs.blobs[static_cast<std::size_t>(i)])) == nd.omega - nd.k,
                      "blob clique number differs from omega - k");

    const auto& rest = blobs.blobs.back();
    if (!rest.empty()) {
      nd.rest_node = run(induced(g, rest), nd.d, NodeRole::Rest, nd.id, rest, {0}, nd.depth + 1);
      const auto& c = colors_of(nd.rest_node);
      for (std::size_t i = 0; i < rest.size(); ++i) keys[static_cast<std::size_t>(rest[i])] = {0, c.color[i]};
    }
    if (blobs.m == 0) {
      nd.coloring = Coloring::from_keys(keys);
      return;
    }

    auto mixed = partition_blobs_by_mixed(g, blobs);
    nd.mixed_compression = mixed.compression;
    nd.mixed_classes = mixed.coloring.coloring;
    for (std::size_t c = 0; c < mixed.classes.size(); ++c) {
      ClassRecord cr;
      cr.blob_ids = mixed.classes[c];
      for (auto b : cr.blob_ids)
        for (auto v : blobs.blobs[static_cast<std::size_t>(b)]) cr.vertices.push_back(v);
      color_class(nd, static_cast<int>(c), cr, keys);
      nd.classes.push_back(std::move(cr));
    }
    nd.coloring = Coloring::from_keys(keys);
  }

  void color_class(TraceNode& nd, int c, ClassRecord& cr, std::vector<ColorKey>& keys) {
    cr.graph = induced(nd.graph, cr.vertices);
    const auto& gc = cr.graph;
    const int n = gc.size();
    std::vector<int> blob_of(static_cast<std::size_t>(n), -1);
    {
      int pos = 0;
      for (std::size_t b = 0; b < cr.blob_ids.size(); ++b) {
        VertexList local;
        for (std::size_t t = 0; t < nd.blobs[static_cast<std::size_t>(cr.blob_ids[b])].size(); ++t) {
          blob_of[static_cast<std::size_t>(pos)] = static_cast<int>(b);
          local.push_back(pos++);
        }
        cr.blobs.push_back(std::move(local));
      }
    }
    const int nb = static_cast<int>(cr.blobs.size());
    for (int a = 0; a < nb; ++a)
      for (int b = a + 1; b < nb; ++b)
        check_invariant(classify_zone(gc, span_of(cr.blobs[static_cast<std::size_t>(a)]), span_of(cr.blobs[static_cast<std::size_t>(b)])) !=
                            ZoneClass::Mixed,
                        "mixed connection inside a blob class");

    cr.split = classify_rich_poor(gc, cr.blobs);
    std::vector<char> is_rich(static_cast<std::size_t>(n), 0);
    for (auto v : cr.split.rich) is_rich[static_cast<std::size_t>(v)] = 1;
    for (auto u : cr.split.poor)
      for (auto v : cr.split.poor)
        if (u < v && blob_of[static_cast<std::size_t>(u)] != blob_of[static_cast<std::size_t>(v)])
          check_invariant(!gc.adjacent(u, v), "poor vertices of distinct blobs are adjacent");

    // Step 3: G[Z] is a disjoint union over blobs; one shared palette.
    for (int b = 0; b < nb; ++b) {
      VertexList z;
      for (auto v : cr.blobs[static_cast<std::size_t>(b)])
        if (!is_rich[static_cast<std::size_t>(v)]) z.push_back(v);
      if (z.empty()) {
        cr.poor_nodes.push_back(-1);
        continue;
      }
      const auto in_node = compose(cr.vertices, z);
      const int child = run(induced(gc, z), nd.d, NodeRole::Poor, nd.id, in_node, {1, c, 0}, nd.depth + 1);
      cr.poor_nodes.push_back(child);
      const auto& col = colors_of(child);
      for (std::size_t i = 0; i < z.size(); ++i) keys[static_cast<std::size_t>(in_node[i])] = {1, c, 0, col.color[i]};
    }

    // Step 4: subblobs of B'_{i,x,y} and their buckets.
    const Vertex first = 0, last = n - 1;
    for (int b = 0; b < nb; ++b) {
      const auto bits = to_bitset(n, cr.blobs[static_cast<std::size_t>(b)]);
      for (int x = 0; x <= 1; ++x)
        for (int y = 0; y <= 1; ++y) {
          VertexList members;
          for (auto v : cr.blobs[static_cast<std::size_t>(b)])
            if (is_rich[static_cast<std::size_t>(v)] && gc.entry(v, first) == x && gc.entry(v, last) == y) members.push_back(v);
          if (members.empty()) continue;
          const auto subs = form_subblobs(gc, bits, members);
          const auto assigned = assign_bucket(gc, blob_of, b, x, y, subs);
          for (std::size_t j = 0; j < subs.size(); ++j) {
            check_invariant(assigned[j].clique <= nd.k, "subblob clique number exceeds k");
            cr.subblobs.push_back({subs[j], b, assigned[j], -1});
          }
        }
    }
    std::map<BucketKey, std::vector<int>> buckets;
    for (std::size_t s = 0; s < cr.subblobs.size(); ++s) buckets[cr.subblobs[s].bucket.key].push_back(static_cast<int>(s));
    for (auto& [key, members] : buckets) {
      BucketRecord br;
      br.key = key;
      br.subblobs = members;
      color_bucket(nd, c, cr, br, keys);
      cr.buckets.push_back(std::move(br));
    }
  }

  // Steps 5-6 for one bucket W_{x,y,z,u}.
  void color_bucket(TraceNode& nd, int c, ClassRecord& cr, BucketRecord& br, std::vector<ColorKey>& keys) {
    const auto& gc = cr.graph;
    std::vector<int> lambda1(static_cast<std::size_t>(gc.size()), 0);
    for (auto s : br.subblobs) {
      auto& sb = cr.subblobs[static_cast<std::size_t>(s)];
      sb.node = run(induced(gc, sb.vertices), nd.d, NodeRole::Subblob, nd.id, sb.vertices, {}, nd.depth + 1);
      const auto& col = colors_of(sb.node);
      for (std::size_t i = 0; i < sb.vertices.size(); ++i) lambda1[static_cast<std::size_t>(sb.vertices[i])] = col.color[i];
    }

    std::map<int, std::vector<int>> per_blob;
    for (auto s : br.subblobs) per_blob[cr.subblobs[static_cast<std::size_t>(s)].blob].push_back(s);
    std::map<Vertex, std::array<int, 4>> lambda2;
    for (auto& [b, subs] : per_blob) {
      BlobBucketRecord bb;
      bb.blob = b;
      bb.subblobs = subs;
      std::vector<int> sizes;
      for (auto s : subs) {
        const auto& vs = cr.subblobs[static_cast<std::size_t>(s)].vertices;
        bb.vertices.insert(bb.vertices.end(), vs.begin(), vs.end());
        sizes.push_back(static_cast<int>(vs.size()));
      }
      const auto gi = induced(gc, bb.vertices);
      bb.division = Division::from_sizes(sizes);
      bb.gm = compress(gi, bb.division, CompressionKind::M).graph;
      bb.gh = compress(gi, bb.division, CompressionKind::H).graph;
      bb.gv = compress(gi, bb.division, CompressionKind::V).graph;
      bb.phi_m = degeneracy_coloring(bb.gm).coloring.color;
      bb.h_node = run(bb.gh, nd.d - 1, NodeRole::CompressionH, nd.id, {}, {}, nd.depth + 1);
      bb.phi_h = colors_of(bb.h_node).color;
      bb.v_node = run(bb.gv, nd.d - 1, NodeRole::CompressionV, nd.id, {}, {}, nd.depth + 1);
      bb.phi_v = colors_of(bb.v_node).color;
      for (std::size_t p = 0; p < subs.size(); ++p)
        for (auto v : cr.subblobs[static_cast<std::size_t>(subs[p])].vertices)
          lambda2[v] = {lambda1[static_cast<std::size_t>(v)], bb.phi_m[p], bb.phi_h[p], bb.phi_v[p]};
      br.blobs.push_back(std::move(bb));
    }

    std::map<std::array<int, 4>, VertexList> classes;
    for (auto& [v, l2] : lambda2) classes[l2].push_back(v);
    const auto& key = br.key;
    const int bound = 2 * (nd.k >> key.u) + 1;
    VertexList w;
    int t = 0;
    for (auto& [l2, verts] : classes) {
      FClassRecord fr;
      fr.lambda2 = l2;
      fr.vertices = verts;
      fr.clique = clique_size_within(gc, to_bitset(gc.size(), verts));
      fr.bound = bound;
      check_invariant(fr.clique <= bound, "F^t clique number exceeds 2 floor(k/2^u) + 1");
      const auto in_node = compose(cr.vertices, verts);
      ColorKey palette{1, c, 1, key.x, key.y, key.right ? 1 : 0, key.u, t};
      fr.node = run(induced(gc, verts), nd.d, NodeRole::FClass, nd.id, in_node, palette, nd.depth + 1);
      const auto& col = colors_of(fr.node);
      for (std::size_t i = 0; i < verts.size(); ++i) keys[static_cast<std::size_t>(in_node[i])] = extend(palette, col.color[i]);
      w.insert(w.end(), in_node.begin(), in_node.end());
      br.classes.push_back(std::move(fr));
      ++t;
    }

    std::sort(w.begin(), w.end());
    std::vector<ColorKey> wkeys;
    for (auto v : w) wkeys.push_back(keys[static_cast<std::size_t>(v)]);
    check_invariant(is_proper(induced(nd.graph, w), Coloring::from_keys(wkeys)), "bucket colouring is not proper");
  }

  EngineOptions opts_;
  EngineTrace trace_;
};

}  // namespace detail

// Colours g, whose matrix is promised (not checked) to be d-almost mixed
// free. The colouring is proper regardless of the promise.
inline EngineResult color_bounded(const OrderedGraph& g, int d, const EngineOptions& opts = {}) {
  if (d < 2) throw InputError("color_bounded needs d >= 2");
  if (opts.k < 0) throw InputError("k must be nonnegative");
  detail::Engine engine(opts);
  engine.run(g, d, NodeRole::Root, -1, {}, {}, 0);
  EngineResult out;
  out.trace = engine.take_trace();
  out.coloring = out.trace.nodes.front().coloring;
  return out;
}

// Rebuilds a node's colouring from its children's recorded colourings and
// palettes; base nodes return their own.
inline Coloring replay_coloring(const EngineTrace& trace, int node = 0) {
  const auto& nd = trace.nodes.at(static_cast<std::size_t>(node));
  if (nd.kind != NodeKind::Recursive) return nd.coloring;
  std::vector<std::vector<int>> keys(static_cast<std::size_t>(nd.n));
  for (auto ch : nd.children) {
    const auto& child = trace.nodes[static_cast<std::size_t>(ch)];
    if (child.role != NodeRole::Rest && child.role != NodeRole::Poor && child.role != NodeRole::FClass) continue;
    const auto col = replay_coloring(trace, ch);
    for (std::size_t i = 0; i < child.parent_map.size(); ++i)
      keys[static_cast<std::size_t>(child.parent_map[i])] = detail::extend(child.palette, col.color[i]);
  }
  for (const auto& k : keys)
    if (k.empty()) throw EngineBug("trace replay left a vertex uncoloured");
  return Coloring::from_keys(keys);
}

// Greedy merge of colour classes with no edge between them, in colour order.
inline Coloring squash_colors(const OrderedGraph& g, const Coloring& c) {
  const int k = c.num_colors();
  std::vector<Bitset> cls(static_cast<std::size_t>(k), Bitset(static_cast<std::size_t>(g.size())));
  const auto norm = c.normalized();
  for (int v = 0; v < g.size(); ++v) cls[static_cast<std::size_t>(norm.color[static_cast<std::size_t>(v)] - 1)].set(static_cast<std::size_t>(v));
  std::vector<Bitset> merged;
  std::vector<Bitset> merged_nb;
  std::vector<int> target(static_cast<std::size_t>(k));
  for (int a = 0; a < k; ++a) {
    Bitset nb(static_cast<std::size_t>(g.size()));
    const auto& s = cls[static_cast<std::size_t>(a)];
    for (auto v = s.find_first(); v < s.size(); v = s.find_next(v + 1)) nb |= g.neighbors(static_cast<Vertex>(v));
    std::size_t t = 0;
    while (t < merged.size() && merged_nb[t].intersects(s)) ++t;
    if (t == merged.size()) {
      merged.push_back(s);
      merged_nb.push_back(nb);
    } else {
      merged[t] |= s;
      merged_nb[t] |= nb;
    }
    target[static_cast<std::size_t>(a)] = static_cast<int>(t) + 1;
  }
  Coloring out;
  for (auto col : norm.color) out.color.push_back(target[static_cast<std::size_t>(col - 1)]);
  return out;
}

}  // namespace mixedfree
