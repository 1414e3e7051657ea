#pragma once

#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace mixedfree {

// Merges taking the discrete partition to the single-part one. A part is named
// by its minimum vertex (position); merging names a and b yields min(a, b).
struct ContractionSequence {
  std::vector<std::pair<Vertex, Vertex>> merges;
};

namespace detail {

// Live partition with the impure ("red") relation between parts maintained
// incrementally: a merge only changes pairs involving the new part.
class PartitionState {
 public:
  explicit PartitionState(const OrderedGraph& g) : g_(g), n_(g.size()) {
    const auto n = static_cast<std::size_t>(n_);
    parts_.assign(n, Bitset(n));
    alive_.assign(n, 1);
    red_.assign(n, Bitset(n));
    for (std::size_t v = 0; v < n; ++v) parts_[v].set(v);
  }

  bool alive(Vertex a) const { return a >= 0 && a < n_ && alive_[static_cast<std::size_t>(a)]; }

  void merge(Vertex a, Vertex b) {
    if (a == b || !alive(a) || !alive(b)) throw InputError("invalid merge of parts " + std::to_string(a) + " and " + std::to_string(b));
    const auto keep = static_cast<std::size_t>(std::min(a, b));
    const auto gone = static_cast<std::size_t>(std::max(a, b));
    parts_[keep] |= parts_[gone];
    alive_[gone] = 0;
    for (std::size_t q = 0; q < static_cast<std::size_t>(n_); ++q) {
      red_[q].reset(gone);
      red_[gone].reset(q);
    }
    for (std::size_t q = 0; q < static_cast<std::size_t>(n_); ++q) {
      if (!alive_[q] || q == keep) continue;
      const bool impure = pair_class_bits(g_, parts_[keep], parts_[q]) == PairClass::Impure;
      red_[keep].assign(q, impure);
      red_[q].assign(keep, impure);
    }
  }

  int max_red_degree() const {
    int best = 0;
    for (std::size_t q = 0; q < static_cast<std::size_t>(n_); ++q)
      if (alive_[q]) best = std::max(best, static_cast<int>(red_[q].count()));
    return best;
  }

  int part_count() const {
    int c = 0;
    for (auto a : alive_) c += a;
    return c;
  }

  std::vector<Vertex> part_names() const {
    std::vector<Vertex> out;
    for (int q = 0; q < n_; ++q)
      if (alive_[static_cast<std::size_t>(q)]) out.push_back(q);
    return out;
  }

  const Bitset& part(Vertex a) const { return parts_[static_cast<std::size_t>(a)]; }

  // Part name of every vertex, packed 4 bits per vertex (n <= 16).
  std::uint64_t encode() const {
    std::uint64_t key = 0;
    for (int q = 0; q < n_; ++q) {
      if (!alive_[static_cast<std::size_t>(q)]) continue;
      const auto& p = parts_[static_cast<std::size_t>(q)];
      for (auto v = p.find_first(); v < p.size(); v = p.find_next(v + 1))
        key |= static_cast<std::uint64_t>(q) << (4 * v);
    }
    return key;
  }

 private:
  const OrderedGraph& g_;
  int n_;
  std::vector<Bitset> parts_;
  std::vector<char> alive_;
  std::vector<Bitset> red_;
};

class TwinwidthSearch {
 public:
  TwinwidthSearch(const OrderedGraph& g, int t) : g_(g), t_(t) {}

  bool run(ContractionSequence& out) {
    PartitionState s(g_);
    return dfs(s, out);
  }

 private:
  bool dfs(const PartitionState& s, ContractionSequence& out) {
    if (s.part_count() <= 1) return true;
    const auto key = s.encode();
    if (failed_.count(key)) return false;
    const auto names = s.part_names();
    for (std::size_t i = 0; i < names.size(); ++i)
      for (std::size_t j = i + 1; j < names.size(); ++j) {
        PartitionState next = s;
        next.merge(names[i], names[j]);
        if (next.max_red_degree() > t_) continue;
        out.merges.emplace_back(names[i], names[j]);
        if (dfs(next, out)) return true;
        out.merges.pop_back();
      }
    failed_.insert(key);
    return false;
  }

  const OrderedGraph& g_;
  int t_;
  std::unordered_set<std::uint64_t> failed_;
};

}  // namespace detail

// Maximum over all intermediate partitions and parts A of the number of parts
// B with (A, B) impure.
inline int width_of_sequence(const OrderedGraph& g, const ContractionSequence& seq) {
  const int n = g.size();
  if (static_cast<int>(seq.merges.size()) != std::max(0, n - 1))
    throw InputError("contraction sequence must have n-1 merges");
  detail::PartitionState s(g);
  int width = 0;
  for (auto [a, b] : seq.merges) {
    s.merge(a, b);
    width = std::max(width, s.max_red_degree());
  }
  return width;
}

// Exact twin-width by iterative deepening over the width bound, DFS over
// merges in lexicographic order, memoising failed partitions.
inline std::pair<int, ContractionSequence> twinwidth_exact(const OrderedGraph& g, int cap = 9) {
  if (g.size() > cap || g.size() > 16)
    throw OracleCapError("twinwidth_exact on " + std::to_string(g.size()) + " vertices (cap " + std::to_string(cap) + ")");
  for (int t = 0;; ++t) {
    ContractionSequence seq;
    detail::TwinwidthSearch search(g, t);
    if (search.run(seq)) return {t, seq};
  }
}

// Order for the almost-mixed-free parameter guaranteed by twin-width t.
inline int d_from_twinwidth(int t) {
  if (t < 0) throw InputError("twin-width must be nonnegative");
  return 4 * t + 4;
}

// Sequence file: one line "<part> <part>" per merge, parts named by the
// minimum label of their members.
inline void write_sequence(std::ostream& os, const OrderedGraph& g, const ContractionSequence& seq) {
  detail::PartitionState s(g);
  auto min_label = [&](Vertex a) {
    Label best = std::numeric_limits<Label>::max();
    const auto& p = s.part(a);
    for (auto v = p.find_first(); v < p.size(); v = p.find_next(v + 1)) best = std::min(best, g.label(static_cast<Vertex>(v)));
    return best;
  };
  for (auto [a, b] : seq.merges) {
    os << min_label(a) << ' ' << min_label(b) << '\n';
    s.merge(a, b);
  }
}

inline ContractionSequence read_sequence(std::istream& is, const OrderedGraph& g) {
  detail::PartitionState s(g);
  ContractionSequence seq;
  std::map<Label, Vertex> name_of;  // min label -> part name
  for (int v = 0; v < g.size(); ++v) name_of[g.label(v)] = v;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    Label a = 0, b = 0;
    if (!(ls >> a >> b)) throw InputError("sequence line " + std::to_string(lineno) + ": expected two part ids");
    auto ia = name_of.find(a), ib = name_of.find(b);
    if (ia == name_of.end() || ib == name_of.end() || a == b)
      throw InputError("sequence line " + std::to_string(lineno) + ": unknown or identical parts");
    const Vertex pa = ia->second, pb = ib->second;
    seq.merges.emplace_back(pa, pb);
    s.merge(pa, pb);
    name_of.erase(std::max(a, b));
    name_of[std::min(a, b)] = std::min(pa, pb);
  }
  return seq;
}

}  // namespace mixedfree
