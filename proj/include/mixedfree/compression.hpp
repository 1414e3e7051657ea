#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "minor.hpp"

namespace mixedfree {

enum class CompressionKind { H, V, M };

inline std::string to_string(CompressionKind k) {
  switch (k) {
    case CompressionKind::H: return "H";
    case CompressionKind::V: return "V";
    case CompressionKind::M: return "M";
  }
  return "?";
}

struct CompressionResult {
  OrderedGraph graph;  // vertices = block indices, natural block order
  CompressionKind kind = CompressionKind::H;
  Division source_division;
};

// Whether blocks i < j are joined in the given compression.
inline bool compression_edge(ZoneClass upper_zone, CompressionKind kind) {
  switch (kind) {
    case CompressionKind::H: return is_horizontal(upper_zone) && upper_zone != ZoneClass::Constant0;
    case CompressionKind::V: return is_vertical(upper_zone) && upper_zone != ZoneClass::Constant0;
    case CompressionKind::M: return upper_zone == ZoneClass::Mixed;
  }
  return false;
}

// Graph on the blocks of a symmetric division: for i < j, H joins i and j when
// zone [i, j] is non-zero horizontal, V when it is non-zero vertical, M when it
// is mixed.
inline CompressionResult compress(const OrderedGraph& g, const Division& division, CompressionKind kind) {
  if (!division.valid_for(g.size())) throw InputError("invalid division");
  if (!division.is_symmetric()) throw InputError("compressions need a symmetric division");
  const int s = division.row_blocks();
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < s; ++i)
    for (int j = i + 1; j < s; ++j)
      if (compression_edge(classify_zone(g, division.row_block(i), division.col_block(j)), kind)) edges.emplace_back(i, j);
  return {OrderedGraph::from_edges(s, edges), kind, division};
}

struct DegeneracyColoring {
  Coloring coloring;
  int degeneracy = 0;
  VertexList smallest_last_order;  // removal order; colouring runs in reverse
};

// Smallest-last ordering (ties to the smallest vertex id), then greedy in the
// reverse order: at most degeneracy + 1 colours.
inline DegeneracyColoring degeneracy_coloring(const OrderedGraph& g) {
  const int n = g.size();
  DegeneracyColoring out;
  std::vector<int> deg(static_cast<std::size_t>(n));
  std::vector<char> removed(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) deg[static_cast<std::size_t>(v)] = g.degree(v);
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    for (int v = 0; v < n; ++v)
      if (!removed[static_cast<std::size_t>(v)] && (pick < 0 || deg[static_cast<std::size_t>(v)] < deg[static_cast<std::size_t>(pick)]))
        pick = v;
    out.degeneracy = std::max(out.degeneracy, deg[static_cast<std::size_t>(pick)]);
    removed[static_cast<std::size_t>(pick)] = 1;
    out.smallest_last_order.push_back(pick);
    const auto& nb = g.neighbors(pick);
    for (auto u = nb.find_first(); u < nb.size(); u = nb.find_next(u + 1))
      if (!removed[u]) --deg[u];
  }
  out.coloring.color.assign(static_cast<std::size_t>(n), 0);
  for (auto it = out.smallest_last_order.rbegin(); it != out.smallest_last_order.rend(); ++it) {
    std::vector<char> used(static_cast<std::size_t>(n) + 2, 0);
    const auto& nb = g.neighbors(*it);
    for (auto u = nb.find_first(); u < nb.size(); u = nb.find_next(u + 1))
      used[static_cast<std::size_t>(out.coloring.color[u])] = 1;
    int col = 1;
    while (used[static_cast<std::size_t>(col)]) ++col;
    out.coloring.color[static_cast<std::size_t>(*it)] = col;
  }
  return out;
}

// Which case of the lifting argument located a corner (by c - r of the corner
// in the compressed matrix).
enum class LiftCase { AboveDiagonal, BelowDiagonal, NearAbove, NearBelow, OnDiagonal };

inline std::string to_string(LiftCase c) {
  switch (c) {
    case LiftCase::AboveDiagonal: return "1a";
    case LiftCase::BelowDiagonal: return "1b";
    case LiftCase::NearAbove: return "2a";
    case LiftCase::NearBelow: return "2b";
    case LiftCase::OnDiagonal: return "3";
  }
  return "?";
}

struct LiftedMinor {
  MinorWitness witness;             // over g
  std::vector<LiftCase> cases;      // parallel to witness.corners
};

// Lifts a d-almost mixed minor of the H (or V) compression of g along a
// symmetric division to a d-almost mixed minor of g's matrix that coarsens the
// division. Each zone [i, j] of the lift is D[r1..r2, c1..c2] for the blocks
// spanned by the compressed zone; a corner at (r, c) of the compressed matrix
// certifies that D[r..r+1, c..c+1] is mixed.
inline LiftedMinor lift_minor(const OrderedGraph& g, const Division& division, CompressionKind kind,
                              const MinorWitness& minor) {
  if (kind == CompressionKind::M) throw InputError("lift_minor applies to H or V compressions");
  if (minor.d < 2) throw InputError("lift_minor needs d >= 2");
  if (minor.kind != MinorKind::AlmostMixed) throw InputError("lift_minor expects an almost mixed minor");
  const auto compressed = compress(g, division, kind);
  std::string why;
  if (!verify_witness(compressed.graph, minor, &why)) throw InputError("input witness is invalid: " + why);

  const auto& e = minor.division;
  auto lift_cuts = [&](const std::vector<int>& cuts) {
    std::vector<int> out;
    for (auto c : cuts) out.push_back(division.row_cuts()[static_cast<std::size_t>(c)]);
    return out;
  };
  LiftedMinor out;
  out.witness.kind = MinorKind::AlmostMixed;
  out.witness.d = minor.d;
  out.witness.division = Division(lift_cuts(e.row_cuts()), lift_cuts(e.col_cuts()));

  auto zone = [&](int bi, int bj) { return classify_zone(g, division.row_block(bi), division.col_block(bj)); };
  for (const auto& k : minor.corners) {
    const int r = k.r, c = k.c;
    LiftCase which;
    // Diagonal zones of a graphic matrix are constant 0 or mixed; a mixed one
    // already holds the corner.
    std::vector<std::pair<int, int>> diagonal_first;
    if (c >= r + 2) {
      which = LiftCase::AboveDiagonal;
    } else if (c <= r - 2) {
      which = LiftCase::BelowDiagonal;
    } else if (c == r + 1) {
      which = LiftCase::NearAbove;
      diagonal_first = {{r + 1, c}};
    } else if (c == r - 1) {
      which = LiftCase::NearBelow;
      diagonal_first = {{r, c + 1}};
    } else {
      which = LiftCase::OnDiagonal;
      diagonal_first = {{r, c}, {r + 1, c + 1}};
    }
    std::optional<std::pair<int, int>> corner;
    for (auto [bi, bj] : diagonal_first) {
      if (zone(bi, bj) == ZoneClass::Mixed) {
        corner = find_corner(g, division.row_block(bi), division.col_block(bj));
        break;
      }
    }
    if (!corner) corner = find_corner(g, division.row_range(r, r + 1), division.col_range(c, c + 1));
    check_invariant(corner.has_value(), "lifted 2x2 block submatrix is not mixed");
    out.witness.corners.push_back({k.i, k.j, corner->first, corner->second});
    out.cases.push_back(which);
  }
  check_invariant(verify_witness(g, out.witness, &why), "lifted witness fails verification: " + why);
  return out;
}

// mu(omega, d) = 2 * C(omega + d - 2, d - 1) - 1.
inline std::int64_t mu(int omega, int d) {
  if (omega < 1 || d < 1) throw InputError("mu needs omega, d >= 1");
  // C(n, k) by the multiplicative formula; exact at every step.
  const std::int64_t n = omega + d - 2;
  const std::int64_t k = d - 1;
  __int128 binom = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    binom = binom * (n - k + i) / i;
    if (binom > std::numeric_limits<std::int64_t>::max() / 4) throw InputError("mu overflows 64 bits");
  }
  return static_cast<std::int64_t>(2 * binom - 1);
}

// The defining recurrence, evaluated independently of the closed form.
inline std::int64_t mu_recurrence(int omega, int d) {
  if (omega < 1 || d < 1) throw InputError("mu needs omega, d >= 1");
  std::vector<std::vector<std::int64_t>> t(static_cast<std::size_t>(omega) + 1,
                                           std::vector<std::int64_t>(static_cast<std::size_t>(d) + 1, 0));
  for (int w = 1; w <= omega; ++w)
    for (int e = 1; e <= d; ++e)
      t[static_cast<std::size_t>(w)][static_cast<std::size_t>(e)] =
          (w == 1 || e == 1) ? 1
                             : t[static_cast<std::size_t>(w) - 1][static_cast<std::size_t>(e)] +
                                   t[static_cast<std::size_t>(w)][static_cast<std::size_t>(e) - 1] + 1;
  return t[static_cast<std::size_t>(omega)][static_cast<std::size_t>(d)];
}

}  // namespace mixedfree
