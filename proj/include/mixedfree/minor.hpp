#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "caps.hpp"
#include "matrix.hpp"

namespace mixedfree {

enum class MinorKind { Mixed, AlmostMixed };

inline std::string to_string(MinorKind k) { return k == MinorKind::Mixed ? "mixed" : "almost_mixed"; }

// A corner certifying that zone (i, j) is mixed: the 2x2 contiguous submatrix
// with top-left entry (r, c). All indices 0-based.
struct ZoneCorner {
  int i = 0, j = 0, r = 0, c = 0;
  friend bool operator==(const ZoneCorner&, const ZoneCorner&) = default;
};

struct MinorWitness {
  MinorKind kind = MinorKind::AlmostMixed;
  int d = 0;
  Division division;
  std::vector<ZoneCorner> corners;  // one per required zone, row-major
};

inline bool zone_required(MinorKind kind, int i, int j) { return kind == MinorKind::Mixed || i != j; }

// Independent re-check: the division is a d x d division of g's matrix and
// every required zone carries a genuine corner inside it.
inline bool verify_witness(const OrderedGraph& g, const MinorWitness& w, std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (w.d < 1) return fail("d < 1");
  if (!w.division.valid_for(g.size())) return fail("division is not valid for the matrix");
  if (w.division.row_blocks() != w.d || w.division.col_blocks() != w.d) return fail("division is not a d-division");
  std::vector<char> seen(static_cast<std::size_t>(w.d * w.d), 0);
  for (const auto& k : w.corners) {
    if (k.i < 0 || k.j < 0 || k.i >= w.d || k.j >= w.d) return fail("corner zone index out of range");
    const auto rows = w.division.row_block(k.i);
    const auto cols = w.division.col_block(k.j);
    if (!rows.contains(k.r) || !rows.contains(k.r + 1) || !cols.contains(k.c) || !cols.contains(k.c + 1))
      return fail("corner not inside its zone");
    if (!is_corner(g, k.r, k.c)) return fail("recorded corner is not mixed");
    seen[static_cast<std::size_t>(k.i * w.d + k.j)] = 1;
  }
  for (int i = 0; i < w.d; ++i)
    for (int j = 0; j < w.d; ++j)
      if (zone_required(w.kind, i, j) && !seen[static_cast<std::size_t>(i * w.d + j)])
        return fail("required zone (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") has no corner");
  return true;
}

namespace detail {

// Exhaustive search over row cut vectors (lexicographic, outer) with a greedy
// column completion. Zone mixedness only grows with the zone, so for fixed
// rows the earliest feasible end of each column block is optimal, and the
// greedy completion is the lexicographically least one.
class MinorSearch {
 public:
  MinorSearch(const OrderedGraph& g, int d, MinorKind kind, std::vector<int> allowed)
      : g_(g), table_(g), d_(d), kind_(kind), n_(g.size()), allowed_(std::move(allowed)) {}

  std::optional<MinorWitness> run() {
    if (n_ == 0 || d_ < 1) return std::nullopt;
    if (static_cast<int>(allowed_.size()) < d_ - 1) return std::nullopt;
    row_cuts_ = {0};
    if (!rows_from(0, 0)) return std::nullopt;
    return witness_;
  }

 private:
  bool needs_mixed_row(int i) const {
    for (int j = 0; j < d_; ++j)
      if (zone_required(kind_, i, j)) return true;
    return false;
  }

  // Chooses the cut ending row block `block`, from allowed_[from..].
  bool rows_from(int block, std::size_t from) {
    const int start = row_cuts_.back();
    if (block == d_ - 1) {
      if (!row_block_viable(block, {start, n_})) return false;
      row_cuts_.push_back(n_);
      const bool ok = complete_columns();
      row_cuts_.pop_back();
      return ok;
    }
    const std::size_t remaining_needed = static_cast<std::size_t>(d_ - 1 - block - 1);
    for (std::size_t a = from; a + remaining_needed < allowed_.size(); ++a) {
      const int end = allowed_[a];
      if (end <= start) continue;
      if (!row_block_viable(block, {start, end})) continue;
      row_cuts_.push_back(end);
      if (rows_from(block + 1, a + 1)) return true;
      row_cuts_.pop_back();
    }
    return false;
  }

  // Necessary condition: a required zone in this row strip must be mixed, so
  // the whole strip must be.
  bool row_block_viable(int block, Interval rows) const {
    if (!needs_mixed_row(block)) return true;
    return table_.mixed(rows, {0, n_});
  }

  bool column_ok(int j, Interval cols) const {
    for (int i = 0; i < d_; ++i) {
      if (!zone_required(kind_, i, j)) continue;
      if (!table_.mixed({row_cuts_[static_cast<std::size_t>(i)], row_cuts_[static_cast<std::size_t>(i) + 1]}, cols))
        return false;
    }
    return true;
  }

  bool complete_columns() {
    std::vector<int> cols{0};
    std::size_t a = 0;
    for (int j = 0; j < d_; ++j) {
      const int start = cols.back();
      if (j == d_ - 1) {
        if (!column_ok(j, {start, n_})) return false;
        cols.push_back(n_);
        break;
      }
      const std::size_t remaining_needed = static_cast<std::size_t>(d_ - 1 - j - 1);
      bool found = false;
      for (; a + remaining_needed < allowed_.size(); ++a) {
        const int end = allowed_[a];
        if (end <= start) continue;
        if (column_ok(j, {start, end})) {
          cols.push_back(end);
          ++a;
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
    MinorWitness w;
    w.kind = kind_;
    w.d = d_;
    w.division = Division(row_cuts_, cols);
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < d_; ++j) {
        if (!zone_required(kind_, i, j)) continue;
        auto corner = find_corner(g_, w.division.row_block(i), w.division.col_block(j));
        check_invariant(corner.has_value(), "corner table disagrees with corner scan");
        w.corners.push_back({i, j, corner->first, corner->second});
      }
    witness_ = std::move(w);
    return true;
  }

  const OrderedGraph& g_;
  CornerTable table_;
  int d_;
  MinorKind kind_;
  int n_;
  std::vector<int> allowed_;
  std::vector<int> row_cuts_;
  std::optional<MinorWitness> witness_;
};

inline std::vector<int> interior_cuts(const Division& div) {
  return {div.row_cuts().begin() + 1, div.row_cuts().end() - 1};
}

}  // namespace detail

// Exhaustive d-(almost) mixed minor search. With `coarsening_of`, only
// divisions whose cuts are cuts of that symmetric division are considered.
// Returns the witness with lexicographically least (row cuts, column cuts).
inline std::optional<MinorWitness> find_minor(const OrderedGraph& g, int d, MinorKind kind,
                                              const std::optional<Division>& coarsening_of = std::nullopt,
                                              const Caps& caps = {}) {
  if (d < 1) throw InputError("minor order d must be >= 1");
  std::vector<int> allowed;
  if (coarsening_of) {
    if (!coarsening_of->valid_for(g.size()) || !coarsening_of->is_symmetric())
      throw InputError("coarsening_of must be a valid symmetric division");
    if (coarsening_of->row_blocks() > caps.minor_blocks)
      throw OracleCapError("constrained minor search over " + std::to_string(coarsening_of->row_blocks()) +
                           " blocks (cap " + std::to_string(caps.minor_blocks) + ")");
    allowed = detail::interior_cuts(*coarsening_of);
  } else {
    if (g.size() > caps.minor_n)
      throw OracleCapError("minor search on " + std::to_string(g.size()) + " rows (cap " + std::to_string(caps.minor_n) + ")");
    allowed.resize(static_cast<std::size_t>(std::max(0, g.size() - 1)));
    std::iota(allowed.begin(), allowed.end(), 1);
  }
  if (d > caps.minor_d && static_cast<int>(allowed.size()) >= d - 1)
    throw OracleCapError("minor order " + std::to_string(d) + " (cap " + std::to_string(caps.minor_d) + ")");
  return detail::MinorSearch(g, d, kind, std::move(allowed)).run();
}

inline std::optional<MinorWitness> find_almost_mixed_minor(const OrderedGraph& g, int d,
                                                           const std::optional<Division>& coarsening_of = std::nullopt,
                                                           const Caps& caps = {}) {
  return find_minor(g, d, MinorKind::AlmostMixed, coarsening_of, caps);
}

inline std::optional<MinorWitness> find_mixed_minor(const OrderedGraph& g, int d, const Caps& caps = {}) {
  return find_minor(g, d, MinorKind::Mixed, std::nullopt, caps);
}

class NonMonotoneError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Least d such that g's matrix has no d-almost mixed minor. Each d is searched
// independently; if some larger d (within the cap) admits a minor again, the
// observation is reported as NonMonotoneError rather than assumed away.
inline int min_almost_mixed_free(const OrderedGraph& g, const Caps& caps = {}) {
  if (g.size() > caps.minor_n)
    throw OracleCapError("min_almost_mixed_free on " + std::to_string(g.size()) + " rows (cap " + std::to_string(caps.minor_n) + ")");
  // No d-division exists once d exceeds n.
  const int top = std::min(caps.minor_d, g.size());
  int threshold = -1;
  for (int d = 1; d <= top; ++d) {
    const bool has = find_almost_mixed_minor(g, d, std::nullopt, caps).has_value();
    if (!has && threshold < 0) threshold = d;
    if (has && threshold > 0)
      throw NonMonotoneError("almost mixed minor at d=" + std::to_string(d) + " above free threshold " +
                             std::to_string(threshold));
  }
  if (threshold > 0) return threshold;
  if (top == g.size()) return g.size() + 1;
  throw OracleCapError("graph has a " + std::to_string(top) + "-almost mixed minor; threshold exceeds cap");
}

// Searches all vertex orderings (n <= 9) for one whose matrix has no d-minor of
// the given kind. Returns the permutation (new position -> old vertex).
inline std::optional<VertexList> find_ordering_without_minor(const OrderedGraph& g, int d, MinorKind kind) {
  if (g.size() > 9) throw OracleCapError("ordering search on " + std::to_string(g.size()) + " vertices (cap 9)");
  VertexList perm(static_cast<std::size_t>(g.size()));
  std::iota(perm.begin(), perm.end(), 0);
  Caps caps;
  caps.minor_d = std::max(caps.minor_d, d);
  do {
    if (!find_minor(reorder(g, perm), d, kind, std::nullopt, caps)) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

}  // namespace mixedfree
