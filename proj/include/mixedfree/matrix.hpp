#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace mixedfree {

// Half-open index range [begin, end) of rows or columns.
struct Interval {
  int begin = 0;
  int end = 0;
  int size() const { return end - begin; }
  bool empty() const { return end <= begin; }
  bool contains(int i) const { return begin <= i && i < end; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Partition of rows and of columns into convex blocks, stored as cut vectors:
// block i spans [cuts[i], cuts[i+1]); cuts.front() == 0, cuts.back() == n.
class Division {
 public:
  Division() = default;
  Division(std::vector<int> row_cuts, std::vector<int> col_cuts)
      : row_cuts_(std::move(row_cuts)), col_cuts_(std::move(col_cuts)) {}

  static Division symmetric(std::vector<int> cuts) { return Division(cuts, cuts); }

  // Symmetric division from consecutive block sizes.
  static Division from_sizes(const std::vector<int>& sizes) {
    std::vector<int> cuts{0};
    for (auto s : sizes) cuts.push_back(cuts.back() + s);
    return symmetric(cuts);
  }

  // Symmetric division whose blocks are the given consecutive vertex groups.
  static Division from_block_ends(int n, const std::vector<int>& interior) {
    std::vector<int> cuts{0};
    cuts.insert(cuts.end(), interior.begin(), interior.end());
    cuts.push_back(n);
    return symmetric(cuts);
  }

  int row_blocks() const { return static_cast<int>(row_cuts_.size()) - 1; }
  int col_blocks() const { return static_cast<int>(col_cuts_.size()) - 1; }
  Interval row_block(int i) const { return {row_cuts_[static_cast<std::size_t>(i)], row_cuts_[static_cast<std::size_t>(i) + 1]}; }
  Interval col_block(int j) const { return {col_cuts_[static_cast<std::size_t>(j)], col_cuts_[static_cast<std::size_t>(j) + 1]}; }
  // Rows of blocks i1..i2 (inclusive).
  Interval row_range(int i1, int i2) const { return {row_cuts_[static_cast<std::size_t>(i1)], row_cuts_[static_cast<std::size_t>(i2) + 1]}; }
  Interval col_range(int j1, int j2) const { return {col_cuts_[static_cast<std::size_t>(j1)], col_cuts_[static_cast<std::size_t>(j2) + 1]}; }
  const std::vector<int>& row_cuts() const { return row_cuts_; }
  const std::vector<int>& col_cuts() const { return col_cuts_; }
  bool is_symmetric() const { return row_cuts_ == col_cuts_; }

  int row_block_of(int r) const { return block_of(row_cuts_, r); }
  int col_block_of(int c) const { return block_of(col_cuts_, c); }

  // Convex, nonempty, ordered blocks covering [0, n) on both sides.
  bool valid_for(int n) const { return valid_cuts(row_cuts_, n) && valid_cuts(col_cuts_, n); }

  // Every cut of *this is also a cut of `finer`.
  bool is_coarsening_of(const Division& finer) const {
    return cuts_subset(row_cuts_, finer.row_cuts_) && cuts_subset(col_cuts_, finer.col_cuts_);
  }

  friend bool operator==(const Division&, const Division&) = default;

 private:
  static int block_of(const std::vector<int>& cuts, int x) {
    auto it = std::upper_bound(cuts.begin(), cuts.end(), x);
    return static_cast<int>(it - cuts.begin()) - 1;
  }
  static bool valid_cuts(const std::vector<int>& cuts, int n) {
    if (cuts.size() < 2 || cuts.front() != 0 || cuts.back() != n) return false;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      if (cuts[i] >= cuts[i + 1]) return false;
    return true;
  }
  static bool cuts_subset(const std::vector<int>& coarse, const std::vector<int>& fine) {
    return std::includes(fine.begin(), fine.end(), coarse.begin(), coarse.end());
  }

  std::vector<int> row_cuts_;
  std::vector<int> col_cuts_;
};

enum class ZoneClass { Constant0, Constant1, HorizontalNonconstant, VerticalNonconstant, Mixed };

inline std::string to_string(ZoneClass z) {
  switch (z) {
    case ZoneClass::Constant0: return "constant0";
    case ZoneClass::Constant1: return "constant1";
    case ZoneClass::HorizontalNonconstant: return "horizontal";
    case ZoneClass::VerticalNonconstant: return "vertical";
    case ZoneClass::Mixed: return "mixed";
  }
  return "?";
}

inline bool is_horizontal(ZoneClass z) {
  return z == ZoneClass::Constant0 || z == ZoneClass::Constant1 || z == ZoneClass::HorizontalNonconstant;
}
inline bool is_vertical(ZoneClass z) {
  return z == ZoneClass::Constant0 || z == ZoneClass::Constant1 || z == ZoneClass::VerticalNonconstant;
}

namespace detail {
inline void check_zone(const OrderedGraph& g, Interval rows, Interval cols) {
  if (rows.empty() || cols.empty()) throw InputError("zone interval is empty");
  if (rows.begin < 0 || cols.begin < 0 || rows.end > g.size() || cols.end > g.size())
    throw InputError("zone interval out of range");
}
}  // namespace detail

// Exact classification of the submatrix M[rows, cols].
inline ZoneClass classify_zone(const OrderedGraph& g, Interval rows, Interval cols) {
  detail::check_zone(g, rows, cols);
  bool horizontal = true;
  for (int r = rows.begin; r < rows.end && horizontal; ++r)
    for (int c = cols.begin + 1; c < cols.end; ++c)
      if (g.entry(r, c) != g.entry(r, cols.begin)) {
        horizontal = false;
        break;
      }
  bool vertical = true;
  for (int c = cols.begin; c < cols.end && vertical; ++c)
    for (int r = rows.begin + 1; r < rows.end; ++r)
      if (g.entry(r, c) != g.entry(rows.begin, c)) {
        vertical = false;
        break;
      }
  if (horizontal && vertical) return g.entry(rows.begin, cols.begin) ? ZoneClass::Constant1 : ZoneClass::Constant0;
  if (horizontal) return ZoneClass::HorizontalNonconstant;
  if (vertical) return ZoneClass::VerticalNonconstant;
  return ZoneClass::Mixed;
}

// The 2x2 contiguous submatrix with top-left (r, c) is mixed.
inline bool is_corner(const OrderedGraph& g, int r, int c) {
  const int a = g.entry(r, c), b = g.entry(r, c + 1), x = g.entry(r + 1, c), y = g.entry(r + 1, c + 1);
  const bool horizontal = a == b && x == y;
  const bool vertical = a == x && b == y;
  return !horizontal && !vertical;
}

// Lexicographically smallest corner (r, c) inside the zone, scanning adjacent
// row/column pairs only. Exists iff the zone is mixed.
inline std::optional<std::pair<int, int>> find_corner(const OrderedGraph& g, Interval rows, Interval cols) {
  detail::check_zone(g, rows, cols);
  for (int r = rows.begin; r + 1 < rows.end; ++r)
    for (int c = cols.begin; c + 1 < cols.end; ++c)
      if (is_corner(g, r, c)) return std::pair{r, c};
  return std::nullopt;
}

// 2D prefix sums over the corner indicator; answers "is this zone mixed" in O(1).
class CornerTable {
 public:
  explicit CornerTable(const OrderedGraph& g) : n_(g.size()) {
    const int m = std::max(0, n_ - 1);
    sums_.assign(static_cast<std::size_t>(m + 1) * static_cast<std::size_t>(m + 1), 0);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c)
        at(r + 1, c + 1) = at(r, c + 1) + at(r + 1, c) - at(r, c) + (is_corner(g, r, c) ? 1 : 0);
  }

  // Zone [rows) x [cols) contains a corner.
  bool mixed(Interval rows, Interval cols) const {
    if (rows.size() < 2 || cols.size() < 2) return false;
    const int r1 = rows.begin, r2 = rows.end - 1, c1 = cols.begin, c2 = cols.end - 1;
    return at(r2, c2) - at(r1, c2) - at(r2, c1) + at(r1, c1) > 0;
  }

  int size() const { return n_; }

 private:
  int& at(int r, int c) { return sums_[static_cast<std::size_t>(r) * stride() + static_cast<std::size_t>(c)]; }
  int at(int r, int c) const { return sums_[static_cast<std::size_t>(r) * stride() + static_cast<std::size_t>(c)]; }
  std::size_t stride() const { return static_cast<std::size_t>(std::max(0, n_ - 1) + 1); }

  int n_;
  std::vector<int> sums_;
};

inline int count_mixed_zones(const OrderedGraph& g, const Division& division) {
  if (!division.valid_for(g.size())) throw InputError("invalid division");
  int count = 0;
  for (int i = 0; i < division.row_blocks(); ++i)
    for (int j = 0; j < division.col_blocks(); ++j)
      if (classify_zone(g, division.row_block(i), division.col_block(j)) == ZoneClass::Mixed) ++count;
  return count;
}

}  // namespace mixedfree
