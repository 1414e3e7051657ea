#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace mixedfree {

using u128 = unsigned __int128;

inline std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}

namespace detail {
inline long double up(long double x) { return std::nextafter(x, std::numeric_limits<long double>::infinity()); }
}  // namespace detail

// A positive quantity: exact while it fits 128 bits, otherwise only an upper
// bound on its base-2 logarithm. log2 is always populated and never below the
// true value.
struct Magnitude {
  std::optional<u128> exact;
  long double log2 = 0;

  static Magnitude of(u128 v) {
    if (v == 0) throw InputError("Magnitude must be positive");
    Magnitude m;
    m.exact = v;
    m.log2 = detail::up(std::log2(static_cast<long double>(v)));
    return m;
  }
  static Magnitude from_log2(long double l) {
    Magnitude m;
    m.log2 = l;
    return m;
  }

  friend Magnitude operator+(const Magnitude& a, const Magnitude& b) {
    u128 s = 0;
    if (a.exact && b.exact && !__builtin_add_overflow(*a.exact, *b.exact, &s)) return of(s);
    const long double hi = std::max(a.log2, b.log2), lo = std::min(a.log2, b.log2);
    // log2(1 + 2^{lo-hi}) in double; the slack covers its rounding error.
    const double corr = std::log1p(std::exp2(static_cast<double>(lo - hi))) / std::log(2.0);
    return from_log2(detail::up(hi + static_cast<long double>(corr) + 1e-15L));
  }
  friend Magnitude operator*(const Magnitude& a, const Magnitude& b) {
    u128 p = 0;
    if (a.exact && b.exact && !__builtin_mul_overflow(*a.exact, *b.exact, &p)) return of(p);
    return from_log2(detail::up(a.log2 + b.log2));
  }

  std::string str() const { return exact ? to_string(*exact) : "2^" + std::to_string(static_cast<double>(log2)); }
};

// Lookup of f_d at a real argument x >= 1 given by an integer (when small)
// or by log2(x).
struct RecArg {
  std::optional<std::int64_t> n;
  long double log2 = 0;

  static RecArg integer(std::int64_t v) { return {v, std::log2(static_cast<long double>(v))}; }
  static RecArg log(long double l) { return {std::nullopt, l}; }
};

using FLookup = std::function<Magnitude(int d, const RecArg&)>;

// Right-hand side of the main lemma's recurrence with the two uses of the
// existential constant kept apart: c_classes multiplies the palettes of the
// mixed classes, c_mixed the colours of phi^M. The lemma has both equal to C_d.
inline Magnitude eval_main_rhs(const FLookup& f, int d, std::int64_t omega, std::int64_t k, u128 c_classes, u128 c_mixed) {
  if (d < 3 || omega < 5 || k < 1 || 4 * k >= omega) throw InputError("eval_main_rhs needs d >= 3, omega >= 5, 1 <= k < omega/4");
  const auto rest = f(d, RecArg::integer(omega - k));
  // f_{d-1}(2 omega^{d-1}), argument possibly beyond 64 bits.
  RecArg big = RecArg::log(detail::up(1 + (d - 1) * std::log2(static_cast<long double>(omega))));
  if (big.log2 < 62) {
    std::int64_t v = 2;
    for (int i = 0; i < d - 1; ++i) v *= omega;
    big = RecArg::integer(v);
  }
  const auto fc = f(d - 1, big);
  Magnitude sum;
  bool any = false;
  for (int u = 0; (std::int64_t{2} << u) <= 2 * k; ++u) {
    // f_d(2k / 2^u + 1) at a real argument means f_d at its ceiling.
    const std::int64_t arg = (2 * k + (std::int64_t{1} << u) - 1) / (std::int64_t{1} << u) + 1;
    const auto term = f(d, RecArg::integer(std::int64_t{2} << u)) * f(d, RecArg::integer(arg));
    sum = any ? sum + term : term;
    any = true;
  }
  const auto inner = rest + Magnitude::of(8) * Magnitude::of(c_mixed) * fc * fc * sum;
  return rest + Magnitude::of(c_classes) * inner;
}

// Tabulated f_2..f_{d_max} satisfying the alpha-form recurrence with equality
// for 8 <= n <= n_max, f_2(n) = n, f_d(1) = 1 and seeds f_d(n) for n <= 7.
// f_{d-1} is needed at 2 n^{d-1}, far past n_max; there it is tabulated on a
// geometric grid (grid_per_octave points per doubling) whose values bound f
// at every integer up to the grid point, which is sound since f is
// nondecreasing.
struct RecurrenceOptions {
  int grid_per_octave = 256;
  std::vector<std::int64_t> seeds;  // f_d(1..7); empty: f_d(n) = n
  std::int64_t exact_n_limit = 1 << 16;
  long double max_grid_points = 4e6L;
};

class RecurrenceTable {
 public:
  using Options = RecurrenceOptions;

  RecurrenceTable(int d_max, std::int64_t n_max, std::map<int, std::int64_t> alpha, Options opts = {})
      : d_max_(d_max), n_max_(n_max), alpha_(std::move(alpha)), opts_(std::move(opts)) {
    if (d_max < 2) throw InputError("d_max must be >= 2");
    if (n_max < 8) throw InputError("n_max must be >= 8");
    if (opts_.grid_per_octave < 16) throw InputError("grid_per_octave must be >= 16");
    for (int d = 3; d <= d_max; ++d) {
      auto it = alpha_.find(d);
      if (it == alpha_.end() || it->second < 1) throw InputError("alpha_" + std::to_string(d) + " must be given and >= 1");
    }
    if (opts_.seeds.empty())
      for (int n = 1; n <= 7; ++n) opts_.seeds.push_back(n);
    if (opts_.seeds.size() != 7 || opts_.seeds[0] != 1) throw InputError("seeds must list f(1..7) with f(1) = 1");
    for (std::size_t i = 1; i < 7; ++i)
      if (opts_.seeds[i] < opts_.seeds[i - 1]) throw InputError("seeds must be nondecreasing");
    lg_nmax_ = std::log2(static_cast<long double>(n_max_));
    layout();
  }

  // Fills every entry in increasing (d, n, grid index) order.
  void build_bottom_up() {
    lazy_ = false;
    for (int d = 3; d <= d_max_; ++d) {
      auto& lv = levels_[static_cast<std::size_t>(d)];
      for (std::int64_t n = 1; n <= n_max_; ++n) store_dense(d, n, dense_entry(d, n));
      for (std::size_t j = 0; j < lv.grid_lg.size(); ++j) store_grid(d, j, grid_entry(d, j));
    }
    built_ = true;
  }

  // Same values, demand-driven with memoisation, visiting n in decreasing
  // order so that the recursion itself discovers the dependencies.
  void build_top_down() {
    lazy_ = true;
    for (int d = d_max_; d >= 3; --d)
      for (std::int64_t n = n_max_; n >= 1; --n) get_dense(d, n);
    for (int d = 3; d <= d_max_; ++d) {
      auto& lv = levels_[static_cast<std::size_t>(d)];
      for (std::size_t j = lv.grid_lg.size(); j-- > 0;) get_grid(d, j);
    }
    built_ = true;
  }

  int d_max() const { return d_max_; }
  std::int64_t n_max() const { return n_max_; }
  std::int64_t alpha(int d) const { return alpha_.at(d); }

  Magnitude at(int d, std::int64_t n) const {
    if (d < 2 || d > d_max_ || n < 1 || n > n_max_) throw InputError("table index out of range");
    if (d == 2) return Magnitude::of(static_cast<u128>(n));
    check_built();
    return dense_value(d, n);
  }

  long double log2_f(int d, std::int64_t n) const { return at(d, n).log2; }

  // Upper bound on f_d at a real argument (integer or log2 form).
  Magnitude upper(int d, const RecArg& x) const {
    check_built();
    return const_cast<RecurrenceTable*>(this)->lookup(d, x);
  }

  // Right-hand side of the alpha-form recurrence at integer n >= 8, using the
  // table's own entries for every term.
  Magnitude eq2_rhs(int d, std::int64_t n, std::int64_t alpha) const {
    check_built();
    if (d < 3 || n < 8) throw InputError("eq2_rhs needs d >= 3 and n >= 8");
    return const_cast<RecurrenceTable*>(this)->rhs_integer(d, n, alpha);
  }

  FLookup lookup_fn() const {
    return [this](int d, const RecArg& x) { return upper(d, x); };
  }

  std::size_t grid_points(int d) const { return levels_.at(static_cast<std::size_t>(d)).grid_lg.size(); }

 private:
  struct Level {
    std::vector<long double> lg;     // dense, index n
    std::vector<u128> exact;         // dense, index n <= exact_n_limit; 0 = not exact
    std::vector<char> have;
    std::int64_t grid_j0 = 0;        // grid point j sits at x = 2^{(grid_j0 + j) / P}
    std::vector<long double> grid_lg;
    std::vector<char> grid_have;
  };

  void check_built() const {
    if (!built_) throw InputError("recurrence table not built");
  }

  void layout() {
    // log2 of the largest argument each level is queried at.
    std::vector<long double> reach(static_cast<std::size_t>(d_max_) + 1, 0);
    reach[static_cast<std::size_t>(d_max_)] = lg_nmax_;
    for (int d = d_max_; d >= 4; --d)
      reach[static_cast<std::size_t>(d - 1)] = std::max(reach[static_cast<std::size_t>(d - 1)], 1 + (d - 1) * reach[static_cast<std::size_t>(d)] + 1);
    levels_.resize(static_cast<std::size_t>(d_max_) + 1);
    const long double p = opts_.grid_per_octave;
    long double total = 0;
    for (int d = 3; d <= d_max_; ++d) {
      auto& lv = levels_[static_cast<std::size_t>(d)];
      const auto n = static_cast<std::size_t>(n_max_) + 1;
      lv.lg.assign(n, 0);
      lv.have.assign(n, 0);
      lv.exact.assign(static_cast<std::size_t>(std::min(n_max_, opts_.exact_n_limit)) + 1, 0);
      lv.grid_j0 = static_cast<std::int64_t>(std::floor(p * lg_nmax_)) + 1;
      if (d < d_max_) {
        const auto j1 = static_cast<std::int64_t>(std::ceil(p * reach[static_cast<std::size_t>(d)])) + 1;
        const auto count = std::max<std::int64_t>(0, j1 - lv.grid_j0 + 1);
        total += static_cast<long double>(count);
        if (total > opts_.max_grid_points)
          throw InputError("recurrence grid too large for d_max=" + std::to_string(d_max_) + ", n_max=" + std::to_string(n_max_));
        lv.grid_lg.assign(static_cast<std::size_t>(count), 0);
        lv.grid_have.assign(static_cast<std::size_t>(count), 0);
      }
    }
  }

  Magnitude dense_value(int d, std::int64_t n) const {
    const auto& lv = levels_[static_cast<std::size_t>(d)];
    const auto i = static_cast<std::size_t>(n);
    if (i < lv.exact.size() && lv.exact[i] != 0) return Magnitude::of(lv.exact[i]);
    return Magnitude::from_log2(lv.lg[i]);
  }

  void store_dense(int d, std::int64_t n, const Magnitude& m) {
    auto& lv = levels_[static_cast<std::size_t>(d)];
    const auto i = static_cast<std::size_t>(n);
    if (m.exact && i < lv.exact.size()) lv.exact[i] = *m.exact;
    lv.lg[i] = m.log2;
    lv.have[i] = 1;
  }

  void store_grid(int d, std::size_t j, const Magnitude& m) {
    auto& lv = levels_[static_cast<std::size_t>(d)];
    lv.grid_lg[j] = m.log2;
    lv.grid_have[j] = 1;
  }

  Magnitude get_dense(int d, std::int64_t n) {
    auto& lv = levels_[static_cast<std::size_t>(d)];
    if (!lv.have[static_cast<std::size_t>(n)]) {
      if (!lazy_) throw EngineBug("recurrence entry f_" + std::to_string(d) + "(" + std::to_string(n) + ") read before it was computed");
      store_dense(d, n, dense_entry(d, n));
    }
    return dense_value(d, n);
  }

  Magnitude get_grid(int d, std::size_t j) {
    auto& lv = levels_[static_cast<std::size_t>(d)];
    if (j >= lv.grid_lg.size()) throw InputError("argument beyond the tabulated range of f_" + std::to_string(d));
    if (!lv.grid_have[j]) {
      if (!lazy_) throw EngineBug("recurrence grid entry read before it was computed");
      store_grid(d, j, grid_entry(d, j));
    }
    return Magnitude::from_log2(lv.grid_lg[j]);
  }

  Magnitude lookup(int d, const RecArg& x) {
    if (d == 2) return x.n ? Magnitude::of(static_cast<u128>(*x.n)) : Magnitude::from_log2(x.log2);
    if (d < 2 || d > d_max_) throw InputError("no f_" + std::to_string(d) + " in this table");
    if (x.n) {
      if (*x.n < 1) throw InputError("f is defined for arguments >= 1");
      if (*x.n <= n_max_) return get_dense(d, *x.n);
    } else if (x.log2 <= lg_nmax_) {
      // Smallest integer not below x, nudged upward against rounding.
      const auto n = static_cast<std::int64_t>(std::ceil(std::exp2(x.log2) * (1 + 1e-15L)));
      if (n <= n_max_) return get_dense(d, std::max<std::int64_t>(1, n));
    }
    const auto& lv = levels_[static_cast<std::size_t>(d)];
    const long double p = opts_.grid_per_octave;
    auto j = static_cast<std::int64_t>(std::ceil(detail::up(p * x.log2) + 1e-9L));
    j = std::max(j, lv.grid_j0);
    return get_grid(d, static_cast<std::size_t>(j - lv.grid_j0));
  }

  Magnitude dense_entry(int d, std::int64_t n) {
    if (n <= 7) return Magnitude::of(static_cast<u128>(opts_.seeds[static_cast<std::size_t>(n - 1)]));
    auto m = rhs_integer(d, n, alpha_.at(d));
    if (n > opts_.exact_n_limit) m.exact.reset();
    return m;
  }

  // alpha [ f(ceil(7n/8)) + f_{d-1}(2 n^{d-1})^2 sum_{u=0}^{floor(log n)-3} f(2^{u+1}) f(ceil(n/2^{u+1}) + 1) ]
  Magnitude rhs_integer(int d, std::int64_t n, std::int64_t alpha) {
    const auto a = lookup(d, RecArg::integer((7 * n + 7) / 8));
    RecArg big = RecArg::log(detail::up(1 + (d - 1) * std::log2(static_cast<long double>(n))));
    if (big.log2 < 62) {
      std::int64_t v = 2;
      for (int i = 0; i < d - 1; ++i) v *= n;
      big = RecArg::integer(v);
    }
    const auto fc = lookup(d - 1, big);
    int top = 0;
    while ((std::int64_t{2} << top) <= n) ++top;  // floor(log2 n)
    Magnitude sum;
    for (int u = 0; u <= top - 3; ++u) {
      const std::int64_t pw = std::int64_t{1} << (u + 1);
      const auto term = lookup(d, RecArg::integer(pw)) * lookup(d, RecArg::integer((n + pw - 1) / pw + 1));
      sum = u == 0 ? term : sum + term;
    }
    return Magnitude::of(static_cast<u128>(alpha)) * (a + fc * fc * sum);
  }

  // Grid point x = 2^{t}: every term is taken at an argument no smaller than
  // the one any integer m <= x would use.
  Magnitude grid_entry(int d, std::size_t j) {
    const auto& lv = levels_[static_cast<std::size_t>(d)];
    const long double t = static_cast<long double>(lv.grid_j0 + static_cast<std::int64_t>(j)) / opts_.grid_per_octave;
    auto log_plus = [](long double lg, long double c) {  // log2(2^lg + c)
      return detail::up(lg + std::log1p(c * std::exp2(-lg)) / std::log(2.0L));
    };
    // ceil(7m/8) <= 7(x + 1)/8, below x once x > 7, so the grid never reads itself.
    const auto a = lookup(d, RecArg::log(detail::up(log_plus(t, 1) + std::log2(7.0L / 8.0L))));
    const auto fc = lookup(d - 1, RecArg::log(detail::up(1 + (d - 1) * t)));
    const auto top = static_cast<int>(std::floor(t));
    Magnitude sum;
    for (int u = 0; u <= top - 3; ++u) {
      const auto pw = u + 1 <= 62 ? RecArg::integer(std::int64_t{1} << (u + 1)) : RecArg::log(u + 1);
      const auto term = lookup(d, pw) * lookup(d, RecArg::log(log_plus(t - (u + 1), 2)));
      sum = u == 0 ? term : sum + term;
    }
    return Magnitude::of(static_cast<u128>(alpha_.at(d))) * (a + fc * fc * sum);
  }

  int d_max_;
  std::int64_t n_max_;
  std::map<int, std::int64_t> alpha_;
  Options opts_;
  long double lg_nmax_ = 0;
  std::vector<Level> levels_;
  bool lazy_ = false;
  bool built_ = false;
};

inline RecurrenceTable build_table(int d_max, std::int64_t n_max, const std::map<int, std::int64_t>& alpha,
                                   RecurrenceTable::Options opts = {}) {
  RecurrenceTable t(d_max, n_max, alpha, std::move(opts));
  t.build_bottom_up();
  return t;
}

// Least integer beta with log2 f_d(n) <= beta log2(n)^{d-1} for 2 <= n <= n_max.
// The log values are upper bounds carrying a few ulps of upward rounding, which
// the relative tolerance absorbs.
inline std::int64_t fit_beta(const RecurrenceTable& t, int d) {
  long double worst = 0;
  for (std::int64_t n = 2; n <= t.n_max(); ++n) {
    const long double scale = std::pow(std::log2(static_cast<long double>(n)), static_cast<long double>(d - 1));
    worst = std::max(worst, t.log2_f(d, n) / scale);
  }
  if (!std::isfinite(worst)) throw EngineBug("non-finite beta ratio");
  return static_cast<std::int64_t>(std::ceil(worst - 1e-12L));
}

// (1 - e)^{d-1} <= 1 - (d-1) e / 2^{d-2} at every e = i / 2^s in [0, 1/2],
// compared exactly over the integers.
inline bool rev_bernoulli_check(int d, int s = 12) {
  using boost::multiprecision::cpp_int;
  if (d < 2) throw InputError("rev_bernoulli_check needs d >= 2");
  if (s < 1 || s > 24) throw InputError("grid exponent out of range");
  const cpp_int q = cpp_int(1) << s;
  const cpp_int two_d2 = cpp_int(1) << (d - 2);
  for (cpp_int i = 0; i <= q / 2; ++i) {
    // lhs = (q - i)^{d-1} / q^{d-1};  rhs = (2^{d-2} q - (d-1) i) / (2^{d-2} q)
    cpp_int lhs = boost::multiprecision::pow(q - i, d - 1) * two_d2;
    cpp_int rhs = (two_d2 * q - (d - 1) * i) * boost::multiprecision::pow(q, d - 2);
    if (lhs > rhs) return false;
  }
  return true;
}

// log2 of 2^{gamma log2(omega)^{4t+3}}.
inline long double theorem_bound_log2(int t, std::int64_t omega, long double gamma) {
  if (t < 0 || omega < 2 || !(gamma > 0)) throw InputError("theorem_bound needs t >= 0, omega >= 2, gamma > 0");
  return gamma * std::pow(std::log2(static_cast<long double>(omega)), static_cast<long double>(4 * t + 3));
}

inline int theorem_exponent(int t) { return 4 * t + 3; }

}  // namespace mixedfree
