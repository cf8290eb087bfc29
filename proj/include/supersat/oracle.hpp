#pragma once

// Exact F(n+n, m) for C4 at desk scale: depth-first enumeration of m-edge
// subgraphs of K_{n,n} (optionally supergraphs of a fixed graph) with
// incremental C4 counting and branch-and-bound pruning.
//
// The search tree is split into independent subtrees, one per position of the
// first chosen edge. Each subtree keeps its own incumbent and node budget, so
// the result, the witness and the node count are identical for any number of
// worker threads.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "supersat/bipartite_graph.hpp"
#include "supersat/bounds.hpp"
#include "supersat/difference_sets.hpp"
#include "supersat/parallel.hpp"

namespace supersat {

enum class OracleStatus { exact, inconclusive };

inline const char* to_string(OracleStatus s) { return s == OracleStatus::exact ? "exact" : "inconclusive"; }

struct OracleOptions {
  std::uint64_t cap = 200'000'000;  // node budget per subtree
  bool symmetry_reduction = true;   // row 0 edges form a column prefix; off with must_contain
  bool bound_cut = true;            // stop once the improved lower bound is met
  std::optional<std::uint64_t> initial_upper;  // only witnesses with C4 <= this are sought
  std::optional<std::vector<std::size_t>> position_order;  // permutation of the n² cells (x·n + y)
  unsigned threads = 1;
};

struct OracleResult {
  std::size_t n = 0, m = 0;
  OracleStatus status = OracleStatus::exact;
  std::optional<std::uint64_t> minimum;  // empty when inconclusive or nothing within initial_upper
  std::optional<BipartiteGraph> witness;
  std::uint64_t nodes = 0;
  double seconds = 0;
  Integer improved_bound;
};

namespace detail {

class C4Search {
 public:
  using Mask = std::uint64_t;

  C4Search(std::size_t n, std::vector<std::size_t> positions, const std::vector<Mask>& base_rows, std::size_t need,
           bool symmetry, std::uint64_t cap, std::uint64_t stop_at, std::uint64_t upper)
      : n_(n), positions_(std::move(positions)), rows_(base_rows), cols_(n, 0), need_(need), symmetry_(symmetry),
        cap_(cap), stop_at_(stop_at), best_(upper) {
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = 0; y < n_; ++y)
        if ((rows_[x] >> y) & 1U) cols_[y] |= Mask{1} << x;
    base_c4_ = 0;
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t x2 = x + 1; x2 < n_; ++x2) base_c4_ += choose(static_cast<std::uint64_t>(std::popcount(rows_[x] & rows_[x2])), 2);
  }

  /// Subtree whose first chosen position is positions[first].
  void run_subtree(std::size_t first) {
    if (need_ == 0) {
      if (first == 0) visit_leaf(base_c4_);
      return;
    }
    if (!allowed(positions_[first])) return;
    ++nodes_;
    const auto delta = place(positions_[first]);
    dfs(first + 1, 1, base_c4_ + delta);
    unplace(positions_[first]);
  }

  std::size_t subtree_count() const { return need_ == 0 ? 1 : positions_.size(); }
  bool found() const { return found_; }
  bool aborted() const { return aborted_; }
  std::uint64_t best() const { return best_; }
  std::uint64_t nodes() const { return nodes_; }
  const std::vector<Mask>& best_rows() const { return best_rows_; }

 private:
  bool allowed(std::size_t cell) const {
    if (!symmetry_) return true;
    const std::size_t x = cell / n_, y = cell % n_;
    return x != 0 || y == 0 || ((rows_[0] >> (y - 1)) & 1U);
  }

  std::uint64_t place(std::size_t cell) {
    const std::size_t x = cell / n_, y = cell % n_;
    std::uint64_t delta = 0;
    for (Mask others = cols_[y]; others; others &= others - 1) {
      const auto x2 = static_cast<std::size_t>(std::countr_zero(others));
      delta += static_cast<std::uint64_t>(std::popcount(rows_[x] & rows_[x2]));
    }
    rows_[x] |= Mask{1} << y;
    cols_[y] |= Mask{1} << x;
    return delta;
  }

  void unplace(std::size_t cell) {
    const std::size_t x = cell / n_, y = cell % n_;
    rows_[x] &= ~(Mask{1} << y);
    cols_[y] &= ~(Mask{1} << x);
  }

  void visit_leaf(std::uint64_t c4) {
    if (found_ ? c4 >= best_ : c4 > best_) return;
    found_ = true;
    best_ = c4;
    best_rows_ = rows_;
  }

  bool done() const { return aborted_ || (found_ && best_ <= stop_at_); }

  void dfs(std::size_t idx, std::size_t chosen, std::uint64_t c4) {
    if (done()) return;
    if (++nodes_ > cap_) {
      aborted_ = true;
      return;
    }
    if (found_ ? c4 >= best_ : c4 > best_) return;
    if (chosen == need_) {
      visit_leaf(c4);
      return;
    }
    if (positions_.size() - idx < need_ - chosen) return;
    const std::size_t cell = positions_[idx];
    if (allowed(cell)) {
      const auto delta = place(cell);
      dfs(idx + 1, chosen + 1, c4 + delta);
      unplace(cell);
    }
    dfs(idx + 1, chosen, c4);
  }

  std::size_t n_;
  std::vector<std::size_t> positions_;
  std::vector<Mask> rows_, cols_;
  std::size_t need_;
  bool symmetry_;
  std::uint64_t cap_, stop_at_;
  std::uint64_t best_;
  std::uint64_t base_c4_ = 0;
  std::uint64_t nodes_ = 0;
  bool found_ = false, aborted_ = false;
  std::vector<Mask> best_rows_;
};

}  // namespace detail

/// Minimum C4 count over m-edge subgraphs of K_{n,n}, or over m-edge
/// supergraphs of `must_contain` when given.
inline OracleResult min_c4_exhaustive(std::size_t n, std::size_t m, const BipartiteGraph* must_contain = nullptr,
                                      const OracleOptions& opt = {}) {
  const auto start = std::chrono::steady_clock::now();
  if (n == 0 || n > 64) throw std::invalid_argument("min_c4_exhaustive: need 1 <= n <= 64");
  if (m > n * n) throw std::invalid_argument("min_c4_exhaustive: m exceeds n^2");
  using Mask = detail::C4Search::Mask;
  std::vector<Mask> base(n, 0);
  std::size_t base_edges = 0;
  if (must_contain) {
    if (must_contain->n_x() != n || must_contain->n_y() != n)
      throw std::invalid_argument("min_c4_exhaustive: contained graph must be " + std::to_string(n) + "+" + std::to_string(n));
    for (const auto& e : must_contain->edges()) base[e.x] |= Mask{1} << e.y;
    base_edges = must_contain->edge_count();
    if (m < base_edges) throw std::invalid_argument("min_c4_exhaustive: m is below the contained graph's edge count");
  }

  std::vector<std::size_t> order;
  if (opt.position_order) {
    order = *opt.position_order;
    auto check = order;
    std::sort(check.begin(), check.end());
    for (std::size_t i = 0; i < check.size(); ++i)
      if (check.size() != n * n || check[i] != i) throw std::invalid_argument("position_order is not a permutation of the cells");
  } else {
    for (std::size_t c = 0; c < n * n; ++c) order.push_back(c);
  }
  std::vector<std::size_t> free;
  for (auto c : order)
    if (!((base[c / n] >> (c % n)) & 1U)) free.push_back(c);
  const bool symmetry = opt.symmetry_reduction && !must_contain && !opt.position_order;

  OracleResult r;
  r.n = n;
  r.m = m;
  r.improved_bound = n >= 2 ? improved_lower_bound(n, m, 2, 2) : Integer(0);
  const std::uint64_t stop_at = opt.bound_cut ? r.improved_bound.convert_to<std::uint64_t>() : 0;
  const std::uint64_t upper = opt.initial_upper.value_or(std::numeric_limits<std::uint64_t>::max());
  const std::size_t need = m - base_edges;

  struct Part {
    bool found = false, aborted = false;
    std::uint64_t best = 0, nodes = 0;
    std::vector<Mask> rows;
  };
  const std::size_t tasks = need == 0 ? 1 : free.size();
  auto parts = parallel_map(tasks, opt.threads, [&](std::size_t t) {
    detail::C4Search search(n, free, base, need, symmetry, opt.cap, opt.bound_cut ? stop_at : 0, upper);
    search.run_subtree(t);
    return Part{search.found(), search.aborted(), search.best(), search.nodes(), search.best_rows()};
  });

  bool any_aborted = false;
  const Part* best = nullptr;
  for (const auto& p : parts) {
    r.nodes += p.nodes;
    any_aborted |= p.aborted;
    if (p.found && (!best || p.best < best->best)) best = &p;
  }
  if (any_aborted) {
    r.status = OracleStatus::inconclusive;
  } else if (best) {
    r.minimum = best->best;
    std::vector<Edge> edges;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if ((best->rows[x] >> y) & 1U) edges.push_back({x, y});
    r.witness = BipartiteGraph(n, n, edges);
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

struct OracleTableRow {
  std::size_t m = 0;
  std::optional<std::uint64_t> oracle;
  Rational plain;
  Integer improved;
  OracleStatus status = OracleStatus::exact;

  std::optional<Integer> gap() const {
    if (!oracle) return std::nullopt;
    return Integer(*oracle) - improved;
  }
  /// oracle ≥ improved ≥ ⌈plain⌉
  bool consistent() const { return oracle && Integer(*oracle) >= improved && improved >= ceil_rational(plain); }
};

inline std::vector<OracleTableRow> bound_vs_oracle_table(std::size_t n, const OracleOptions& opt = {}) {
  if (n < 2) throw std::invalid_argument("bound_vs_oracle_table: need n >= 2");
  std::vector<OracleTableRow> rows;
  for (std::size_t m = 0; m <= n * n; ++m) {
    OracleTableRow row;
    row.m = m;
    row.plain = plain_lower_bound(n, m, 2, 2);
    row.improved = improved_lower_bound(n, m, 2, 2);
    const auto res = min_c4_exhaustive(n, m, nullptr, opt);
    row.status = res.status;
    row.oracle = res.minimum;
    rows.push_back(std::move(row));
  }
  return rows;
}

/// "m,oracle,plain,improved,gap,status"
inline std::string oracle_table_csv(const std::vector<OracleTableRow>& rows) {
  std::string out = "m,oracle,plain,improved,gap,status\n";
  for (const auto& r : rows) {
    const auto gap = r.gap();
    out += std::to_string(r.m) + "," + (r.oracle ? std::to_string(*r.oracle) : "") + "," + to_fraction_string(r.plain) +
           "," + r.improved.str() + "," + (gap ? gap->str() : "") + "," + to_string(r.status) + "\n";
  }
  return out;
}

/// Largest m whose oracle minimum is 0 (the Zarankiewicz number z(n,n,2,2)).
inline std::optional<std::size_t> zarankiewicz_from_table(const std::vector<OracleTableRow>& rows) {
  std::optional<std::size_t> z;
  for (const auto& r : rows)
    if (r.oracle && *r.oracle == 0) z = r.m;
  return z;
}

/// Adding e edges to the incidence graph of the order-2 plane (n = 7, 21 edges).
struct Prop34Report {
  std::size_t e = 0, m = 0;
  OracleResult oracle;
  Integer bound;
  bool in_strict_range = false;  // z + n < m ≤ √2·z
  bool equality_expected = false;  // m ≤ z + n

  bool pass() const {
    if (oracle.status != OracleStatus::exact || !oracle.minimum) return false;
    const Integer got(*oracle.minimum);
    if (equality_expected) return got == bound;
    if (in_strict_range) return got > bound;
    return got >= bound;
  }
};

inline Prop34Report check_prop34(std::size_t e, const OracleOptions& opt = {}) {
  const auto d = singer_difference_set(2);
  const auto plane = development(d);
  const std::size_t n = plane.n_x(), z = plane.edge_count();
  if (e > n * n - z) throw std::invalid_argument("check_prop34: at most " + std::to_string(n * n - z) + " extra edges");
  Prop34Report r;
  r.e = e;
  r.m = z + e;
  r.bound = improved_lower_bound(n, r.m, 2, 2);
  r.equality_expected = r.m <= z + n;
  r.in_strict_range = r.m > z + n && r.m * r.m <= 2 * z * z;
  r.oracle = min_c4_exhaustive(n, r.m, &plane, opt);
  return r;
}

}  // namespace supersat
