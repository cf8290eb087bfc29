#pragma once

// Bipartite graphs G(𝒢, A) over finite abelian groups 𝒢 = Z_{n1} × ... × Z_{nr}
// (blocks A + g versus elements g, joined by inclusion), the moments h_t of
// A's difference multiset, the variance functional Ψ₂, and a minimiser for
// Ψ₂ over k-subsets.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "supersat/bipartite_graph.hpp"
#include "supersat/bounds.hpp"
#include "supersat/parallel.hpp"

namespace supersat {

/// Elements are indexed in mixed radix with the first factor most
/// significant; for a single factor the index is the residue itself.
class AbelianGroup {
 public:
  explicit AbelianGroup(std::vector<std::size_t> orders) : orders_(std::move(orders)) {
    if (orders_.empty()) throw std::invalid_argument("AbelianGroup: need at least one cyclic factor");
    order_ = 1;
    for (auto o : orders_) {
      if (o == 0) throw std::invalid_argument("AbelianGroup: factor orders must be positive");
      order_ *= o;
    }
  }

  std::size_t order() const { return order_; }
  const std::vector<std::size_t>& factors() const { return orders_; }

  std::vector<std::size_t> components(std::size_t x) const {
    std::vector<std::size_t> c(orders_.size());
    for (std::size_t i = orders_.size(); i-- > 0;) {
      c[i] = x % orders_[i];
      x /= orders_[i];
    }
    return c;
  }

  std::size_t index(const std::vector<std::size_t>& c) const {
    std::size_t x = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) x = x * orders_[i] + c[i] % orders_[i];
    return x;
  }

  std::size_t add(std::size_t a, std::size_t b) const {
    if (orders_.size() == 1) return (a + b) % order_;
    auto ca = components(a), cb = components(b);
    for (std::size_t i = 0; i < ca.size(); ++i) ca[i] = (ca[i] + cb[i]) % orders_[i];
    return index(ca);
  }

  std::size_t neg(std::size_t a) const {
    if (orders_.size() == 1) return (order_ - a) % order_;
    auto ca = components(a);
    for (std::size_t i = 0; i < ca.size(); ++i) ca[i] = (orders_[i] - ca[i]) % orders_[i];
    return index(ca);
  }

  std::size_t sub(std::size_t a, std::size_t b) const { return add(a, neg(b)); }

  /// Full subtraction table, diff[a * n + b] = a − b.
  std::vector<std::size_t> difference_table() const {
    std::vector<std::size_t> t(order_ * order_);
    for (std::size_t a = 0; a < order_; ++a)
      for (std::size_t b = 0; b < order_; ++b) t[a * order_ + b] = sub(a, b);
    return t;
  }

 private:
  std::vector<std::size_t> orders_;
  std::size_t order_ = 1;
};

namespace detail {

inline void validate_subset(const AbelianGroup& g, const std::vector<std::size_t>& a) {
  auto s = a;
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw std::invalid_argument("subset has duplicate elements");
  for (auto x : s)
    if (x >= g.order()) throw std::invalid_argument("subset element " + std::to_string(x) + " outside the group");
}

}  // namespace detail

/// X = blocks A + g (indexed by g), Y = group elements; x ~ block g iff x − g ∈ A.
inline BipartiteGraph build_cayley_bipartite(const AbelianGroup& g, const std::vector<std::size_t>& a) {
  detail::validate_subset(g, a);
  if (a.empty()) throw std::invalid_argument("build_cayley_bipartite: subset must be nonempty");
  std::vector<Edge> edges;
  for (std::size_t shift = 0; shift < g.order(); ++shift)
    for (auto x : a) edges.push_back({shift, g.add(x, shift)});
  return BipartiteGraph(g.order(), g.order(), edges);
}

/// c[g] = #{(a, a') ∈ A×A : a − a' = g} for g ≠ 0 (c[0] = 0).
inline std::vector<std::uint64_t> group_difference_counts(const AbelianGroup& g, const std::vector<std::size_t>& a) {
  detail::validate_subset(g, a);
  std::vector<std::uint64_t> c(g.order(), 0);
  for (auto x : a)
    for (auto y : a)
      if (x != y) ++c[g.sub(x, y)];
  return c;
}

/// Σ_{g≠0} c(g)^t.
inline std::uint64_t h_t(const AbelianGroup& g, const std::vector<std::size_t>& a, unsigned t) {
  if (t < 1) throw std::invalid_argument("h_t: t must be >= 1");
  std::uint64_t total = 0;
  for (auto c : group_difference_counts(g, a)) {
    std::uint64_t p = 1;
    for (unsigned i = 0; i < t; ++i)
      if (__builtin_mul_overflow(p, c, &p)) throw std::overflow_error("h_t: overflow");
    if (c) total = checked_add(total, p);
  }
  return total;
}

class FormulaUnavailable : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// (n/4)(h₂ − h₁) for odd |𝒢|.
inline std::uint64_t c4_formula_odd(const AbelianGroup& g, const std::vector<std::size_t>& a) {
  if (g.order() % 2 == 0)
    throw FormulaUnavailable("c4_formula_odd: group order is even; count the built graph directly");
  const std::uint64_t h1 = h_t(g, a, 1), h2 = h_t(g, a, 2);
  const std::uint64_t num = g.order() * (h2 - h1);
  if (num % 4 != 0) throw std::logic_error("c4_formula_odd: n(h2 - h1) not divisible by 4");
  return num / 4;
}

/// Σ_{g≠0} (c(g) − k(k−1)/(n−1))², exact.
inline Rational psi2(const AbelianGroup& g, const std::vector<std::size_t>& a) {
  const auto c = group_difference_counts(g, a);
  if (g.order() < 2) return Rational(0);
  const std::uint64_t k = a.size();
  const Rational mean(Integer(k) * (k == 0 ? 0 : k - 1), Integer(g.order() - 1));
  Rational total = 0;
  for (std::size_t x = 1; x < g.order(); ++x) {
    const Rational d = Rational(c[x]) - mean;
    total += d * d;
  }
  return total;
}

struct GroupSubsetStats {
  std::vector<std::size_t> subset;
  std::vector<std::uint64_t> counts;
  std::uint64_t h1 = 0, h2 = 0;
  Rational psi2;
  Rational average;
};

inline GroupSubsetStats group_subset_stats(const AbelianGroup& g, const std::vector<std::size_t>& a) {
  GroupSubsetStats s;
  s.subset = a;
  std::sort(s.subset.begin(), s.subset.end());
  s.counts = group_difference_counts(g, a);
  s.h1 = h_t(g, a, 1);
  s.h2 = h_t(g, a, 2);
  s.psi2 = psi2(g, a);
  const std::uint64_t k = a.size();
  s.average = g.order() < 2 ? Rational(0) : Rational(Integer(k) * (k == 0 ? 0 : k - 1), Integer(g.order() - 1));
  return s;
}

// ---------------------------------------------------------------------------
// Ψ₂ minimisation over k-subsets.

enum class SearchMode { exhaustive, local };
enum class SearchObjective { psi2, h2 };

struct SearchOptions {
  SearchMode mode = SearchMode::exhaustive;
  SearchObjective objective = SearchObjective::h2;
  std::uint64_t seed = 1;
  std::uint64_t budget = 20000;    // local: objective evaluations per restart
  unsigned restarts = 8;           // local
  std::uint64_t cap = 10'000'000;  // exhaustive: max C(n, k)
  unsigned threads = 1;
};

struct SearchResult {
  std::vector<std::size_t> best;
  Rational psi2;
  std::uint64_t h2 = 0;
  std::uint64_t evaluated = 0;
  std::vector<Rational> trace;  // local: best Ψ₂ per restart; exhaustive: the minimum
};

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Incremental h₂ for subsets of a fixed group, via a shared difference table.
class H2Evaluator {
 public:
  explicit H2Evaluator(const AbelianGroup& g) : n_(g.order()), diff_(g.difference_table()), counts_(n_, 0) {}

  std::uint64_t operator()(const std::vector<std::size_t>& a) {
    std::fill(counts_.begin(), counts_.end(), 0);
    std::uint64_t h2 = 0;
    for (auto x : a)
      for (auto y : a)
        if (x != y) {
          auto& c = counts_[diff_[x * n_ + y]];
          h2 += 2 * c + 1;  // (c+1)² − c²
          ++c;
        }
    return h2;
  }

 private:
  std::size_t n_;
  std::vector<std::size_t> diff_;
  std::vector<std::uint64_t> counts_;
};

inline Rational psi2_from_h2(std::uint64_t h2, std::uint64_t n, std::uint64_t k) {
  if (n < 2) return Rational(0);
  const Integer h1 = Integer(k) * (k == 0 ? 0 : k - 1);
  return Rational(Integer(h2)) - Rational(h1 * h1, Integer(n - 1));
}

}  // namespace detail

inline SearchResult psi2_search(const AbelianGroup& g, std::size_t k, const SearchOptions& opt = {}) {
  const std::size_t n = g.order();
  if (k < 1 || k > n) throw std::invalid_argument("psi2_search: need 1 <= k <= n");
  SearchResult result;

  // Score for comparison; both objectives order subsets identically because
  // Ψ₂ = h₂ − h₁²/(n−1) with h₁ fixed.
  auto score_of = [&](const std::vector<std::size_t>& a, detail::H2Evaluator& eval) -> Rational {
    if (opt.objective == SearchObjective::psi2) return psi2(g, a);
    return Rational(Integer(eval(a)));
  };

  if (opt.mode == SearchMode::exhaustive) {
    std::uint64_t total = 0;
    try {
      total = choose(n, k);
    } catch (const std::overflow_error&) {
      total = UINT64_MAX;
    }
    if (total > opt.cap)
      throw CapExceeded("psi2_search: C(" + std::to_string(n) + "," + std::to_string(k) + ") exceeds cap " +
                        std::to_string(opt.cap));
    // One task per smallest element; lexicographic enumeration inside.
    struct Partial {
      bool found = false;
      Rational score;
      std::vector<std::size_t> best;
      std::uint64_t evaluated = 0;
    };
    auto parts = parallel_map(n - k + 1, opt.threads, [&](std::size_t first) {
      Partial p;
      detail::H2Evaluator eval(g);
      std::vector<std::size_t> a(k);
      a[0] = first;
      for (std::size_t i = 1; i < k; ++i) a[i] = first + i;
      while (true) {
        const Rational s = score_of(a, eval);
        ++p.evaluated;
        if (!p.found || s < p.score) {
          p.found = true;
          p.score = s;
          p.best = a;
        }
        // next combination with a[0] fixed
        std::size_t i = k;
        while (i > 1 && a[i - 1] == n - k + i - 1) --i;
        if (i <= 1) break;
        ++a[i - 1];
        for (std::size_t j = i; j < k; ++j) a[j] = a[j - 1] + 1;
      }
      return p;
    });
    bool have = false;
    Rational best_score;
    for (auto& p : parts) {
      result.evaluated += p.evaluated;
      if (p.found && (!have || p.score < best_score)) {
        have = true;
        best_score = p.score;
        result.best = p.best;
      }
    }
  } else {
    struct Restart {
      std::vector<std::size_t> best;
      std::uint64_t h2 = 0;
      std::uint64_t evaluated = 0;
    };
    auto runs = parallel_map(opt.restarts == 0 ? 1 : opt.restarts, opt.threads, [&](std::size_t r) {
      std::mt19937_64 rng(opt.seed * 0x9E3779B97F4A7C15ULL + r);
      detail::H2Evaluator eval(g);
      std::vector<std::size_t> all(n);
      std::iota(all.begin(), all.end(), 0);
      std::shuffle(all.begin(), all.end(), rng);
      std::vector<std::size_t> cur(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
      std::vector<std::size_t> rest(all.begin() + static_cast<std::ptrdiff_t>(k), all.end());
      Restart out;
      std::uint64_t cur_h2 = eval(cur);
      out.evaluated = 1;
      bool improved = true;
      while (improved && out.evaluated < opt.budget) {
        improved = false;
        // first improvement over single swaps, scanned in a shuffled order
        std::vector<std::pair<std::size_t, std::size_t>> moves;
        for (std::size_t i = 0; i < cur.size(); ++i)
          for (std::size_t j = 0; j < rest.size(); ++j) moves.emplace_back(i, j);
        std::shuffle(moves.begin(), moves.end(), rng);
        for (auto [i, j] : moves) {
          if (out.evaluated >= opt.budget) break;
          std::swap(cur[i], rest[j]);
          const auto h2 = eval(cur);
          ++out.evaluated;
          if (h2 < cur_h2) {
            cur_h2 = h2;
            improved = true;
            break;
          }
          std::swap(cur[i], rest[j]);
        }
      }
      std::sort(cur.begin(), cur.end());
      out.best = cur;
      out.h2 = cur_h2;
      return out;
    });
    bool have = false;
    std::uint64_t best_h2 = 0;
    for (auto& r : runs) {
      result.evaluated += r.evaluated;
      result.trace.push_back(detail::psi2_from_h2(r.h2, n, k));
      if (!have || r.h2 < best_h2 || (r.h2 == best_h2 && r.best < result.best)) {
        have = true;
        best_h2 = r.h2;
        result.best = r.best;
      }
    }
  }
  detail::H2Evaluator eval(g);
  result.h2 = eval(result.best);
  result.psi2 = psi2(g, result.best);
  if (opt.mode == SearchMode::exhaustive) result.trace = {result.psi2};
  return result;
}

}  // namespace supersat
