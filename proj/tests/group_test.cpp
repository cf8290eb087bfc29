#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "supersat/bounds.hpp"
#include "supersat/group.hpp"

using namespace supersat;

namespace {

Rational frac(long p, long q) { return Rational(Integer(p), Integer(q)); }

std::vector<std::size_t> subset_of(std::uint32_t mask, std::size_t n) {
  std::vector<std::size_t> a;
  for (std::size_t i = 0; i < n; ++i)
    if ((mask >> i) & 1U) a.push_back(i);
  return a;
}

}  // namespace

TEST(AbelianGroupType, MixedRadixArithmetic) {
  const AbelianGroup g({3, 3});
  EXPECT_EQ(g.order(), 9U);
  EXPECT_EQ(g.components(5), (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(g.index({2, 1}), 7U);
  EXPECT_EQ(g.add(5, 7), g.index({0, 0}));
  EXPECT_EQ(g.neg(5), g.index({2, 1}));
  for (std::size_t a = 0; a < 9; ++a)
    for (std::size_t b = 0; b < 9; ++b) EXPECT_EQ(g.add(g.sub(a, b), b), a);
  EXPECT_THROW(AbelianGroup({}), std::invalid_argument);
  EXPECT_THROW(AbelianGroup({3, 0}), std::invalid_argument);
}

TEST(HT, KnownValues) {
  const AbelianGroup z7({7});
  EXPECT_EQ(h_t(z7, {1, 2, 4}, 1), 6U);
  EXPECT_EQ(h_t(z7, {1, 2, 4}, 2), 6U);
  const AbelianGroup z5({5});
  EXPECT_EQ(h_t(z5, {0, 1, 2}, 1), 6U);
  EXPECT_EQ(h_t(z5, {0, 1, 2}, 2), 10U);
  EXPECT_THROW(h_t(z5, {0, 1}, 0), std::invalid_argument);
  EXPECT_THROW(h_t(z5, {0, 0}, 1), std::invalid_argument);
  EXPECT_THROW(h_t(z5, {5}, 1), std::invalid_argument);
}

TEST(HT, FirstMomentIsKTimesKMinusOne) {
  const AbelianGroup g({2, 4});
  for (std::uint32_t mask = 0; mask < (1U << 8); ++mask) {
    const auto a = subset_of(mask, 8);
    EXPECT_EQ(h_t(g, a, 1), a.size() * (a.empty() ? 0 : a.size() - 1));
  }
}

TEST(CayleyGraph, KnownValues) {
  const auto heawood = build_cayley_bipartite(AbelianGroup({7}), {1, 2, 4});
  EXPECT_EQ(heawood.edge_count(), 21U);
  EXPECT_EQ(is_regular(heawood), 3U);
  EXPECT_EQ(count_c4(heawood), 0U);
  EXPECT_EQ(codegree_histogram(heawood, Side::X), (std::map<std::size_t, std::uint64_t>{{1, 21}}));

  const auto cycle = build_cayley_bipartite(AbelianGroup({5}), {0, 1});
  EXPECT_EQ(cycle.edge_count(), 10U);
  EXPECT_EQ(is_regular(cycle), 2U);
  EXPECT_EQ(count_c4(cycle), 0U);
  EXPECT_THROW(build_cayley_bipartite(AbelianGroup({5}), {}), std::invalid_argument);
}

TEST(CayleyGraph, CodegreeIsTheDifferenceCount) {
  const AbelianGroup g({3, 4});
  const std::vector<std::size_t> a{0, 1, 5, 7, 10};
  const auto graph = build_cayley_bipartite(g, a);
  const auto c = group_difference_counts(g, a);
  for (std::size_t u = 0; u < g.order(); ++u)
    for (std::size_t v = u + 1; v < g.order(); ++v) EXPECT_EQ(codegree(graph, u, v, Side::X), c[g.sub(v, u)]);
}

TEST(C4Formula, KnownValues) {
  EXPECT_EQ(c4_formula_odd(AbelianGroup({7}), {1, 2, 4}), 0U);
  EXPECT_EQ(c4_formula_odd(AbelianGroup({5}), {0, 1, 2}), 5U);
  EXPECT_THROW(c4_formula_odd(AbelianGroup({6}), {0, 1, 3}), FormulaUnavailable);
  EXPECT_THROW(c4_formula_odd(AbelianGroup({2, 3}), {0, 1}), FormulaUnavailable);
}

TEST(C4Formula, MatchesTheBuiltGraphForEveryOddGroupSubset) {
  for (const auto& orders : std::vector<std::vector<std::size_t>>{{3}, {5}, {7}, {9}, {3, 3}, {11}}) {
    const AbelianGroup g(orders);
    const std::size_t n = g.order();
    for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
      const auto a = subset_of(mask, n);
      ASSERT_EQ(c4_formula_odd(g, a), count_c4(build_cayley_bipartite(g, a))) << n << " mask " << mask;
    }
  }
}

TEST(C4Formula, EvenOrderGraphsStillCountDirectly) {
  // Differences of order two break the pairing, so only the direct count is available.
  const AbelianGroup z6({6});
  const auto g = build_cayley_bipartite(z6, {0, 1, 3});
  EXPECT_EQ(count_c4(g), oracle::c4(g));
}

TEST(Psi2, KnownValues) {
  EXPECT_EQ(psi2(AbelianGroup({7}), {1, 2, 4}), Rational(0));
  EXPECT_EQ(psi2(AbelianGroup({5}), {0, 1, 2}), Rational(1));
  EXPECT_EQ(psi2(AbelianGroup({5}), {0, 1}), Rational(1));
}

TEST(Psi2, ExpansionIdentity) {
  std::mt19937_64 rng(7);
  for (std::size_t n : {6, 10, 13, 16, 21}) {
    const AbelianGroup g({n});
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<std::size_t> all(n);
      std::iota(all.begin(), all.end(), 0);
      std::shuffle(all.begin(), all.end(), rng);
      const std::vector<std::size_t> a(all.begin(), all.begin() + 1 + static_cast<std::ptrdiff_t>(rng() % (n - 1)));
      const auto s = group_subset_stats(g, a);
      EXPECT_EQ(s.psi2, Rational(s.h2) - Rational(Integer(s.h1) * s.h1, Integer(n - 1)));
      EXPECT_EQ(s.average, Rational(Integer(s.h1), Integer(n - 1)));
      EXPECT_GE(s.psi2, 0);
    }
  }
}

TEST(Psi2Search, ExhaustiveKnownValues) {
  const auto z7 = psi2_search(AbelianGroup({7}), 3);
  EXPECT_EQ(z7.psi2, Rational(0));
  EXPECT_EQ(z7.h2, 6U);
  EXPECT_EQ(z7.evaluated, 35U);

  EXPECT_EQ(psi2_search(AbelianGroup({5}), 2).psi2, Rational(1));

  // Z6, k = 3: c(3) is even, so h2 ≥ 8
  const auto z6 = psi2_search(AbelianGroup({6}), 3);
  EXPECT_EQ(z6.h2, 8U);
  EXPECT_EQ(z6.psi2, frac(4, 5));
  EXPECT_EQ(z6.trace, std::vector<Rational>{frac(4, 5)});
}

TEST(Psi2Search, ExhaustiveMatchesBruteForceMinimum) {
  for (const auto& orders : std::vector<std::vector<std::size_t>>{{8}, {2, 4}, {9}, {3, 3}, {10}}) {
    const AbelianGroup g(orders);
    const std::size_t n = g.order();
    for (std::size_t k = 1; k <= n; ++k) {
      Rational best = -1;
      for (std::uint32_t mask = 0; mask < (1U << n); ++mask)
        if (static_cast<std::size_t>(std::popcount(mask)) == k) {
          const auto p = psi2(g, subset_of(mask, n));
          if (best < 0 || p < best) best = p;
        }
      EXPECT_EQ(psi2_search(g, k).psi2, best) << n << " k=" << k;
    }
  }
}

TEST(Psi2Search, ObjectivesAndThreadCountsAgree) {
  for (std::size_t n : {11, 12, 13}) {
    const AbelianGroup g({n});
    SearchOptions h2;
    SearchOptions ps;
    ps.objective = SearchObjective::psi2;
    SearchOptions threaded;
    threaded.threads = 4;
    const auto a = psi2_search(g, 4, h2), b = psi2_search(g, 4, ps), c = psi2_search(g, 4, threaded);
    EXPECT_EQ(a.best, b.best);
    EXPECT_EQ(a.best, c.best);
    EXPECT_EQ(a.psi2, b.psi2);
    EXPECT_EQ(a.evaluated, c.evaluated);
  }
}

TEST(Psi2Search, LocalIsDeterministicBySeedAndNeverBeatsExhaustive) {
  const AbelianGroup g({21});
  SearchOptions opt;
  opt.mode = SearchMode::local;
  opt.seed = 42;
  opt.restarts = 6;
  const auto a = psi2_search(g, 5, opt);
  opt.threads = 3;
  const auto b = psi2_search(g, 5, opt);
  EXPECT_EQ(a.best, b.best);
  EXPECT_EQ(a.trace, b.trace);
  EXPECT_EQ(a.evaluated, b.evaluated);
  EXPECT_EQ(a.trace.size(), 6U);
  EXPECT_EQ(a.best.size(), 5U);
  EXPECT_GE(a.psi2, psi2_search(g, 5).psi2);
  EXPECT_EQ(a.psi2, *std::min_element(a.trace.begin(), a.trace.end()));
}

TEST(Psi2Search, CapAndArgumentErrors) {
  SearchOptions opt;
  opt.cap = 1000;
  EXPECT_THROW(psi2_search(AbelianGroup({30}), 15, opt), CapExceeded);
  EXPECT_THROW(psi2_search(AbelianGroup({5}), 0), std::invalid_argument);
  EXPECT_THROW(psi2_search(AbelianGroup({5}), 6), std::invalid_argument);
}
