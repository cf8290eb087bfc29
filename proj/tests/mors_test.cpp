#include <gtest/gtest.h>

#include "oracles.hpp"
#include "supersat/mors.hpp"

using namespace supersat;

namespace {

using Histogram = std::map<std::size_t, std::uint64_t>;

const std::vector<std::pair<std::uint64_t, std::uint64_t>> kParams{{5, 2}, {5, 4}, {7, 2}, {7, 3}, {7, 6},
                                                                    {11, 5}, {13, 3}, {13, 4}, {9, 2}, {8, 7}};

Rational frac(long p, long q) { return Rational(Integer(p), Integer(q)); }

}  // namespace

TEST(MorsBuild, MatchesModularArithmeticReferenceForPrimeQ) {
  for (auto [q, k] : kParams) {
    if (!is_prime(q)) continue;
    const auto g = oracle::primitive_root(q);
    for (std::int64_t delta : {0, 1, 2}) {
      const auto expected = oracle::graph_from(q * (q - 1) / k, q * (q - 1) / k,
                                               oracle::mors_edges(q, k, static_cast<std::uint64_t>(delta), g));
      EXPECT_EQ(build_mors({q, k, delta, std::nullopt}), expected) << q << "," << k << " delta " << delta;
    }
  }
}

TEST(MorsBuild, SizesRegularitySymmetryAndThreads) {
  for (auto [q, k] : kParams) {
    const auto g = build_mors({q, k, 0, std::nullopt});
    const auto pred = predicted_stats(q, k);
    EXPECT_EQ(g.n_x(), pred.n);
    EXPECT_EQ(g.edge_count(), pred.m) << q << "," << k;
    EXPECT_EQ(is_regular(g), q - 1);
    EXPECT_EQ(g.transposed(), g);  // the adjacency rule is symmetric in the two sides
    EXPECT_EQ(build_mors({q, k, 0, std::nullopt}, 4), g);
  }
}

TEST(MorsBuild, RejectsBadParameters) {
  EXPECT_THROW(build_mors({6, 1, 0, std::nullopt}), std::invalid_argument);
  EXPECT_THROW(build_mors({7, 4, 0, std::nullopt}), std::invalid_argument);
  EXPECT_THROW(build_mors({7, 0, 0, std::nullopt}), std::invalid_argument);
  EXPECT_THROW(build_mors({7, 3, 0, Code{2}}), std::invalid_argument);  // 2 has order 3 mod 7
}

TEST(MorsBuild, LabelsNameTheParameterPairs) {
  const auto g = build_mors({5, 2, 0, std::nullopt});
  EXPECT_EQ(g.labels(Side::X).front(), "(0,1)");
  EXPECT_EQ(g.labels(Side::Y).back(), "(4,2)");
}

TEST(MorsStats, MeasuredHistogramsAndCounts) {
  const auto m52 = build_mors({5, 2, 0, std::nullopt});
  EXPECT_EQ(codegree_histogram(m52, Side::X), (Histogram{{0, 5}, {1, 20}, {2, 20}}));
  EXPECT_EQ(count_c4(m52), 20U);

  const auto m73 = build_mors({7, 3, 0, std::nullopt});
  EXPECT_EQ(count_c4(m73), 168U);
  EXPECT_EQ(count_k2t(m73, 3, Side::X), 42U);

  EXPECT_EQ(count_c4(build_mors({13, 4, 0, std::nullopt})), 3510U);

  const auto m76 = build_mors({7, 6, 0, std::nullopt});
  EXPECT_EQ(codegree_histogram(m76, Side::X), (Histogram{{5, 21}}));
  EXPECT_EQ(count_c4(m76), 210U);
}

TEST(MorsStats, CodegreesLieInZeroKMinusOneAndK) {
  for (auto [q, k] : kParams) {
    if (k < 2) continue;
    const auto g = build_mors({q, k, 0, std::nullopt});
    for (const auto& [c, n] : codegree_histogram(g, Side::X))
      EXPECT_TRUE(c == 0 || c == k - 1 || c == k) << q << "," << k << " codegree " << c;
  }
}

TEST(MorsStats, K2tVanishesAboveK) {
  for (auto [q, k] : kParams) {
    const auto g = build_mors({q, k, 0, std::nullopt});
    EXPECT_EQ(count_k2t(g, k + 1, Side::X), 0U);
    EXPECT_EQ(count_k2t(g, k + 1, Side::Y), 0U);
  }
}

TEST(MorsStats, InvariantUnderDeltaAndGenerator) {
  for (auto [q, k] : kParams) {
    const auto base = build_mors({q, k, 0, std::nullopt});
    const auto hist = codegree_histogram(base, Side::X);
    const auto c4 = count_c4(base);
    const auto field = make_field_of_order(q);
    std::vector<Code> gens;
    for (Code c = 1; c < q && gens.size() < 3; ++c)
      if (field.is_primitive(c)) gens.push_back(c);
    for (std::int64_t delta = 0; delta < static_cast<std::int64_t>((q - 1) / k) && delta < 3; ++delta)
      for (auto gen : gens) {
        const auto g = build_mors({q, k, delta, gen});
        EXPECT_EQ(codegree_histogram(g, Side::X), hist) << q << "," << k;
        EXPECT_EQ(count_c4(g), c4) << q << "," << k;
      }
  }
}

TEST(MorsPredictions, KnownValues) {
  const auto p52 = predicted_stats(5, 2);
  EXPECT_EQ(p52.c4, Rational(40));
  EXPECT_EQ(p52.n, 10U);
  EXPECT_EQ(p52.m, 40U);
  const auto p73 = predicted_stats(7, 3, 3U);
  EXPECT_EQ(p73.k2t_unordered, Rational(84));
  EXPECT_EQ(p73.k2t_claimed_ordered, Rational(168));
  const auto p134 = predicted_stats(13, 4);
  EXPECT_EQ(p134.c4, Rational(4212));
  EXPECT_EQ(p134.c4_over_n2, frac(36, 13));
  EXPECT_EQ(p134.limit, Rational(3));
}

TEST(MorsPredictions, MeasuredC4DiffersFromTheClosedForm) {
  // Codegree k − 1 pairs exist, so the closed-form counts are not attained.
  const auto measured = count_c4(build_mors({13, 4, 0, std::nullopt}));
  const auto pred = predicted_stats(13, 4);
  EXPECT_EQ(Rational(measured) / Rational(Integer(pred.n) * pred.n), frac(30, 13));
  EXPECT_NE(Rational(measured), pred.c4);
}

TEST(MorsVerify, ReportsTheFirstFailingCheck) {
  const auto r = verify_mors({7, 3, 0, std::nullopt});
  EXPECT_EQ(r.n, 14U);
  EXPECT_EQ(r.m, 84U);
  EXPECT_EQ(r.c4, 168U);
  ASSERT_NE(r.first_failure(), nullptr);
  EXPECT_FALSE(r.pass());
  for (const auto& c : r.checks) {
    if (c.name == "vertices" || c.name == "edges" || c.name == "regular") {
      EXPECT_TRUE(c.pass) << c.name;
    }
  }
  EXPECT_EQ(r.k2t_v1.at(3), 42U);
  EXPECT_EQ(r.k2t_v1, r.k2t_v2);
}
