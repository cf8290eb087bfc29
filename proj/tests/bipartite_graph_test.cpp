#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "supersat/difference_sets.hpp"
#include "supersat/mors.hpp"

using namespace supersat;

namespace {

BipartiteGraph heawood() { return development(CyclicSubset(7, {1, 2, 4})); }

std::vector<BipartiteGraph> zoo() {
  std::vector<BipartiteGraph> out{heawood(), oracle::complete(3, 3), BipartiteGraph(3, 3, {}),
                                  development(CyclicSubset(13, {0, 1, 3, 9, 4})), build_mors({5, 2, 0, std::nullopt}),
                                  build_mors({7, 3, 0, std::nullopt})};
  for (std::uint64_t seed = 1; seed <= 6; ++seed)
    out.push_back(oracle::random_graph(5 + seed, 4 + 2 * seed, 0.2 + 0.1 * static_cast<double>(seed), seed));
  // wider than one 64-bit word on both sides
  out.push_back(oracle::random_graph(70, 90, 0.1, 99));
  return out;
}

}  // namespace

TEST(Construction, RejectsDuplicateAndOutOfRangeEdges) {
  EXPECT_THROW(BipartiteGraph(2, 2, std::vector<Edge>{{0, 0}, {0, 0}}), std::invalid_argument);
  EXPECT_THROW(BipartiteGraph(2, 2, std::vector<Edge>{{2, 0}}), std::out_of_range);
  EXPECT_THROW(BipartiteGraph(2, 2, std::vector<Edge>{{0, 2}}), std::out_of_range);
}

TEST(Construction, EdgeCountMatchesRowAndColumnDegreeSums) {
  for (const auto& g : zoo()) {
    std::size_t rows = 0, cols = 0;
    for (auto d : degrees(g, Side::X)) rows += d;
    for (auto d : degrees(g, Side::Y)) cols += d;
    EXPECT_EQ(rows, g.edge_count());
    EXPECT_EQ(cols, g.edge_count());
    EXPECT_EQ(g.edges().size(), g.edge_count());
  }
}

TEST(Degrees, KnownValues) {
  EXPECT_EQ(degrees(heawood(), Side::X), std::vector<std::size_t>(7, 3));
  EXPECT_EQ(degrees(BipartiteGraph(3, 3, {}), Side::X), std::vector<std::size_t>(3, 0));
  EXPECT_EQ(degrees(build_mors({5, 2, 0, std::nullopt}), Side::Y), std::vector<std::size_t>(10, 4));
}

TEST(Codegree, KnownValues) {
  const auto h = heawood();
  for (std::size_t u = 0; u < 7; ++u)
    for (std::size_t v = u + 1; v < 7; ++v) EXPECT_EQ(codegree(h, u, v, Side::X), 1U);
  const auto k33 = oracle::complete(3, 3);
  EXPECT_EQ(codegree(k33, 0, 2, Side::X), 3U);
  EXPECT_EQ(codegree(k33, 1, 2, Side::Y), 3U);
  EXPECT_THROW(codegree(k33, 1, 1, Side::X), std::invalid_argument);
  EXPECT_THROW(codegree(k33, 0, 3, Side::X), std::out_of_range);
}

TEST(Codegree, MatchesNaiveIntersectionOnBothSides) {
  for (const auto& g : zoo())
    for (Side s : {Side::X, Side::Y})
      for (std::size_t u = 0; u < std::min<std::size_t>(g.size(s), 20); ++u)
        for (std::size_t v = u + 1; v < std::min<std::size_t>(g.size(s), 20); ++v)
          ASSERT_EQ(codegree(g, u, v, s), oracle::common(g, s, u, v));
}

TEST(CodegreeHistogram, KnownValues) {
  EXPECT_EQ(codegree_histogram(heawood(), Side::X), (std::map<std::size_t, std::uint64_t>{{1, 21}}));
  EXPECT_EQ(codegree_histogram(BipartiteGraph(4, 4, {}), Side::X), (std::map<std::size_t, std::uint64_t>{{0, 6}}));
}

TEST(CodegreeHistogram, CoversAllPairsAndIsThreadIndependent) {
  for (const auto& g : zoo())
    for (Side s : {Side::X, Side::Y}) {
      const auto h1 = codegree_histogram(g, s, 1);
      std::uint64_t pairs = 0;
      for (const auto& [c, n] : h1) pairs += n;
      EXPECT_EQ(pairs, oracle::binom(g.size(s), 2));
      EXPECT_EQ(h1, codegree_histogram(g, s, 8));
    }
}

TEST(CountC4, KnownValues) {
  EXPECT_EQ(count_c4(heawood()), 0U);
  const auto plus_one = heawood().with_edges(std::vector<Edge>{{0, 0}});
  ASSERT_FALSE(heawood().has_edge(0, 0));
  EXPECT_EQ(count_c4(plus_one), 3U);
  EXPECT_EQ(oracle::c4(plus_one), 3U);
  EXPECT_EQ(count_c4(oracle::complete(3, 3)), 9U);
}

TEST(CountC4, AgreesWithQuadrupleEnumerationAndAcrossSides) {
  for (const auto& g : zoo()) {
    if (g.n_x() > 40) continue;
    const auto expected = oracle::c4(g);
    EXPECT_EQ(count_c4(g, Side::X), expected);
    EXPECT_EQ(count_c4(g, Side::Y), expected);
    EXPECT_EQ(count_c4(g, Side::X, 4), expected);
  }
  const auto big = oracle::random_graph(70, 90, 0.1, 99);
  EXPECT_EQ(count_c4(big, Side::X), count_c4(big, Side::Y));
}

TEST(CountC4, DoubleCountingOfCodegrees) {
  for (const auto& g : zoo()) {
    std::uint64_t lhs = 0, rhs = 0;
    for (auto d : degrees(g, Side::Y)) lhs += oracle::binom(d, 2);
    for (const auto& [c, n] : codegree_histogram(g, Side::X)) rhs += c * n;
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(CountK2t, KnownValues) {
  EXPECT_EQ(count_k2t(heawood(), 2, Side::X), 0U);
  EXPECT_EQ(count_k2t(oracle::complete(3, 3), 3, Side::X), 3U);
}

TEST(CountK2t, AgreesWithNaiveAndVanishesAboveMaxCodegree) {
  for (const auto& g : zoo()) {
    if (g.n_x() > 40) continue;
    for (Side s : {Side::X, Side::Y}) {
      std::size_t max_c = 0;
      for (const auto& [c, n] : codegree_histogram(g, s)) max_c = std::max(max_c, c);
      for (std::size_t t = 2; t <= 6; ++t) {
        EXPECT_EQ(count_k2t(g, t, s), oracle::k2t(g, t, s));
        if (t > max_c) {
          EXPECT_EQ(count_k2t(g, t, s), 0U);
        }
      }
    }
  }
  EXPECT_THROW(count_k2t(heawood(), 1, Side::X), std::invalid_argument);
}

TEST(CountKab, KnownValues) {
  EXPECT_EQ(count_kab(heawood(), 2, 2, Side::X), 0U);
  EXPECT_EQ(count_kab(oracle::complete(3, 3), 3, 3, Side::X), 1U);
  const auto m52 = build_mors({5, 2, 0, std::nullopt});
  EXPECT_EQ(count_kab(m52, 2, 2, Side::X), count_c4(m52));
  EXPECT_EQ(count_kab(oracle::complete(3, 3), 4, 1, Side::X), 0U);
  EXPECT_EQ(count_kab(oracle::complete(3, 3), 1, 4, Side::X), 0U);
}

TEST(CountKab, AgreesWithSubsetEnumeration) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto g = oracle::random_graph(6, 7, 0.55, seed);
    for (std::size_t a = 1; a <= 4; ++a)
      for (std::size_t b = 1; b <= 4; ++b) {
        EXPECT_EQ(count_kab(g, a, b, Side::X), oracle::kab(g, a, b, Side::X)) << a << "," << b;
        EXPECT_EQ(count_kab(g, a, b, Side::Y), oracle::kab(g, a, b, Side::Y)) << a << "," << b;
      }
    EXPECT_EQ(count_kab(g, 2, 2, Side::X), count_c4(g));
    EXPECT_EQ(count_kab(g, 2, 3, Side::X), count_kab(g, 3, 2, Side::Y));
  }
}

TEST(Regularity, KnownValues) {
  EXPECT_EQ(is_regular(heawood()), 3U);
  const BipartiteGraph star(3, 3, std::vector<Edge>{{0, 0}, {0, 1}, {0, 2}});
  EXPECT_FALSE(is_regular(star));
}

TEST(GraphIo, RoundTripIsIdentity) {
  const auto g = build_mors({7, 3, 0, std::nullopt});
  const auto text = graph_to_string(g);
  std::istringstream in(text);
  const auto back = read_graph(in);
  EXPECT_EQ(back, g);
  EXPECT_EQ(graph_to_string(back), text);
  const auto path = ::testing::TempDir() + "mors73.graph";
  save_graph(path, g);
  EXPECT_EQ(load_graph(path), g);
}

TEST(GraphIo, FormatIsHeaderThenSortedEdges) {
  const BipartiteGraph g(2, 3, std::vector<Edge>{{1, 2}, {0, 1}, {1, 0}});
  EXPECT_EQ(graph_to_string(g), "2 3 3\n0 1\n1 0\n1 2\n");
}

TEST(GraphIo, CommentsAndBlankLinesAreIgnored) {
  std::istringstream in("# a comment\n2 2 2\n\n0 0\n# another\n1 1\n");
  const auto g = read_graph(in);
  EXPECT_EQ(g.edge_count(), 2U);
  EXPECT_TRUE(g.has_edge(1, 1));
}

TEST(GraphIo, ErrorsReportTheOffendingLine) {
  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      read_graph(in);
    } catch (const GraphFormatError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("2 2 2\n0 0\n1 x\n"), 3U);
  EXPECT_EQ(line_of("2 2 2\n0 0\n0 5\n"), 3U);
  EXPECT_EQ(line_of("2 2 2\n0 0\n0 0\n"), 3U);
  EXPECT_EQ(line_of("# c\n2 2\n"), 2U);
  EXPECT_NE(line_of("2 2 3\n0 0\n1 1\n"), 0U);  // fewer edges than declared
  EXPECT_NE(line_of("2 2 1\n0 0\n1 1\n"), 0U);  // more edges than declared
}

TEST(Transforms, TransposeSwapsSidesAndWithEdgesIsNonMutating) {
  const auto g = oracle::random_graph(5, 8, 0.4, 3);
  const auto t = g.transposed();
  EXPECT_EQ(t.n_x(), 8U);
  EXPECT_EQ(t.n_y(), 5U);
  for (const auto& e : g.edges()) EXPECT_TRUE(t.has_edge(e.y, e.x));
  EXPECT_EQ(t.transposed(), g);
  const auto before = g.edge_count();
  std::vector<Edge> extra;
  for (std::size_t y = 0; y < 8; ++y)
    if (!g.has_edge(0, y)) extra.push_back({0, y});
  const auto h = g.with_edges(extra);
  EXPECT_EQ(g.edge_count(), before);
  EXPECT_EQ(h.edge_count(), before + extra.size());
}
