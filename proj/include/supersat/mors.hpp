#pragma once

// G^(q,k): V1 = V2 = F_q × {1..(q−1)/k}; (a, b) ~ (α, β) iff
// s = g^β a + g^b α is nonzero and s·g^{−δ} lies in the order-k subgroup of
// F_q^×. Vertex (a, b) has index code(a)·(q−1)/k + (b − 1) on either side,
// where code(a) is the canonical field enumeration.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "supersat/bipartite_graph.hpp"
#include "supersat/bounds.hpp"
#include "supersat/finite_field.hpp"

namespace supersat {

struct MorsParams {
  std::uint64_t q = 0;
  std::uint64_t k = 1;
  std::int64_t delta = 0;
  std::optional<Code> generator;  // defaults to the canonical primitive element
};

namespace detail {

inline void validate_mors(const MorsParams& p) {
  if (!prime_power(p.q)) throw std::invalid_argument("mors: q=" + std::to_string(p.q) + " is not a prime power");
  if (p.k == 0 || (p.q - 1) % p.k != 0)
    throw std::invalid_argument("mors: k=" + std::to_string(p.k) + " does not divide q-1=" + std::to_string(p.q - 1));
}

}  // namespace detail

inline BipartiteGraph build_mors(const MorsParams& params, unsigned threads = 1) {
  detail::validate_mors(params);
  const auto field = make_field_of_order(params.q);
  const Code g = params.generator.value_or(field.primitive_element());
  if (!field.is_primitive(g)) throw std::invalid_argument("mors: generator " + std::to_string(g) + " is not primitive");

  const std::size_t q = params.q, classes = (params.q - 1) / params.k, n = q * classes;
  const auto k = static_cast<std::int64_t>(params.k);
  std::vector<Code> g_pow(classes + 1);
  for (std::size_t b = 1; b <= classes; ++b) g_pow[b] = field.pow(g, static_cast<std::int64_t>(b));
  const Code shift_inv = field.pow(g, -params.delta);

  auto rows = parallel_map(n, threads, [&](std::size_t u) {
    const Code a = static_cast<Code>(u / classes);
    const std::size_t b = u % classes + 1;
    std::vector<Edge> out;
    for (std::size_t v = 0; v < n; ++v) {
      const Code alpha = static_cast<Code>(v / classes);
      const std::size_t beta = v % classes + 1;
      const Code s = field.add(field.mul(g_pow[beta], a), field.mul(g_pow[b], alpha));
      if (s != 0 && field.pow(field.mul(s, shift_inv), k) == field.one()) out.push_back({u, v});
    }
    return out;
  });
  std::vector<Edge> edges;
  for (auto& r : rows) edges.insert(edges.end(), r.begin(), r.end());
  BipartiteGraph graph(n, n, edges);

  std::vector<std::string> labels(n);
  for (std::size_t u = 0; u < n; ++u)
    labels[u] = "(" + std::to_string(u / classes) + "," + std::to_string(u % classes + 1) + ")";
  graph.set_labels(Side::X, labels);
  graph.set_labels(Side::Y, labels);
  return graph;
}

/// Closed-form values claimed for G^(q,k); rationals where the formulas
/// need not be integral.
struct MorsPrediction {
  std::uint64_t q = 0, k = 0;
  std::uint64_t n = 0;       // q(q−1)/k
  std::uint64_t m = 0;       // q(q−1)²/k
  std::uint64_t degree = 0;  // q − 1
  std::vector<std::uint64_t> codegrees;  // {0, k}
  std::uint64_t zero_partners = 0;       // (q−1)/k
  Rational c4;                           // q(q−1)³(1 − 1/k)/4
  Rational codegree_k_pairs;             // q(q−1)³/(2k²)
  std::optional<unsigned> t;
  Rational k2t_unordered;                // pairs · C(k, t)
  Rational k2t_claimed_ordered;            // q(q−1)³/k² · C(k, t)
  Rational c4_over_n2;
  Rational limit;                        // k(k−1)/4
};

inline MorsPrediction predicted_stats(std::uint64_t q, std::uint64_t k, std::optional<unsigned> t = std::nullopt) {
  detail::validate_mors({q, k, 0, std::nullopt});
  MorsPrediction p;
  p.q = q;
  p.k = k;
  p.n = q * (q - 1) / k;
  p.m = q * (q - 1) * (q - 1) / k;
  p.degree = q - 1;
  p.codegrees = k == 0 ? std::vector<std::uint64_t>{0} : std::vector<std::uint64_t>{0, k};
  p.zero_partners = (q - 1) / k;
  const Integer cube = Integer(q) * (q - 1) * (q - 1) * (q - 1);
  p.c4 = Rational(cube) * Rational(k - 1, k) / 4;
  p.codegree_k_pairs = Rational(cube, Integer(2) * k * k);
  p.t = t;
  if (t) {
    const Integer ck = trunc_binom(Integer(k), *t);
    p.k2t_unordered = p.codegree_k_pairs * Rational(ck);
    p.k2t_claimed_ordered = Rational(cube, Integer(k) * k) * Rational(ck);
  }
  p.c4_over_n2 = p.c4 / Rational(Integer(p.n) * p.n);
  p.limit = Rational(Integer(k) * (k - 1), 4);
  return p;
}

struct MorsCheck {
  std::string name;
  std::string expected;
  std::string measured;
  bool pass = false;
};

struct MorsReport {
  MorsParams params;
  std::uint64_t n = 0, m = 0;
  std::map<std::size_t, std::uint64_t> codegree_histogram_v1;
  std::uint64_t c4 = 0;
  std::map<unsigned, std::uint64_t> k2t_v1;  // t -> unordered count, t = 2..k+1
  std::map<unsigned, std::uint64_t> k2t_v2;
  std::vector<MorsCheck> checks;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  const MorsCheck* first_failure() const {
    for (const auto& c : checks)
      if (!c.pass) return &c;
    return nullptr;
  }
};

/// Builds the graph and compares every measured quantity with the
/// closed-form predictions.
inline MorsReport verify_mors(const MorsParams& params, unsigned threads = 1) {
  const auto graph = build_mors(params, threads);
  const auto pred = predicted_stats(params.q, params.k);
  MorsReport r;
  r.params = params;
  r.n = graph.n_x();
  r.m = graph.edge_count();
  r.codegree_histogram_v1 = codegree_histogram(graph, Side::X, threads);
  r.c4 = count_c4(graph, Side::X, threads);
  for (unsigned t = 2; t <= params.k + 1; ++t) {
    r.k2t_v1[t] = count_k2t(graph, t, Side::X, threads);
    r.k2t_v2[t] = count_k2t(graph, t, Side::Y, threads);
  }

  auto add = [&r](std::string name, const std::string& expected, const std::string& measured) {
    r.checks.push_back({std::move(name), expected, measured, expected == measured});
  };
  add("vertices", std::to_string(pred.n), std::to_string(r.n));
  add("edges", std::to_string(pred.m), std::to_string(r.m));
  const auto reg = is_regular(graph);
  add("regular", std::to_string(pred.degree), reg ? std::to_string(*reg) : "irregular");

  std::string codeg;
  for (const auto& [c, count] : r.codegree_histogram_v1) codeg += (codeg.empty() ? "" : ",") + std::to_string(c);
  add("codegree_values", params.k == 1 ? "0,1" : "0," + std::to_string(params.k), codeg);

  // Zero-codegree partners of each V1 vertex.
  std::size_t lo = SIZE_MAX, hi = 0;
  for (std::size_t u = 0; u < r.n; ++u) {
    std::size_t zeros = 0;
    for (std::size_t v = 0; v < r.n; ++v)
      if (u != v && codegree(graph, u, v, Side::X) == 0) ++zeros;
    lo = std::min(lo, zeros);
    hi = std::max(hi, zeros);
  }
  add("zero_codegree_partners", std::to_string(pred.zero_partners),
      lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi));
  add("c4", to_fraction_string(pred.c4), to_fraction_string(Rational(r.c4)));
  for (unsigned t = 2; t <= params.k + 1; ++t) {
    const auto pt = predicted_stats(params.q, params.k, t);
    add("k2t_unordered_t" + std::to_string(t), to_fraction_string(pt.k2t_unordered),
        to_fraction_string(Rational(r.k2t_v1[t])));
  }
  return r;
}

}  // namespace supersat
