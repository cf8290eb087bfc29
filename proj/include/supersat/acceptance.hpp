#pragma once

// The acceptance suite as a library: one runner per criterion, each producing
// a pass flag, the list of failed checks and a deterministic transcript of
// every measured value. The manifest holds a CRC-32 of each transcript, so two
// runs agree byte for byte exactly when they measured the same things.

#include <boost/crc.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "supersat/bipartite_graph.hpp"
#include "supersat/bounds.hpp"
#include "supersat/difference_sets.hpp"
#include "supersat/group.hpp"
#include "supersat/mors.hpp"
#include "supersat/oracle.hpp"

namespace supersat {

inline constexpr const char* kToolVersion = "0.1.0";

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = true;
  std::vector<std::string> failures;
  std::string transcript;
  double seconds = 0;
};

inline std::uint32_t crc32(const std::string& text) {
  boost::crc_32_type crc;
  crc.process_bytes(text.data(), text.size());
  return crc.checksum();
}

namespace detail {

class Recorder {
 public:
  explicit Recorder(CriterionResult& r) : r_(r) {}

  template <class A, class B>
  void expect_eq(const std::string& what, const A& expected, const B& measured) {
    std::ostringstream e, m;
    e << expected;
    m << measured;
    check(what, e.str() == m.str(), "expected " + e.str() + ", measured " + m.str());
  }

  void check(const std::string& what, bool ok, const std::string& detail = "") {
    out_ << what << ": " << (ok ? "ok" : "FAIL") << (detail.empty() ? "" : " (" + detail + ")") << "\n";
    if (!ok) {
      r_.pass = false;
      r_.failures.push_back(what + (detail.empty() ? "" : ": " + detail));
    }
  }

  void note(const std::string& line) { out_ << line << "\n"; }
  std::string str() const { return out_.str(); }

 private:
  CriterionResult& r_;
  std::ostringstream out_;
};

inline std::string join(const std::vector<std::size_t>& v) { return format_residue_list(v); }

inline std::string histogram_string(const std::map<std::size_t, std::uint64_t>& h) {
  std::string s;
  for (const auto& [k, v] : h) s += (s.empty() ? "" : ",") + std::to_string(k) + ":" + std::to_string(v);
  return "{" + s + "}";
}

/// Independent reference for improved_lower_bound(n, m, 2, 2): distribute units
/// greedily to the cheapest bin (optimal for convex costs), twice.
inline Integer reference_improved_c4(std::uint64_t n, std::uint64_t m) {
  auto spread = [](const Integer& units, const Integer& bins) -> Integer {
    // cheapest way to place `units` into `bins` bins with cost C(x,2) each
    const Integer base = units / bins, extra = units % bins;
    auto c2 = [](const Integer& x) -> Integer { return x * (x - 1) / 2; };
    return (bins - extra) * c2(base) + extra * c2(base + 1);
  };
  const Integer t = spread(Integer(m), Integer(n));
  return spread(t, Integer(n) * (n - 1) / 2);
}

inline BipartiteGraph completed_development(const CyclicSubset& d, std::size_t g) { return development(d.with(g)); }

}  // namespace detail

// --- criteria ---------------------------------------------------------------

inline void criterion_singer(detail::Recorder& rec, unsigned threads) {
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 11, 13}) {
    const auto d = singer_difference_set(q);
    const auto g = development(d);
    const auto [n, z] = zarankiewicz_plane(q);
    const std::string tag = "q=" + std::to_string(q);
    rec.note(tag + " D=" + detail::join(d.elements()));
    rec.check(tag + " planar", is_planar(d));
    rec.expect_eq(tag + " vertices", n, g.n_x());
    rec.expect_eq(tag + " edges", n * (q + 1), g.edge_count());
    const auto reg = is_regular(g);
    rec.expect_eq(tag + " regular degree", q + 1, reg ? std::to_string(*reg) : "irregular");
    rec.expect_eq(tag + " codegrees", "{1:" + std::to_string(n * (n - 1) / 2) + "}",
                  detail::histogram_string(codegree_histogram(g, Side::X, threads)));
    rec.expect_eq(tag + " c4", 0, count_c4(g, Side::X, threads));
    rec.expect_eq(tag + " zarankiewicz edges", z, g.edge_count());
  }
}

inline void criterion_completion(detail::Recorder& rec, unsigned threads) {
  for (std::uint64_t q : {2, 3, 4, 5, 7}) {
    const auto d = singer_difference_set(q);
    const auto comps = completion_elements(d);
    const std::string tag = "q=" + std::to_string(q);
    rec.note(tag + " D=" + detail::join(d.elements()) + " completions=" + detail::join(comps));
    rec.expect_eq(tag + " completion count", choose(q, 2), comps.size());
    const std::uint64_t n = d.modulus(), m = n * (q + 2);
    for (auto g : comps) {
      const auto profile = difference_counts(d.with(g));
      bool in12 = true;
      for (std::size_t x = 1; x < n; ++x) in12 &= profile.counts[x] == 1 || profile.counts[x] == 2;
      rec.check(tag + " g=" + std::to_string(g) + " counts in {1,2}", in12);
      const auto dev = detail::completed_development(d, g);
      rec.expect_eq(tag + " g=" + std::to_string(g) + " edges", m, dev.edge_count());
      rec.expect_eq(tag + " g=" + std::to_string(g) + " c4", improved_lower_bound(n, m, 2, 2),
                    count_c4(dev, Side::X, threads));
    }
    if (q == 2 && !comps.empty())
      rec.expect_eq("q=2 completed c4 at m=28", 21, count_c4(detail::completed_development(d, comps[0]), Side::X, threads));
  }
  rec.expect_eq("q=3 D={0,1,3,9} completions", "4,10,12", detail::join(completion_elements(CyclicSubset(13, {0, 1, 3, 9}))));
}

inline void criterion_geometry(detail::Recorder& rec, unsigned) {
  for (std::uint64_t q : {2, 3, 4, 5, 7}) {
    const auto rep = non_completion_structure(singer_difference_set(q));
    const std::string tag = "q=" + std::to_string(q);
    std::string blocks;
    for (const auto& b : rep.blocks) blocks += "[" + detail::join(b) + "]";
    rec.note(tag + " blocks=" + blocks);
    rec.check(tag + " blocks cover the non-completions", rep.partitions_complement);
    if (q % 2 == 0) {
      rec.check(tag + " blocks are translates of D", rep.blocks_are_lines);
      rec.check(tag + " dual hyperoval", rep.dual_hyperoval);
    } else {
      rec.expect_eq(tag + " block count", q + 1, rep.blocks.size());
      rec.check(tag + " blocks are (q+1)-arcs", rep.blocks_are_arcs);
      rec.check(tag + " pairwise single intersection", rep.pairwise_single_intersection);
      rec.check(tag + " no triple point", rep.no_triple_point);
    }
  }
}

inline void criterion_mors(detail::Recorder& rec, unsigned threads) {
  const std::pair<std::uint64_t, std::uint64_t> cases[] = {{5, 2},  {7, 2},  {7, 3},  {7, 6},  {13, 2},
                                                           {13, 3}, {13, 4}, {13, 6}, {13, 12}, {17, 4}};
  for (const auto& [q, k] : cases)
    for (std::int64_t delta : {0, 1}) {
      const auto rep = verify_mors({q, k, delta, std::nullopt}, threads);
      const std::string tag = "(q,k,delta)=(" + std::to_string(q) + "," + std::to_string(k) + "," + std::to_string(delta) + ")";
      rec.note(tag + " codegrees=" + detail::histogram_string(rep.codegree_histogram_v1) + " c4=" + std::to_string(rep.c4));
      for (const auto& c : rep.checks) rec.expect_eq(tag + " " + c.name, c.expected, c.measured);
    }
  const auto rep = verify_mors({13, 4, 0, std::nullopt}, threads);
  const auto pred = predicted_stats(13, 4);
  const Rational ratio = Rational(Integer(rep.c4)) / Rational(Integer(rep.n) * rep.n);
  rec.expect_eq("(13,4) c4/n^2", "36/13", to_fraction_string(ratio));
  rec.expect_eq("(13,4) limit", "3/1", to_fraction_string(pred.limit));
  rec.expect_eq("(13,4) ratio deficit", "12/13", to_fraction_string(ratio / pred.limit));
}

inline void criterion_bounds(detail::Recorder& rec, unsigned) {
  for (std::uint64_t m = 21; m <= 28; ++m)
    rec.expect_eq("improved(7," + std::to_string(m) + ")", detail::reference_improved_c4(7, m), improved_lower_bound(7, m, 2, 2));
  std::string pattern;
  for (std::uint64_t m = 21; m <= 28; ++m) pattern += (pattern.empty() ? "" : ",") + improved_lower_bound(7, m, 2, 2).str();
  rec.expect_eq("improved(7, 21..28)", "0,3,6,9,12,15,18,21", pattern);
  const auto reg = c4_regime(7, 28);
  rec.expect_eq("c4_regime(7,28) polynomial", "21/1", reg.poly_bound ? to_fraction_string(*reg.poly_bound) : "none");

  // 500 grid points (n, m) with n in [2,50], m in [0, n²], fixed stride.
  std::size_t dominated = 0, monotone = 0;
  std::string worst;
  for (std::uint64_t i = 0; i < 500; ++i) {
    const std::uint64_t n = 2 + (i * 37) % 49;
    const std::uint64_t m = (i * 7919 + 13) % (n * n + 1);
    const auto imp = improved_lower_bound(n, m, 2, 2);
    if (imp >= ceil_rational(plain_lower_bound(n, m, 2, 2)))
      ++dominated;
    else if (worst.empty())
      worst = "improved < ceil(plain) at n=" + std::to_string(n) + " m=" + std::to_string(m);
    if (m == n * n || improved_lower_bound(n, m + 1, 2, 2) >= imp)
      ++monotone;
    else if (worst.empty())
      worst = "decrease at n=" + std::to_string(n) + " m=" + std::to_string(m);
  }
  rec.check("grid improved >= ceil(plain) (500 points)", dominated == 500, worst);
  rec.check("grid improved nondecreasing in m (500 points)", monotone == 500, worst);
}

inline void criterion_equality(detail::Recorder& rec, unsigned threads) {
  const std::pair<std::size_t, std::vector<std::size_t>> designs[] = {
      {7, {1, 2, 4}}, {7, {0, 1, 2, 4}}, {11, {1, 3, 4, 5, 9}}, {13, {0, 1, 3, 9}}, {15, {0, 1, 2, 4, 5, 8, 10}}, {21, {}}};
  for (const auto& [n, elems] : designs) {
    const auto d = elems.empty() ? singer_difference_set(4) : CyclicSubset(n, elems);
    const auto g = development(d);
    const std::string tag = "design " + std::to_string(n) + ":{" + detail::join(d.elements()) + "}";
    rec.check(tag + " difference set", classify_difference_structure(d).kind == DifferenceKind::difference_set);
    const auto eq = equality_conditions(g, false);
    rec.check(tag + " plain equality conditions", eq.pass(), eq.witness);
    const auto plain = plain_lower_bound(n, g.edge_count(), 2, 2);
    const bool divisible = boost::multiprecision::denominator(plain) == 1;
    rec.check(tag + " plain bound integral", divisible);
    if (divisible) rec.expect_eq(tag + " c4 = plain", to_fraction_string(plain), to_fraction_string(Rational(count_c4(g, Side::X, threads))));
  }
  for (std::uint64_t q : {2, 3, 4}) {
    const auto d = singer_difference_set(q);
    for (auto gext : completion_elements(d)) {
      const auto g = detail::completed_development(d, gext);
      const std::string tag = "adesign q=" + std::to_string(q) + " g=" + std::to_string(gext);
      const auto eq = equality_conditions(g, true);
      rec.check(tag + " improved equality conditions", eq.pass(), eq.witness);
      rec.expect_eq(tag + " c4 = improved", improved_lower_bound(g.n_x(), g.edge_count(), 2, 2), count_c4(g, Side::X, threads));
    }
  }
}

inline void criterion_group(detail::Recorder& rec, unsigned threads) {
  std::uint64_t subsets = 0, agree = 0;
  std::string first_bad;
  for (std::size_t n = 1; n <= 15; n += 2) {
    const AbelianGroup g({n});
    for (std::size_t k = 1; k <= std::min<std::size_t>(5, n); ++k) {
      std::vector<std::size_t> a(k);
      for (std::size_t i = 0; i < k; ++i) a[i] = i;
      while (true) {
        ++subsets;
        const auto direct = count_c4(build_cayley_bipartite(g, a), Side::X, threads);
        if (c4_formula_odd(g, a) == direct)
          ++agree;
        else if (first_bad.empty())
          first_bad = "n=" + std::to_string(n) + " A=" + detail::join(a);
        std::size_t i = k;
        while (i > 0 && a[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++a[i - 1];
        for (std::size_t j = i; j < k; ++j) a[j] = a[j - 1] + 1;
      }
    }
  }
  rec.note("subsets checked: " + std::to_string(subsets));
  rec.check("c4 formula = direct count (odd n <= 15, |A| <= 5)", agree == subsets, first_bad);
  rec.expect_eq("psi2 {1,2,4} mod 7", "0/1", to_fraction_string(psi2(AbelianGroup({7}), {1, 2, 4})));
  rec.expect_eq("psi2 {0,1,3,9} mod 13", "0/1", to_fraction_string(psi2(AbelianGroup({13}), {0, 1, 3, 9})));
  const AbelianGroup z5({5});
  const std::vector<std::size_t> a{0, 1, 2};
  rec.expect_eq("Z5 {0,1,2} h1", 6, h_t(z5, a, 1));
  rec.expect_eq("Z5 {0,1,2} h2", 10, h_t(z5, a, 2));
  rec.expect_eq("Z5 {0,1,2} c4 formula", 5, c4_formula_odd(z5, a));
  rec.expect_eq("Z5 {0,1,2} c4 direct", 5, count_c4(build_cayley_bipartite(z5, a)));
  rec.expect_eq("Z5 {0,1,2} psi2", "1/1", to_fraction_string(psi2(z5, a)));
}

inline void criterion_oracle(detail::Recorder& rec, unsigned threads) {
  OracleOptions opt;
  opt.threads = threads;
  const std::map<std::size_t, std::size_t> known_z{{2, 3}, {3, 6}, {4, 9}};
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto rows = bound_vs_oracle_table(n, opt);
    rec.note("table n=" + std::to_string(n) + "\n" + oracle_table_csv(rows));
    const auto z = zarankiewicz_from_table(rows);
    rec.expect_eq("n=" + std::to_string(n) + " z(n,n,2,2)", known_z.at(n), z ? std::to_string(*z) : "none");
    for (const auto& r : rows) {
      const std::string tag = "n=" + std::to_string(n) + " m=" + std::to_string(r.m);
      if (r.status != OracleStatus::exact) {
        rec.check(tag + " exact", false, "inconclusive");
        continue;
      }
      rec.check(tag + " oracle >= improved >= ceil(plain)", r.consistent());
      if (z && r.m <= *z) rec.check(tag + " oracle = improved", r.oracle && Integer(*r.oracle) == r.improved);
    }
  }
  const auto r37 = min_c4_exhaustive(3, 7, nullptr, opt);
  rec.expect_eq("min_c4_exhaustive(3,7)", 1, r37.minimum ? std::to_string(*r37.minimum) : to_string(r37.status));
  const auto p = check_prop34(8, opt);
  rec.note("prop34 e=8 min=" + (p.oracle.minimum ? std::to_string(*p.oracle.minimum) : std::string("none")) +
           " bound=" + p.bound.str() + " status=" + to_string(p.oracle.status));
  rec.check("prop34 e=8 exact", p.oracle.status == OracleStatus::exact);
  rec.check("prop34 e=8 min > improved bound", p.oracle.minimum && Integer(*p.oracle.minimum) > p.bound,
            "min " + (p.oracle.minimum ? std::to_string(*p.oracle.minimum) : std::string("none")) + " vs bound " + p.bound.str());
}

struct Criterion {
  int id;
  const char* name;
  double time_limit;  // seconds; 0 = none
  std::function<void(detail::Recorder&, unsigned)> run;
};

std::vector<CriterionResult> repro_all(const std::string& filter = "", unsigned threads = 1);

/// Canonical manifest text: one line per criterion, no timings.
inline std::string manifest_text(const std::vector<CriterionResult>& results) {
  std::ostringstream os;
  os << "tool_version " << kToolVersion << "\n";
  for (const auto& r : results)
    os << r.id << " " << r.name << " " << (r.pass ? "pass" : "fail") << " crc32=" << std::hex << std::setw(8)
       << std::setfill('0') << crc32(r.transcript) << std::dec << " bytes=" << r.transcript.size() << "\n";
  return os.str();
}

inline void criterion_determinism(detail::Recorder& rec, unsigned) {
  const auto a = manifest_text(repro_all("1-8", 1));
  const auto b = manifest_text(repro_all("1-8", 1));
  const auto c = manifest_text(repro_all("1-8", 8));
  rec.note(a);
  rec.check("repeat run manifests identical", a == b);
  rec.check("threads 1 vs 8 manifests identical", a == c);
}

inline const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "singer", 0, criterion_singer},         {2, "completion", 0, criterion_completion},
      {3, "geometry", 0, criterion_geometry},     {4, "mors", 30, criterion_mors},
      {5, "bounds", 0, criterion_bounds},         {6, "equality", 0, criterion_equality},
      {7, "group", 60, criterion_group},          {8, "oracle", 0, criterion_oracle},
      {9, "determinism", 0, criterion_determinism},
  };
  return all;
}

/// Filter: empty = all; "a-b" = id range; a number = that id; otherwise a
/// substring of the criterion name.
inline bool criterion_selected(const Criterion& c, const std::string& filter) {
  if (filter.empty()) return true;
  const auto dash = filter.find('-');
  if (dash != std::string::npos && dash > 0 && std::isdigit(static_cast<unsigned char>(filter[0]))) {
    const int lo = std::stoi(filter.substr(0, dash)), hi = std::stoi(filter.substr(dash + 1));
    return c.id >= lo && c.id <= hi;
  }
  if (std::all_of(filter.begin(), filter.end(), [](unsigned char ch) { return std::isdigit(ch); }))
    return c.id == std::stoi(filter);
  return std::string(c.name).find(filter) != std::string::npos;
}

inline std::vector<CriterionResult> repro_all(const std::string& filter, unsigned threads) {
  std::vector<CriterionResult> out;
  for (const auto& c : criteria()) {
    if (!criterion_selected(c, filter)) continue;
    CriterionResult r;
    r.id = c.id;
    r.name = c.name;
    const auto start = std::chrono::steady_clock::now();
    {
      detail::Recorder rec(r);
      try {
        c.run(rec, threads);
      } catch (const std::exception& e) {
        rec.check("no exception", false, e.what());
      }
      r.transcript = rec.str();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0 && r.seconds >= c.time_limit) {
      r.pass = false;
      r.failures.push_back("runtime " + std::to_string(r.seconds) + " s exceeds " + std::to_string(c.time_limit) + " s");
    }
    out.push_back(std::move(r));
  }
  return out;
}

/// "[PASS] 3 geometry" or "[FAIL] 4 mors: <first failure> (+N more)".
inline std::string summary_line(const CriterionResult& r) {
  std::string line = std::string(r.pass ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.name;
  if (!r.pass && !r.failures.empty()) {
    line += ": " + r.failures.front();
    if (r.failures.size() > 1) line += " (+" + std::to_string(r.failures.size() - 1) + " more)";
  }
  return line;
}

}  // namespace supersat
