#pragma once

// Subsets of Z_n and their difference multisets: Singer planar difference
// sets, (almost) difference set classification, one-element completions of
// planar sets, and the incidence structure of the elements that cannot
// complete them.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "supersat/bipartite_graph.hpp"
#include "supersat/finite_field.hpp"

namespace supersat {

/// A set D ⊆ Z_n, kept sorted.
class CyclicSubset {
 public:
  CyclicSubset(std::size_t n, std::vector<std::size_t> elements) : n_(n), elements_(std::move(elements)) {
    if (n_ == 0) throw std::invalid_argument("CyclicSubset: modulus must be positive");
    std::sort(elements_.begin(), elements_.end());
    if (std::adjacent_find(elements_.begin(), elements_.end()) != elements_.end())
      throw std::invalid_argument("CyclicSubset: duplicate element");
    if (!elements_.empty() && elements_.back() >= n_)
      throw std::invalid_argument("CyclicSubset: element " + std::to_string(elements_.back()) + " not in [0, " +
                                  std::to_string(n_) + ")");
  }

  std::size_t modulus() const { return n_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<std::size_t>& elements() const { return elements_; }
  bool contains(std::size_t x) const { return std::binary_search(elements_.begin(), elements_.end(), x % n_); }

  CyclicSubset with(std::size_t g) const {
    auto e = elements_;
    e.push_back(g % n_);
    return {n_, std::move(e)};
  }

  CyclicSubset translate(std::size_t g) const {
    std::vector<std::size_t> e;
    for (auto d : elements_) e.push_back((d + g) % n_);
    return {n_, std::move(e)};
  }

  friend bool operator==(const CyclicSubset&, const CyclicSubset&) = default;

 private:
  std::size_t n_;
  std::vector<std::size_t> elements_;
};

/// counts[g] = #{(d, d') ∈ D×D : d − d' = g}; counts[0] is left at 0.
struct DifferenceProfile {
  std::size_t n = 0;
  std::vector<std::uint64_t> counts;

  std::uint64_t total() const { return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}); }
};

inline DifferenceProfile difference_counts(const CyclicSubset& d) {
  DifferenceProfile p{d.modulus(), std::vector<std::uint64_t>(d.modulus(), 0)};
  for (auto a : d.elements())
    for (auto b : d.elements())
      if (a != b) ++p.counts[(a + d.modulus() - b) % d.modulus()];
  return p;
}

enum class DifferenceKind { difference_set, almost_difference_set, neither };

inline const char* to_string(DifferenceKind k) {
  switch (k) {
    case DifferenceKind::difference_set: return "difference_set";
    case DifferenceKind::almost_difference_set: return "almost_difference_set";
    default: return "neither";
  }
}

struct DifferenceStructure {
  DifferenceKind kind = DifferenceKind::neither;
  std::uint64_t lambda = 0;  // minimum nonzero-residue count
};

/// Strict classification: an almost difference set needs both λ and λ+1.
inline DifferenceStructure classify_difference_structure(const CyclicSubset& d) {
  const auto p = difference_counts(d);
  if (d.modulus() == 1) return {DifferenceKind::difference_set, 0};
  const auto [lo, hi] = std::minmax_element(p.counts.begin() + 1, p.counts.end());
  if (*lo == *hi) return {DifferenceKind::difference_set, *lo};
  if (*hi == *lo + 1) return {DifferenceKind::almost_difference_set, *lo};
  return {DifferenceKind::neither, *lo};
}

/// Relaxed mode accepts counts ⊆ {λ, λ+1} without requiring both values,
/// so genuine difference sets pass too.
inline bool is_almost_difference_set(const CyclicSubset& d, bool relaxed) {
  const auto s = classify_difference_structure(d);
  if (s.kind == DifferenceKind::almost_difference_set) return true;
  return relaxed && s.kind == DifferenceKind::difference_set;
}

inline bool is_planar(const CyclicSubset& d) {
  const auto s = classify_difference_structure(d);
  return s.kind == DifferenceKind::difference_set && s.lambda == 1 && d.modulus() > 1;
}

/// D = { i ∈ [0, q²+q+1) : θ^i ∈ span_GF(q)(1, θ) }, θ the canonical
/// primitive element of GF(q³).
inline CyclicSubset singer_difference_set(std::uint64_t q) {
  const auto base = make_field_of_order(q);
  const auto ext = cubic_extension(base);
  const std::size_t n = static_cast<std::size_t>(q * q + q + 1);
  const Code theta = ext.primitive_element();
  const Code spanning[] = {ext.one(), theta};
  std::vector<std::size_t> d;
  Code power = ext.one();
  for (std::size_t i = 0; i < n; ++i) {
    if (ext.in_span(spanning, power)) d.push_back(i);
    power = ext.mul(power, theta);
  }
  CyclicSubset out(n, std::move(d));
  if (out.size() != q + 1 || !is_planar(out))
    throw std::logic_error("singer_difference_set: construction is not planar for q=" + std::to_string(q));
  return out;
}

/// Incidence graph of the development: X = points of Z_n, Y = translates
/// D + g; point i ~ block g iff i − g ∈ D.
inline BipartiteGraph development(const CyclicSubset& d) {
  const std::size_t n = d.modulus();
  std::vector<Edge> edges;
  edges.reserve(n * d.size());
  for (std::size_t g = 0; g < n; ++g)
    for (auto e : d.elements()) edges.push_back({(e + g) % n, g});
  return BipartiteGraph(n, n, edges);
}

namespace detail {

inline std::size_t half_mod(std::size_t x, std::size_t n) {
  // 2^{-1} = (n + 1) / 2 for odd n
  return static_cast<std::size_t>((static_cast<unsigned __int128>(x) * ((n + 1) / 2)) % n);
}

inline void require_odd_planar(const CyclicSubset& d, const char* who) {
  if (d.modulus() % 2 == 0) throw std::domain_error(std::string(who) + ": modulus must be odd");
  if (!is_planar(d)) throw std::invalid_argument(std::string(who) + ": set is not a planar difference set");
}

}  // namespace detail

/// Elements g ∉ D for which D ∪ {g} keeps every difference count within
/// {λ, λ+1}, found by reclassifying each candidate.
inline std::vector<std::size_t> completions_by_reclassification(const CyclicSubset& d) {
  const auto base = classify_difference_structure(d);
  if (base.kind != DifferenceKind::difference_set)
    throw std::invalid_argument("completions_by_reclassification: set is not a difference set");
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < d.modulus(); ++g) {
    if (d.contains(g)) continue;
    const auto p = difference_counts(d.with(g));
    bool ok = true;
    for (std::size_t r = 1; r < d.modulus() && ok; ++r) ok = p.counts[r] <= base.lambda + 1;
    if (ok) out.push_back(g);
  }
  return out;
}

/// Completion elements of a planar D over odd n: g is excluded iff g ∈ D or
/// 2g = d + d' for distinct d, d' ∈ D. Cross-checked by reclassification.
inline std::vector<std::size_t> completion_elements(const CyclicSubset& d) {
  detail::require_odd_planar(d, "completion_elements");
  const std::size_t n = d.modulus();
  std::vector<bool> excluded(n, false);
  for (auto e : d.elements()) excluded[e] = true;
  const auto& el = d.elements();
  for (std::size_t i = 0; i < el.size(); ++i)
    for (std::size_t j = i + 1; j < el.size(); ++j) excluded[detail::half_mod(el[i] + el[j], n)] = true;
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < n; ++g)
    if (!excluded[g]) out.push_back(g);
  if (out != completions_by_reclassification(d))
    throw std::logic_error("completion_elements: exclusion rule disagrees with reclassification");
  return out;
}

/// Blocks d/2 + D/2 (d ∈ D) whose union is the set of non-completion
/// elements, with checks on their incidence structure.
struct NonCompletionReport {
  std::size_t q = 0;
  std::vector<std::vector<std::size_t>> blocks;  // each sorted, in order of d ∈ D
  std::vector<std::size_t> completions;
  bool partitions_complement = false;        // ∪ blocks = Z_n \ completions
  bool pairwise_single_intersection = false;
  bool no_triple_point = false;
  bool blocks_are_lines = false;             // every block is a translate of D
  std::vector<std::size_t> line_shifts;      // block = D + shift, when lines
  bool dual_hyperoval = false;               // D plus the blocks: q+2 lines, no 3 concurrent
  bool blocks_are_arcs = false;              // no 3 points of a block on one translate of D

  bool q_even() const { return q % 2 == 0; }
  bool pass() const {
    const bool common = partitions_complement && pairwise_single_intersection && no_triple_point;
    return common && (q_even() ? blocks_are_lines && dual_hyperoval : blocks_are_arcs);
  }
};

inline NonCompletionReport non_completion_structure(const CyclicSubset& d) {
  detail::require_odd_planar(d, "non_completion_structure");
  const std::size_t n = d.modulus();
  NonCompletionReport r;
  r.q = d.size() - 1;
  r.completions = completion_elements(d);

  for (auto e : d.elements()) {
    std::vector<std::size_t> block;
    for (auto f : d.elements()) block.push_back(detail::half_mod(e + f, n));
    std::sort(block.begin(), block.end());
    r.blocks.push_back(std::move(block));
  }

  std::vector<std::size_t> multiplicity(n, 0);
  for (const auto& b : r.blocks)
    for (auto x : b) ++multiplicity[x];
  std::vector<bool> is_completion(n, false);
  for (auto g : r.completions) is_completion[g] = true;
  r.partitions_complement = true;
  for (std::size_t x = 0; x < n; ++x) r.partitions_complement &= (multiplicity[x] > 0) != is_completion[x];
  r.no_triple_point = std::all_of(multiplicity.begin(), multiplicity.end(), [](auto m) { return m <= 2; });

  auto meet = [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    std::vector<std::size_t> c;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(c));
    return c.size();
  };
  r.pairwise_single_intersection = true;
  for (std::size_t i = 0; i < r.blocks.size(); ++i)
    for (std::size_t j = i + 1; j < r.blocks.size(); ++j)
      r.pairwise_single_intersection &= meet(r.blocks[i], r.blocks[j]) == 1;

  std::vector<std::vector<std::size_t>> lines;
  for (std::size_t g = 0; g < n; ++g) lines.push_back(d.translate(g).elements());

  r.blocks_are_lines = true;
  for (const auto& b : r.blocks) {
    const auto it = std::find(lines.begin(), lines.end(), b);
    if (it == lines.end()) {
      r.blocks_are_lines = false;
      r.line_shifts.clear();
      break;
    }
    r.line_shifts.push_back(static_cast<std::size_t>(it - lines.begin()));
  }
  if (r.blocks_are_lines) {
    std::vector<std::size_t> on(n, 0);
    for (auto x : d.elements()) ++on[x];
    for (const auto& b : r.blocks)
      for (auto x : b) ++on[x];
    auto shifts = r.line_shifts;
    shifts.push_back(0);
    std::sort(shifts.begin(), shifts.end());
    r.dual_hyperoval = std::adjacent_find(shifts.begin(), shifts.end()) == shifts.end() &&
                       std::all_of(on.begin(), on.end(), [](auto m) { return m <= 2; });
  }

  r.blocks_are_arcs = true;
  for (const auto& b : r.blocks)
    for (const auto& l : lines) r.blocks_are_arcs &= meet(b, l) <= 2;
  return r;
}

/// Elements g ∉ D with D ∪ {g} an almost difference set in the relaxed
/// sense; used to probe the λ = 2 completion claim on small cases.
inline std::vector<std::size_t> almost_completions(const CyclicSubset& d) {
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < d.modulus(); ++g)
    if (!d.contains(g) && is_almost_difference_set(d.with(g), true)) out.push_back(g);
  return out;
}

// One-line comma-separated residue lists, e.g. "0,1,3,9".

inline std::vector<std::size_t> parse_residue_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw std::invalid_argument("empty entry in residue list '" + text + "'");
    const auto last = item.find_last_not_of(" \t\r\n");
    const std::string tok = item.substr(first, last - first + 1);
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != tok.size() || v < 0) throw std::invalid_argument("bad residue '" + tok + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

inline std::string format_residue_list(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

inline CyclicSubset load_difference_set(const std::string& path, std::size_t n) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::string line;
  std::getline(is, line);
  return CyclicSubset(n, parse_residue_list(line));
}

inline void save_difference_set(const std::string& path, const CyclicSubset& d) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os << format_residue_list(d.elements()) << '\n';
}

}  // namespace supersat
