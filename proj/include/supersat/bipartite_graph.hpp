#pragma once

// Bipartite graphs G ⊆ K_{n_X, n_Y} with dense bit-row adjacency, exact
// degree/codegree bookkeeping and K_{a,b} / K_{2,t} / C4 counting.

#include <array>
#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "supersat/parallel.hpp"

namespace supersat {

enum class Side { X, Y };

inline Side other(Side s) { return s == Side::X ? Side::Y : Side::X; }
inline const char* to_string(Side s) { return s == Side::X ? "X" : "Y"; }

/// C(n, k) as an exact 64-bit count; throws on overflow.
inline std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) throw std::overflow_error("choose: result exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("count exceeds 64 bits");
  return r;
}

struct Edge {
  std::size_t x = 0;
  std::size_t y = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class BipartiteGraph {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BipartiteGraph() = default;

  /// Duplicate or out-of-range edges are rejected.
  BipartiteGraph(std::size_t n_x, std::size_t n_y, std::span<const Edge> edges)
      : n_x_(n_x), n_y_(n_y), x_words_(words_for(n_y)), y_words_(words_for(n_x)) {
    rows_.assign(n_x_ * x_words_, 0);
    cols_.assign(n_y_ * y_words_, 0);
    for (const Edge& e : edges) {
      if (e.x >= n_x_ || e.y >= n_y_)
        throw std::out_of_range("BipartiteGraph: edge (" + std::to_string(e.x) + "," + std::to_string(e.y) +
                                ") outside " + std::to_string(n_x_) + "+" + std::to_string(n_y_));
      Word& w = rows_[e.x * x_words_ + e.y / kWordBits];
      const Word bit = Word{1} << (e.y % kWordBits);
      if (w & bit)
        throw std::invalid_argument("BipartiteGraph: duplicate edge (" + std::to_string(e.x) + "," +
                                    std::to_string(e.y) + ")");
      w |= bit;
      cols_[e.y * y_words_ + e.x / kWordBits] |= Word{1} << (e.x % kWordBits);
      ++m_;
    }
  }

  std::size_t size(Side s) const { return s == Side::X ? n_x_ : n_y_; }
  std::size_t n_x() const { return n_x_; }
  std::size_t n_y() const { return n_y_; }
  std::size_t edge_count() const { return m_; }

  bool has_edge(std::size_t x, std::size_t y) const {
    check_vertex(Side::X, x);
    check_vertex(Side::Y, y);
    return (rows_[x * x_words_ + y / kWordBits] >> (y % kWordBits)) & 1U;
  }

  /// Neighbourhood of v as a bit row over the opposite side.
  std::span<const Word> neighbours(Side s, std::size_t v) const {
    check_vertex(s, v);
    return s == Side::X ? std::span<const Word>(rows_).subspan(v * x_words_, x_words_)
                        : std::span<const Word>(cols_).subspan(v * y_words_, y_words_);
  }

  std::size_t degree(Side s, std::size_t v) const {
    std::size_t d = 0;
    for (Word w : neighbours(s, v)) d += static_cast<std::size_t>(std::popcount(w));
    return d;
  }

  /// Edges sorted lexicographically.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (std::size_t x = 0; x < n_x_; ++x)
      for (std::size_t wi = 0; wi < x_words_; ++wi)
        for (Word w = rows_[x * x_words_ + wi]; w != 0; w &= w - 1)
          out.push_back({x, wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w))});
    return out;
  }

  /// A new graph with the extra edges added.
  BipartiteGraph with_edges(std::span<const Edge> extra) const {
    auto all = edges();
    all.insert(all.end(), extra.begin(), extra.end());
    BipartiteGraph g(n_x_, n_y_, all);
    g.labels_ = labels_;
    return g;
  }

  /// Same graph with the roles of X and Y exchanged.
  BipartiteGraph transposed() const {
    auto es = edges();
    for (auto& e : es) std::swap(e.x, e.y);
    BipartiteGraph g(n_y_, n_x_, es);
    g.labels_[0] = labels_[1];
    g.labels_[1] = labels_[0];
    return g;
  }

  void set_labels(Side s, std::vector<std::string> labels) {
    if (!labels.empty() && labels.size() != size(s)) throw std::invalid_argument("set_labels: wrong label count");
    labels_[s == Side::X ? 0 : 1] = std::move(labels);
  }
  const std::vector<std::string>& labels(Side s) const { return labels_[s == Side::X ? 0 : 1]; }

  /// Equality of adjacency (labels are ignored).
  friend bool operator==(const BipartiteGraph& a, const BipartiteGraph& b) {
    return a.n_x_ == b.n_x_ && a.n_y_ == b.n_y_ && a.rows_ == b.rows_;
  }

 private:
  static std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

  void check_vertex(Side s, std::size_t v) const {
    if (v >= size(s))
      throw std::out_of_range(std::string("vertex ") + std::to_string(v) + " out of range on side " + to_string(s));
  }

  std::size_t n_x_ = 0, n_y_ = 0, m_ = 0;
  std::size_t x_words_ = 0, y_words_ = 0;
  std::vector<Word> rows_;  // n_x rows over Y
  std::vector<Word> cols_;  // n_y rows over X
  std::array<std::vector<std::string>, 2> labels_;
};

inline std::vector<std::size_t> degrees(const BipartiteGraph& g, Side s) {
  std::vector<std::size_t> out(g.size(s));
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = g.degree(s, v);
  return out;
}

inline std::size_t intersection_size(std::span<const BipartiteGraph::Word> a, std::span<const BipartiteGraph::Word> b) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return c;
}

/// |N(u) ∩ N(v)| for distinct u, v on the same side.
inline std::size_t codegree(const BipartiteGraph& g, std::size_t u, std::size_t v, Side s) {
  if (u == v) throw std::invalid_argument("codegree: vertices must be distinct");
  return intersection_size(g.neighbours(s, u), g.neighbours(s, v));
}

namespace detail {

/// Sums fn(codegree) over all unordered pairs on one side, row-partitioned.
template <class Fn>
std::uint64_t sum_over_pairs(const BipartiteGraph& g, Side s, unsigned threads, Fn fn) {
  const std::size_t n = g.size(s);
  auto partial = parallel_map(n, threads, [&](std::size_t u) {
    std::uint64_t acc = 0;
    const auto nu = g.neighbours(s, u);
    for (std::size_t v = u + 1; v < n; ++v) acc = checked_add(acc, fn(intersection_size(nu, g.neighbours(s, v))));
    return acc;
  });
  std::uint64_t total = 0;
  for (auto p : partial) total = checked_add(total, p);
  return total;
}

}  // namespace detail

/// Codegree value -> number of unordered pairs on side s with that codegree.
inline std::map<std::size_t, std::uint64_t> codegree_histogram(const BipartiteGraph& g, Side s, unsigned threads = 1) {
  const std::size_t n = g.size(s);
  auto rows = parallel_map(n, threads, [&](std::size_t u) {
    std::map<std::size_t, std::uint64_t> h;
    const auto nu = g.neighbours(s, u);
    for (std::size_t v = u + 1; v < n; ++v) ++h[intersection_size(nu, g.neighbours(s, v))];
    return h;
  });
  std::map<std::size_t, std::uint64_t> out;
  for (const auto& h : rows)
    for (const auto& [c, k] : h) out[c] += k;
  return out;
}

/// Copies of K_{2,t} whose 2-side lies in s: Σ_pairs C(codegree, t).
inline std::uint64_t count_k2t(const BipartiteGraph& g, std::size_t t, Side s = Side::X, unsigned threads = 1) {
  if (t < 2) throw std::invalid_argument("count_k2t: t must be >= 2");
  return detail::sum_over_pairs(g, s, threads, [t](std::size_t c) { return choose(c, t); });
}

/// Number of 4-cycles; equal whichever side the pairs are taken on.
inline std::uint64_t count_c4(const BipartiteGraph& g, Side s = Side::X, unsigned threads = 1) {
  return count_k2t(g, 2, s, threads);
}

/// Σ over a-subsets A of the a-side of C(d(A), b).
inline std::uint64_t count_kab(const BipartiteGraph& g, std::size_t a, std::size_t b, Side a_side = Side::X) {
  if (a == 0 || b == 0) throw std::invalid_argument("count_kab: a and b must be >= 1");
  const std::size_t n = g.size(a_side);
  if (a > n || b > g.size(other(a_side))) return 0;
  using Word = BipartiteGraph::Word;
  std::uint64_t total = 0;
  std::vector<std::vector<Word>> stack(a + 1);
  stack[0].assign(g.neighbours(a_side, 0).size(), ~Word{0});
  auto recurse = [&](auto&& self, std::size_t depth, std::size_t start) -> void {
    if (depth == a) {
      std::size_t c = 0;
      for (Word w : stack[depth]) c += static_cast<std::size_t>(std::popcount(w));
      total = checked_add(total, choose(c, b));
      return;
    }
    for (std::size_t v = start; v + (a - depth) <= n; ++v) {
      const auto nv = g.neighbours(a_side, v);
      auto& cur = stack[depth + 1];
      cur.resize(nv.size());
      bool any = false;
      for (std::size_t i = 0; i < nv.size(); ++i) any |= (cur[i] = stack[depth][i] & nv[i]) != 0;
      if (!any) continue;  // every superset has codegree 0
      self(self, depth + 1, v + 1);
    }
  };
  recurse(recurse, 0, 0);
  return total;
}

/// The common degree if every vertex on both sides has it.
inline std::optional<std::size_t> is_regular(const BipartiteGraph& g) {
  std::optional<std::size_t> d;
  for (Side s : {Side::X, Side::Y})
    for (std::size_t v = 0; v < g.size(s); ++v) {
      const auto dv = g.degree(s, v);
      if (d && *d != dv) return std::nullopt;
      d = dv;
    }
  return d;
}

// ---------------------------------------------------------------------------
// Text format: "n_X n_Y m", then m lines "x y" (0-based, sorted on save);
// lines starting with '#' are comments.

class GraphFormatError : public std::runtime_error {
 public:
  GraphFormatError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

inline void write_graph(std::ostream& os, const BipartiteGraph& g) {
  os << g.n_x() << ' ' << g.n_y() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) os << e.x << ' ' << e.y << '\n';
}

inline std::string graph_to_string(const BipartiteGraph& g) {
  std::ostringstream os;
  write_graph(os, g);
  return os.str();
}

inline BipartiteGraph read_graph(std::istream& is) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> n_x, n_y, m;
  std::vector<Edge> edges;
  std::set<Edge> seen;
  auto parse = [&](const std::string& text, std::size_t expected) {
    std::istringstream ls(text);
    std::vector<long long> vals;
    long long v;
    while (ls >> v) vals.push_back(v);
    if (!ls.eof() || vals.size() != expected)
      throw GraphFormatError(line_no, "expected " + std::to_string(expected) + " integers, got '" + text + "'");
    for (auto x : vals)
      if (x < 0) throw GraphFormatError(line_no, "negative value");
    return vals;
  };
  while (std::getline(is, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (!n_x) {
      auto h = parse(line, 3);
      n_x = static_cast<std::size_t>(h[0]);
      n_y = static_cast<std::size_t>(h[1]);
      m = static_cast<std::size_t>(h[2]);
      continue;
    }
    auto e = parse(line, 2);
    Edge edge{static_cast<std::size_t>(e[0]), static_cast<std::size_t>(e[1])};
    if (edge.x >= *n_x || edge.y >= *n_y) throw GraphFormatError(line_no, "edge index out of range");
    if (edges.size() == *m) throw GraphFormatError(line_no, "more edges than the header declares");
    if (!seen.insert(edge).second) throw GraphFormatError(line_no, "duplicate edge");
    edges.push_back(edge);
  }
  if (!n_x) throw GraphFormatError(line_no, "missing header");
  if (edges.size() != *m)
    throw GraphFormatError(line_no, "header declares " + std::to_string(*m) + " edges, found " +
                                        std::to_string(edges.size()));
  return BipartiteGraph(*n_x, *n_y, edges);
}

inline void save_graph(const std::string& path, const BipartiteGraph& g) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  write_graph(os, g);
}

inline BipartiteGraph load_graph(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  return read_graph(is);
}

}  // namespace supersat
