#pragma once

// Lower bounds on K_{a,b} counts in m-edge subgraphs of K_{n,n}: the Jensen
// bound over truncated binomials, its discrete refinement, the explicit C4
// polynomial with regime tagging, and equality-condition checks on graphs.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "supersat/bipartite_graph.hpp"
#include "supersat/finite_field.hpp"

namespace supersat {

// Expression templates off: `auto` results are always values, never views.
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

/// "p/q", always with an explicit denominator.
inline std::string to_fraction_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

/// Fixed-point rendering with `digits` decimals, rounded toward zero.
inline std::string to_decimal_string(const Rational& r, unsigned digits = 6) {
  Integer scale = 1;
  for (unsigned i = 0; i < digits; ++i) scale *= 10;
  const Integer num = boost::multiprecision::numerator(r), den = boost::multiprecision::denominator(r);
  const bool negative = num < 0;
  const Integer scaled = (negative ? Integer(-num) : num) * scale / den;
  std::string whole = Integer(scaled / scale).str();
  std::string frac = Integer(scaled % scale).str();
  frac.insert(0, digits - frac.size(), '0');
  return (negative && scaled != 0 ? "-" : "") + whole + (digits ? "." + frac : "");
}

inline Integer ceil_rational(const Rational& r) {
  const Integer num = boost::multiprecision::numerator(r), den = boost::multiprecision::denominator(r);
  Integer q = num / den;  // truncates toward zero
  if (num > 0 && q * den != num) ++q;
  return q;
}

/// C(x, k) = ∏_{i<k}(x − i)/k! for x ≥ k − 1, else 0. Convex and
/// nondecreasing in x; agrees with the usual binomial on integers.
template <class T>
T trunc_binom(const T& x, unsigned k) {
  if (x < T(static_cast<long>(k) - 1)) return T(0);
  T num(1), den(1);
  for (unsigned i = 0; i < k; ++i) {
    num *= x - T(i);
    den *= T(i + 1);
  }
  return num / den;
}

/// The truncated binomial as a function object with its lower index.
struct TruncatedBinomial {
  unsigned k = 2;
  Integer operator()(const Integer& x) const { return trunc_binom(x, k); }
  Rational operator()(const Rational& x) const { return trunc_binom(x, k); }
};

/// C(n, a) · C(n · C(m/n, a) / C(n, a), b) in exact rationals.
inline Rational plain_lower_bound(std::uint64_t n, std::uint64_t m, unsigned a, unsigned b) {
  if (n == 0 || a == 0 || b == 0 || a > n) throw std::invalid_argument("plain_lower_bound: need n >= a >= 1, b >= 1");
  if (m > n * n) throw std::invalid_argument("plain_lower_bound: m exceeds n^2");
  const Rational subsets = trunc_binom(Rational(n), a);
  const Rational inner = Rational(n) * trunc_binom(Rational(m, n), a) / subsets;
  return subsets * trunc_binom(inner, b);
}

/// α f(⌊S/N⌋) + β f(⌈S/N⌉) with α + β = N and α⌊S/N⌋ + β⌈S/N⌉ = S.
inline Integer discrete_jensen(const Integer& sum, const Integer& count, const TruncatedBinomial& f) {
  if (count < 1 || sum < 0) throw std::invalid_argument("discrete_jensen: need N >= 1, S >= 0");
  const Integer lo = sum / count;
  const Integer beta = sum - lo * count;  // how many take the ceiling
  const Integer alpha = count - beta;
  return alpha * f(lo) + (beta == 0 ? Integer(0) : beta * f(Integer(lo + 1)));
}

/// Two-stage discrete Jensen: degrees bound Σ_y C(d(y), a) from below by T,
/// then T spread over the C(n, a) a-subsets bounds Σ_A C(d(A), b).
inline Integer improved_lower_bound(std::uint64_t n, std::uint64_t m, unsigned a, unsigned b) {
  if (n == 0 || a == 0 || b == 0 || a > n) throw std::invalid_argument("improved_lower_bound: need n >= a >= 1, b >= 1");
  if (m > n * n) throw std::invalid_argument("improved_lower_bound: m exceeds n^2");
  const Integer t = discrete_jensen(Integer(m), Integer(n), TruncatedBinomial{a});
  const Integer subsets = trunc_binom(Integer(n), a);
  return discrete_jensen(t, subsets, TruncatedBinomial{b});
}

/// Explicit C4 bound m(m−n)(m(m−n) − n²(n−1)) / (4n³(n−1)), clamped to 0
/// whenever m(m−n) ≤ n²(n−1) (there the inner truncated binomial vanishes).
inline Rational c4_polynomial_bound(std::uint64_t n, std::uint64_t m) {
  if (n < 2) throw std::invalid_argument("c4_polynomial_bound: need n >= 2");
  const Integer mm = Integer(m) * (Integer(m) - Integer(n));
  const Integer threshold = Integer(n) * n * (n - 1);
  if (mm <= threshold) return Rational(0);
  return Rational(mm * (mm - threshold), Integer(4) * n * n * n * (n - 1));
}

struct BoundReport {
  std::uint64_t n = 0, m = 0;
  unsigned a = 2, b = 2;
  Rational average_degree;
  Rational plain;
  Integer improved;
  // C4 specialisation (a = b = 2 only)
  std::optional<Rational> poly_bound;
  double xi = 0;             // m − n(√n + 1/2)
  double excess_ratio = 0;   // C = ξ / (n√n)
  std::string regime;        // "below-threshold", "(i)", "(ii)", "(iii)", "(iv)"
  double asymptote_iv = 0;   // (m/n)^4 / 4
};

/// Regime tag for finite n: ξ < 0 below threshold; (i) ξ ≤ √n; then by
/// C = ξ/(n√n): (iv) if C > 10, (iii) if C ≥ 1/log n, otherwise (ii).
inline std::string c4_regime_tag(std::uint64_t n, double xi) {
  const double rn = std::sqrt(static_cast<double>(n));
  if (xi < 0) return "below-threshold";
  if (xi <= rn) return "(i)";
  const double c = xi / (static_cast<double>(n) * rn);
  if (c > 10) return "(iv)";
  if (c >= 1.0 / std::log(static_cast<double>(n))) return "(iii)";
  return "(ii)";
}

inline BoundReport bound_report(std::uint64_t n, std::uint64_t m, unsigned a = 2, unsigned b = 2) {
  BoundReport r;
  r.n = n;
  r.m = m;
  r.a = a;
  r.b = b;
  r.average_degree = Rational(m, n == 0 ? 1 : n);
  r.plain = plain_lower_bound(n, m, a, b);
  r.improved = improved_lower_bound(n, m, a, b);
  if (a == 2 && b == 2 && n >= 2) {
    r.poly_bound = c4_polynomial_bound(n, m);
    const double dn = static_cast<double>(n), dm = static_cast<double>(m);
    r.xi = dm - dn * (std::sqrt(dn) + 0.5);
    r.excess_ratio = r.xi / (dn * std::sqrt(dn));
    r.regime = c4_regime_tag(n, r.xi);
    r.asymptote_iv = std::pow(dm / dn, 4) / 4;
  }
  return r;
}

inline BoundReport c4_regime(std::uint64_t n, std::uint64_t m) {
  if (n < 2) throw std::invalid_argument("c4_regime: need n >= 2");
  return bound_report(n, m, 2, 2);
}

struct EqualityReport {
  bool improved_mode = false;
  bool degrees_ok = false;
  bool codegrees_ok = false;
  std::size_t min_degree = 0, max_degree = 0;
  std::size_t min_codegree = 0, max_codegree = 0;
  std::string witness;  // describes a violating pair when a check fails

  bool pass() const { return degrees_ok && codegrees_ok; }
};

/// Plain mode: regular and all X-pair codegrees equal. Improved mode:
/// degrees within 1 and X-pair codegrees within 1.
inline EqualityReport equality_conditions(const BipartiteGraph& g, bool improved) {
  EqualityReport r;
  r.improved_mode = improved;
  const std::size_t slack = improved ? 1 : 0;

  bool first = true;
  std::pair<std::string, std::size_t> lo_v, hi_v;
  for (Side s : {Side::X, Side::Y})
    for (std::size_t v = 0; v < g.size(s); ++v) {
      const auto d = g.degree(s, v);
      const std::string name = std::string(to_string(s)) + std::to_string(v);
      if (first || d < r.min_degree) {
        r.min_degree = d;
        lo_v = {name, d};
      }
      if (first || d > r.max_degree) {
        r.max_degree = d;
        hi_v = {name, d};
      }
      first = false;
    }
  r.degrees_ok = r.max_degree - r.min_degree <= slack;
  if (!r.degrees_ok)
    r.witness = "degrees " + lo_v.first + "=" + std::to_string(lo_v.second) + " vs " + hi_v.first + "=" +
                std::to_string(hi_v.second);

  first = true;
  std::string lo_p, hi_p;
  for (std::size_t u = 0; u < g.n_x(); ++u)
    for (std::size_t v = u + 1; v < g.n_x(); ++v) {
      const auto c = codegree(g, u, v, Side::X);
      const std::string name = "{" + std::to_string(u) + "," + std::to_string(v) + "}";
      if (first || c < r.min_codegree) {
        r.min_codegree = c;
        lo_p = name;
      }
      if (first || c > r.max_codegree) {
        r.max_codegree = c;
        hi_p = name;
      }
      first = false;
    }
  r.codegrees_ok = r.max_codegree - r.min_codegree <= slack;
  if (!r.codegrees_ok && r.witness.empty())
    r.witness = "codegrees " + lo_p + "=" + std::to_string(r.min_codegree) + " vs " + hi_p + "=" +
                std::to_string(r.max_codegree);
  return r;
}

/// (n, z) = (q² + q + 1, n(q + 1)), the edge count of a plane's incidence graph.
inline std::pair<std::uint64_t, std::uint64_t> zarankiewicz_plane(std::uint64_t q) {
  if (!prime_power(q)) throw std::invalid_argument("zarankiewicz_plane: " + std::to_string(q) + " is not a prime power");
  const std::uint64_t n = q * q + q + 1;
  return {n, n * (q + 1)};
}

}  // namespace supersat
