#pragma once

// Finite fields GF(p^h) and towers of extensions over them.
//
// Elements are handled as integer codes. For an extension of degree h over a
// base field of order B, the element c_0 + c_1 x + ... + c_{h-1} x^{h-1} has
// code  c_0 B^{h-1} + c_1 B^{h-2} + ... + c_{h-1},  so ascending codes walk the
// coefficient vectors lexicographically with the constant term most
// significant. Code 0 is always zero.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace supersat {

using Code = std::uint32_t;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Distinct prime factors in ascending order.
inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// Returns (p, h) with q = p^h, or nullopt if q is not a prime power.
inline std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  const auto factors = prime_factors(q);
  if (factors.size() != 1) return std::nullopt;
  std::uint32_t h = 0;
  while (q > 1) {
    q /= factors[0];
    ++h;
  }
  return std::make_pair(static_cast<std::uint32_t>(factors[0]), h);
}

template <class F>
concept FieldArithmetic = requires(const F& f, Code a, Code b) {
  { f.order() } -> std::convertible_to<std::uint64_t>;
  { f.characteristic() } -> std::convertible_to<std::uint32_t>;
  { f.zero() } -> std::same_as<Code>;
  { f.one() } -> std::same_as<Code>;
  { f.add(a, b) } -> std::same_as<Code>;
  { f.sub(a, b) } -> std::same_as<Code>;
  { f.neg(a) } -> std::same_as<Code>;
  { f.mul(a, b) } -> std::same_as<Code>;
  { f.inv(a) } -> std::same_as<Code>;
  { f == f } -> std::convertible_to<bool>;
};

class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (!is_prime(p)) throw std::invalid_argument("PrimeField: " + std::to_string(p) + " is not prime");
  }

  std::uint64_t order() const { return p_; }
  std::uint32_t characteristic() const { return p_; }
  Code zero() const { return 0; }
  Code one() const { return 1; }

  Code add(Code a, Code b) const { return static_cast<Code>((std::uint64_t{a} + b) % p_); }
  Code sub(Code a, Code b) const { return static_cast<Code>((std::uint64_t{a} + p_ - b) % p_); }
  Code neg(Code a) const { return a == 0 ? 0 : p_ - a; }
  Code mul(Code a, Code b) const { return static_cast<Code>((std::uint64_t{a} * b) % p_); }
  Code inv(Code a) const {
    if (a % p_ == 0) throw std::domain_error("PrimeField: inverse of zero");
    // Fermat: a^(p-2)
    std::uint64_t result = 1, base = a % p_, e = p_ - 2;
    while (e > 0) {
      if (e & 1U) result = result * base % p_;
      base = base * base % p_;
      e >>= 1U;
    }
    return static_cast<Code>(result);
  }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  std::uint32_t p_;
};

namespace detail {

// Polynomials over a base field: coefficient codes, lowest degree first, no
// trailing zeros (the zero polynomial is empty).
using Poly = std::vector<Code>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

template <FieldArithmetic Base>
Poly poly_mul(const Base& f, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
  }
  trim(out);
  return out;
}

/// Remainder of a modulo a monic polynomial m.
template <FieldArithmetic Base>
Poly poly_mod_monic(const Base& f, Poly a, const Poly& m) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const Code lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = f.sub(a[shift + i], f.mul(lead, m[i]));
    trim(a);
  }
  return a;
}

/// Monic polynomial of the given degree whose lower coefficients are the
/// base-B digits of `index`, with the x^{degree-1} coefficient most
/// significant. Index order is the canonical order on monic polynomials.
inline Poly monic_from_index(std::uint64_t index, std::uint64_t base_order, unsigned degree, Code one) {
  Poly p(degree + 1, 0);
  p[degree] = one;
  for (unsigned i = 0; i < degree; ++i) {
    p[i] = static_cast<Code>(index % base_order);
    index /= base_order;
  }
  return p;
}

inline std::uint64_t checked_pow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (r > (std::uint64_t{1} << 40) / b) throw std::length_error("field order too large");
    r *= b;
  }
  return r;
}

/// Trial division by every monic polynomial of degree 1..deg/2.
template <FieldArithmetic Base>
bool is_irreducible(const Base& f, const Poly& m) {
  const unsigned deg = static_cast<unsigned>(m.size() - 1);
  for (unsigned d = 1; d <= deg / 2; ++d) {
    const std::uint64_t count = checked_pow(f.order(), d);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      if (poly_mod_monic(f, m, monic_from_index(idx, f.order(), d, f.one())).empty()) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Field of order B^h represented as Base[x]/(modulus). Immutable; copies
/// share their tables.
template <FieldArithmetic Base>
class ExtensionField {
 public:
  /// Upper limit on the order; multiplication goes through log tables.
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 22;

  /// `modulus` is monic, lowest coefficient first, of degree >= 1.
  ExtensionField(Base base, std::vector<Code> modulus) {
    if (modulus.size() < 2 || modulus.back() != base.one())
      throw std::invalid_argument("ExtensionField: modulus must be monic of degree >= 1");
    for (Code c : modulus)
      if (c >= base.order()) throw std::invalid_argument("ExtensionField: modulus coefficient out of range");
    if (!detail::is_irreducible(base, modulus))
      throw std::invalid_argument("ExtensionField: modulus is reducible");
    auto s = std::make_shared<State>(std::move(base));
    s->modulus = std::move(modulus);
    s->degree = static_cast<unsigned>(s->modulus.size() - 1);
    s->order = detail::checked_pow(s->base.order(), s->degree);
    if (s->order > kMaxOrder) throw std::length_error("ExtensionField: order exceeds supported range");
    s->radix.assign(s->degree, 1);
    for (unsigned i = s->degree; i-- > 1;) s->radix[i - 1] = s->radix[i] * s->base.order();
    state_ = std::move(s);
    build_tables();
  }

  /// The lexicographically smallest irreducible monic modulus of `degree`.
  static ExtensionField smallest(Base base, unsigned degree) {
    if (degree == 0) throw std::invalid_argument("ExtensionField: degree must be >= 1");
    const std::uint64_t count = detail::checked_pow(base.order(), degree);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      auto m = detail::monic_from_index(idx, base.order(), degree, base.one());
      if (detail::is_irreducible(base, m)) return ExtensionField(std::move(base), std::move(m));
    }
    throw std::logic_error("ExtensionField: no irreducible polynomial found");
  }

  const Base& base() const { return state_->base; }
  unsigned degree() const { return state_->degree; }
  const std::vector<Code>& modulus() const { return state_->modulus; }
  std::uint64_t order() const { return state_->order; }
  std::uint32_t characteristic() const { return state_->base.characteristic(); }

  Code zero() const { return 0; }
  // the constant coefficient is the base field's one, not the code 1
  Code one() const { return static_cast<Code>(state_->base.one() * state_->radix[0]); }
  /// Image of a base-field element.
  Code embed(Code c) const { return static_cast<Code>(c * state_->radix[0]); }

  std::vector<Code> coefficients(Code a) const {
    std::vector<Code> c(state_->degree);
    for (unsigned i = state_->degree; i-- > 0;) {
      c[i] = static_cast<Code>(a % state_->base.order());
      a = static_cast<Code>(a / state_->base.order());
    }
    return c;
  }

  Code from_coefficients(std::span<const Code> c) const {
    if (c.size() > state_->degree) throw std::invalid_argument("from_coefficients: too many coefficients");
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] >= state_->base.order()) throw std::invalid_argument("from_coefficients: coefficient out of range");
      code += c[i] * state_->radix[i];
    }
    return static_cast<Code>(code);
  }

  Code add(Code a, Code b) const { return combine(a, b, [this](Code x, Code y) { return base().add(x, y); }); }
  Code sub(Code a, Code b) const { return combine(a, b, [this](Code x, Code y) { return base().sub(x, y); }); }
  Code neg(Code a) const { return sub(zero(), a); }

  Code mul(Code a, Code b) const {
    if (a == 0 || b == 0) return 0;
    const auto& s = *state_;
    return s.exp[(s.log[a] + s.log[b]) % (s.order - 1)];
  }

  Code inv(Code a) const {
    if (a == 0) throw std::domain_error("ExtensionField: inverse of zero");
    const auto& s = *state_;
    return s.exp[(s.order - 1 - s.log[a]) % (s.order - 1)];
  }

  Code div(Code a, Code b) const { return mul(a, inv(b)); }

  /// Any integer exponent; reduced mod (q - 1) for nonzero bases, 0^0 = 1.
  Code pow(Code a, std::int64_t e) const {
    if (a == 0) {
      if (e == 0) return one();
      if (e < 0) throw std::domain_error("ExtensionField: negative power of zero");
      return 0;
    }
    const auto& s = *state_;
    const auto n = static_cast<std::int64_t>(s.order - 1);
    const std::int64_t r = ((e % n) + n) % n;
    return s.exp[(s.log[a] * static_cast<std::uint64_t>(r)) % (s.order - 1)];
  }

  /// Discrete log to the canonical primitive element.
  std::uint64_t log(Code a) const {
    if (a == 0) throw std::domain_error("ExtensionField: log of zero");
    return state_->log[a];
  }

  /// First nonzero code whose multiplicative order is q - 1.
  Code primitive_element() const { return state_->primitive; }

  std::uint64_t multiplicative_order(Code a) const {
    if (a == 0) throw std::domain_error("ExtensionField: order of zero");
    std::uint64_t ord = state_->order - 1;
    for (auto r : prime_factors(state_->order - 1)) {
      while (ord % r == 0 && pow(a, static_cast<std::int64_t>(ord / r)) == one()) ord /= r;
    }
    return ord;
  }

  bool is_primitive(Code a) const { return a != 0 && multiplicative_order(a) == order() - 1; }

  /// Whether x lies in the base-field span of `spanning`.
  bool in_span(std::span<const Code> spanning, Code x) const {
    std::vector<std::vector<Code>> rows;
    for (Code v : spanning) rows.push_back(coefficients(v));
    const std::size_t r0 = rank(rows);
    rows.push_back(coefficients(x));
    return rank(rows) == r0;
  }

  friend bool operator==(const ExtensionField& a, const ExtensionField& b) {
    return a.state_ == b.state_ || (a.base() == b.base() && a.modulus() == b.modulus());
  }

  std::string describe() const {
    std::ostringstream os;
    os << "GF(" << order() << ") modulus [";
    for (std::size_t i = 0; i < modulus().size(); ++i) os << (i ? "," : "") << modulus()[i];
    os << "]";
    return os.str();
  }

 private:
  struct State {
    explicit State(Base b) : base(std::move(b)) {}
    Base base;
    std::vector<Code> modulus;
    unsigned degree = 0;
    std::uint64_t order = 0;
    std::vector<std::uint64_t> radix;  // radix[i] = B^{h-1-i}
    std::vector<Code> exp;             // exp[i] = primitive^i, i < q-1
    std::vector<std::uint64_t> log;
    Code primitive = 0;
  };

  template <class Op>
  Code combine(Code a, Code b, Op op) const {
    const auto& s = *state_;
    const std::uint64_t B = s.base.order();
    std::uint64_t out = 0;
    for (unsigned i = 0; i < s.degree; ++i) {
      const std::uint64_t r = s.radix[i];
      out += op(static_cast<Code>(a / r % B), static_cast<Code>(b / r % B)) * r;
    }
    return static_cast<Code>(out);
  }

  Code slow_mul(Code a, Code b) const {
    auto pa = coefficients(a), pb = coefficients(b);
    detail::Poly ua(pa.begin(), pa.end()), ub(pb.begin(), pb.end());
    detail::trim(ua);
    detail::trim(ub);
    auto r = detail::poly_mod_monic(state_->base, detail::poly_mul(state_->base, ua, ub), state_->modulus);
    r.resize(state_->degree, 0);
    return from_coefficients(r);
  }

  void build_tables() {
    auto& s = const_cast<State&>(*state_);
    const std::uint64_t n = s.order - 1;
    const auto factors = prime_factors(n);
    auto slow_pow = [this](Code a, std::uint64_t e) {
      Code result = one(), base = a;
      while (e > 0) {
        if (e & 1U) result = slow_mul(result, base);
        base = slow_mul(base, base);
        e >>= 1U;
      }
      return result;
    };
    for (Code c = 1; c < s.order; ++c) {
      bool primitive = slow_pow(c, n) == one();
      for (auto r : factors)
        if (primitive && slow_pow(c, n / r) == one()) primitive = false;
      if (primitive) {
        s.primitive = c;
        break;
      }
    }
    if (s.primitive == 0) throw std::logic_error("ExtensionField: no primitive element");
    s.exp.resize(n);
    s.log.assign(s.order, 0);
    Code x = one();
    for (std::uint64_t i = 0; i < n; ++i) {
      s.exp[i] = x;
      s.log[x] = i;
      x = slow_mul(x, s.primitive);
    }
  }

  std::size_t rank(std::vector<std::vector<Code>> rows) const {
    const Base& f = state_->base;
    std::size_t r = 0;
    for (unsigned col = 0; col < state_->degree && r < rows.size(); ++col) {
      std::size_t pivot = r;
      while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
      if (pivot == rows.size()) continue;
      std::swap(rows[r], rows[pivot]);
      const Code scale = f.inv(rows[r][col]);
      for (auto& c : rows[r]) c = f.mul(c, scale);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == r || rows[i][col] == 0) continue;
        const Code factor = rows[i][col];
        for (unsigned j = 0; j < state_->degree; ++j) rows[i][j] = f.sub(rows[i][j], f.mul(factor, rows[r][j]));
      }
      ++r;
    }
    return r;
  }

  std::shared_ptr<const State> state_;
};

/// GF(p^h) over its prime field.
using GaloisField = ExtensionField<PrimeField>;
/// GF(q^3) over GF(q).
using CubicExtension = ExtensionField<GaloisField>;

/// GF(p^h); without a modulus the canonical smallest irreducible one is used.
inline GaloisField make_field(std::uint32_t p, unsigned h, std::optional<std::vector<Code>> modulus = std::nullopt) {
  PrimeField prime(p);
  if (h == 0) throw std::invalid_argument("make_field: degree must be >= 1");
  if (!modulus) return GaloisField::smallest(prime, h);
  if (modulus->size() != h + 1) throw std::invalid_argument("make_field: modulus degree does not match h");
  return GaloisField(prime, std::move(*modulus));
}

inline GaloisField make_field_of_order(std::uint64_t q) {
  const auto pp = prime_power(q);
  if (!pp) throw std::invalid_argument("make_field_of_order: " + std::to_string(q) + " is not a prime power");
  return make_field(pp->first, pp->second);
}

inline CubicExtension cubic_extension(const GaloisField& f) { return CubicExtension::smallest(f, 3); }

/// Value wrapper pairing a code with its field; arithmetic checks that both
/// operands live in the same field.
template <class F>
class FieldElement {
 public:
  FieldElement(F field, Code code) : field_(std::move(field)), code_(code) {
    if (code_ >= field_.order()) throw std::out_of_range("FieldElement: code out of range");
  }

  const F& field() const { return field_; }
  Code code() const { return code_; }
  bool is_zero() const { return code_ == 0; }

  FieldElement operator+(const FieldElement& o) const { return {field_, field_.add(code_, same(o).code_)}; }
  FieldElement operator-(const FieldElement& o) const { return {field_, field_.sub(code_, same(o).code_)}; }
  FieldElement operator-() const { return {field_, field_.neg(code_)}; }
  FieldElement operator*(const FieldElement& o) const { return {field_, field_.mul(code_, same(o).code_)}; }
  FieldElement operator/(const FieldElement& o) const {
    if (same(o).is_zero()) throw std::domain_error("FieldElement: division by zero");
    return {field_, field_.div(code_, o.code_)};
  }
  FieldElement inv() const { return {field_, field_.inv(code_)}; }
  FieldElement pow(std::int64_t e) const { return {field_, field_.pow(code_, e)}; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.code_ == b.code_ && a.field_ == b.field_;
  }

 private:
  const FieldElement& same(const FieldElement& o) const {
    if (!(field_ == o.field_)) throw std::invalid_argument("FieldElement: operands from different fields");
    return o;
  }

  F field_;
  Code code_;
};

}  // namespace supersat
