#include <gtest/gtest.h>

#include "oracles.hpp"
#include "supersat/finite_field.hpp"

using namespace supersat;

namespace {

// Prime powers q ≤ 128 for the exhaustive Frobenius check.
std::vector<std::uint64_t> small_prime_powers() {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q <= 128; ++q)
    if (prime_power(q)) out.push_back(q);
  return out;
}

}  // namespace

TEST(PrimePower, DetectsPrimePowers) {
  EXPECT_EQ(prime_power(8), std::make_pair(2U, 3U));
  EXPECT_EQ(prime_power(9), std::make_pair(3U, 2U));
  EXPECT_EQ(prime_power(13), std::make_pair(13U, 1U));
  EXPECT_FALSE(prime_power(12));
  EXPECT_FALSE(prime_power(1));
  EXPECT_FALSE(prime_power(0));
}

TEST(FieldCreate, QuadraticOverTwoHasModulusXSquaredPlusXPlusOne) {
  const auto f = make_field(2, 2);
  EXPECT_EQ(f.modulus(), (std::vector<Code>{1, 1, 1}));
  EXPECT_EQ(f.order(), 4U);
}

TEST(FieldCreate, DegreeOneIsThePrimeField) {
  const auto f = make_field(5, 1);
  EXPECT_EQ(f.order(), 5U);
  EXPECT_EQ(f.characteristic(), 5U);
  for (Code a = 0; a < 5; ++a)
    for (Code b = 0; b < 5; ++b) {
      EXPECT_EQ(f.add(a, b), (a + b) % 5);
      EXPECT_EQ(f.mul(a, b), (a * b) % 5);
    }
}

TEST(FieldCreate, OrderTwentySevenSatisfiesXToTheTwentySevenEqualsX) {
  const auto f = make_field(3, 3);
  ASSERT_EQ(f.order(), 27U);
  for (Code a = 0; a < 27; ++a) EXPECT_EQ(f.pow(a, 27), a);
}

TEST(FieldCreate, RejectsCompositeCharacteristicAndReducibleModulus) {
  EXPECT_THROW(make_field(4, 1), std::invalid_argument);
  EXPECT_THROW(make_field(6, 2), std::invalid_argument);
  // x² + 1 = (x + 1)² over GF(2)
  EXPECT_THROW(make_field(2, 2, std::vector<Code>{1, 0, 1}), std::invalid_argument);
  // not monic
  EXPECT_THROW(make_field(3, 2, std::vector<Code>{1, 0, 2}), std::invalid_argument);
  EXPECT_THROW(make_field_of_order(12), std::invalid_argument);
}

TEST(FieldCreate, ExplicitIrreducibleModulusIsAccepted) {
  // x³ + x² + 1 over GF(2)
  const auto f = make_field(2, 3, std::vector<Code>{1, 0, 1, 1});
  EXPECT_EQ(f.order(), 8U);
  for (Code a = 0; a < 8; ++a) EXPECT_EQ(f.pow(a, 8), a);
}

TEST(FieldArith, KnownValues) {
  const auto f5 = make_field(5, 1);
  EXPECT_EQ(f5.pow(2, 4), 1U);
  const auto f4 = make_field(2, 2);
  // codes: x ↦ coefficients (c0, c1) = (0, 1); constant term most significant
  const Code x = f4.from_coefficients(std::vector<Code>{0, 1});
  const Code x_plus_1 = f4.from_coefficients(std::vector<Code>{1, 1});
  EXPECT_EQ(f4.mul(x, x), x_plus_1);
  for (auto q : {4, 8, 9, 25}) {
    const auto f = make_field_of_order(q);
    for (Code a = 0; a < f.order(); ++a) EXPECT_EQ(f.mul(a, f.one()), a);
  }
}

TEST(FieldArith, InversesNegativesAndDivision) {
  for (auto q : small_prime_powers()) {
    const auto f = make_field_of_order(q);
    for (Code a = 0; a < f.order(); ++a) {
      EXPECT_EQ(f.add(a, f.neg(a)), f.zero());
      if (a != 0) {
        EXPECT_EQ(f.mul(a, f.inv(a)), f.one()) << "q=" << q << " a=" << a;
        EXPECT_EQ(f.div(f.one(), a), f.inv(a));
      }
    }
    EXPECT_THROW(f.inv(0), std::domain_error);
  }
}

TEST(FieldArith, PowReducesExponentsAndHandlesZero) {
  const auto f = make_field_of_order(7);
  EXPECT_EQ(f.pow(3, -1), f.inv(3));
  EXPECT_EQ(f.pow(3, 6), 1U);
  EXPECT_EQ(f.pow(3, 6 * 1000 + 2), f.pow(3, 2));
  EXPECT_EQ(f.pow(3, -7), f.pow(3, 5));
  EXPECT_EQ(f.pow(0, 0), 1U);
  EXPECT_EQ(f.pow(0, 5), 0U);
  EXPECT_THROW(f.pow(0, -1), std::domain_error);
}

TEST(FieldArith, PrimeFieldAgreesWithModularArithmetic) {
  for (std::uint32_t p : {2U, 3U, 5U, 7U, 11U, 13U, 31U}) {
    const auto f = make_field(p, 1);
    for (Code a = 0; a < p; ++a) {
      for (Code b = 0; b < p; ++b) {
        EXPECT_EQ(f.sub(a, b), (a + p - b) % p);
        EXPECT_EQ(f.mul(a, b), (a * b) % p);
      }
      for (std::int64_t e = 0; e < 12; ++e) EXPECT_EQ(f.pow(a, e), oracle::pow_mod(a, static_cast<std::uint64_t>(e), p));
    }
  }
}

TEST(FieldArith, FrobeniusFixesEveryElement) {
  for (auto q : small_prime_powers()) {
    const auto f = make_field_of_order(q);
    for (Code a = 0; a < f.order(); ++a) ASSERT_EQ(f.pow(a, static_cast<std::int64_t>(q)), a) << "q=" << q;
  }
}

TEST(FieldArith, DistributiveAndAssociative) {
  const auto f = make_field_of_order(16);
  for (Code a = 0; a < 16; ++a)
    for (Code b = 0; b < 16; ++b)
      for (Code c = 0; c < 16; ++c) {
        ASSERT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        ASSERT_EQ(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
      }
}

TEST(PrimitiveElement, KnownValues) {
  EXPECT_EQ(make_field_of_order(5).primitive_element(), 2U);
  EXPECT_EQ(make_field_of_order(7).primitive_element(), 3U);
  EXPECT_EQ(make_field_of_order(2).primitive_element(), 1U);
}

TEST(PrimitiveElement, MatchesBruteForceOnPrimeFields) {
  for (std::uint64_t p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47})
    EXPECT_EQ(make_field_of_order(p).primitive_element(), oracle::primitive_root(p)) << p;
}

TEST(PrimitiveElement, HasFullOrderAndIsFirstInCanonicalOrder) {
  for (auto q : small_prime_powers()) {
    const auto f = make_field_of_order(q);
    const Code g = f.primitive_element();
    EXPECT_EQ(f.pow(g, static_cast<std::int64_t>(q - 1)), f.one());
    for (auto r : prime_factors(q - 1)) EXPECT_NE(f.pow(g, static_cast<std::int64_t>((q - 1) / r)), f.one()) << q;
    // brute-force orders of every earlier candidate
    for (Code c = 1; c < g; ++c) {
      std::uint64_t order = 1;
      for (Code x = c; x != f.one(); x = f.mul(x, c)) ++order;
      EXPECT_LT(order, q - 1) << "q=" << q << " earlier candidate " << c << " is primitive";
    }
  }
}

TEST(PrimitiveElement, PowersEnumerateTheMultiplicativeGroup) {
  for (auto q : {8, 9, 27, 49, 64}) {
    const auto f = make_field_of_order(q);
    std::vector<bool> seen(q, false);
    for (std::int64_t i = 0; i < q - 1; ++i) seen[f.pow(f.primitive_element(), i)] = true;
    EXPECT_FALSE(seen[0]);
    EXPECT_EQ(std::count(seen.begin(), seen.end(), true), q - 1);
  }
}

TEST(CubicExtension, OverGF2HasModulusXCubedPlusXPlusOne) {
  const auto f8 = cubic_extension(make_field_of_order(2));
  EXPECT_EQ(f8.order(), 8U);
  EXPECT_EQ(f8.modulus(), (std::vector<Code>{1, 1, 0, 1}));
}

TEST(CubicExtension, OverGF3TheFixedPointsOfCubingAreTheBaseField) {
  const auto base = make_field_of_order(3);
  const auto f = cubic_extension(base);
  ASSERT_EQ(f.order(), 27U);
  std::vector<Code> embedded;
  for (Code c = 0; c < 3; ++c) embedded.push_back(f.embed(c));
  for (Code a = 0; a < 27; ++a) {
    const bool fixed = f.pow(a, 3) == a;
    const bool in_base = std::find(embedded.begin(), embedded.end(), a) != embedded.end();
    EXPECT_EQ(fixed, in_base) << a;
  }
}

TEST(CubicExtension, OverGF4HasPrimitiveElementOfOrderSixtyThree) {
  const auto f = cubic_extension(make_field_of_order(4));
  EXPECT_EQ(f.order(), 64U);
  EXPECT_EQ(f.multiplicative_order(f.primitive_element()), 63U);
}

TEST(CubicExtension, EmbeddingIsAFieldHomomorphism) {
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9}) {
    const auto base = make_field_of_order(q);
    const auto f = cubic_extension(base);
    ASSERT_EQ(f.order(), q * q * q);
    EXPECT_EQ(f.one(), f.embed(base.one()));
    for (Code a = 0; a < q; ++a)
      for (Code b = 0; b < q; ++b) {
        EXPECT_EQ(f.embed(base.add(a, b)), f.add(f.embed(a), f.embed(b)));
        EXPECT_EQ(f.embed(base.mul(a, b)), f.mul(f.embed(a), f.embed(b)));
      }
  }
}

TEST(CubicExtension, SpanMembershipCountsQSquaredElements) {
  for (std::uint64_t q : {2, 3, 4, 5}) {
    const auto f = cubic_extension(make_field_of_order(q));
    const Code theta = f.primitive_element();
    const std::vector<Code> basis{f.one(), theta};
    std::uint64_t inside = 0;
    for (Code x = 0; x < f.order(); ++x) inside += f.in_span(basis, x);
    EXPECT_EQ(inside, q * q);
    EXPECT_TRUE(f.in_span(basis, f.add(theta, f.one())));
    EXPECT_FALSE(f.in_span(basis, f.mul(theta, theta)));
  }
}

TEST(FieldElementWrapper, ArithmeticAndMismatchedFields) {
  const auto f = make_field_of_order(9);
  const FieldElement<GaloisField> a(f, 4), b(f, 7);
  EXPECT_EQ((a * b).code(), f.mul(4, 7));
  EXPECT_EQ((a / b * b), a);
  EXPECT_EQ((a - a).code(), 0U);
  EXPECT_EQ(a.pow(8).code(), f.one());
  EXPECT_THROW(a / FieldElement<GaloisField>(f, 0), std::domain_error);
  const FieldElement<GaloisField> other(make_field_of_order(7), 3);
  EXPECT_THROW(a + other, std::invalid_argument);
  EXPECT_THROW(FieldElement<GaloisField>(f, 9), std::out_of_range);
}
