#include <gtest/gtest.h>

#include <random>

#include "hhbv/coeff.hpp"

using namespace hhbv;

TEST(Coeff, AddOverIntegers) {
  const auto z = CoeffRingTag::integers();
  EXPECT_EQ(coeff_arith(ArithOp::Add, Coefficient(z, 2), Coefficient(z, 3)), Coefficient(z, 5));
}

TEST(Coeff, MulReducesModFour) {
  const auto r = CoeffRingTag::integers_mod(4);
  EXPECT_TRUE(coeff_arith(ArithOp::Mul, Coefficient(r, 2), Coefficient(r, 2)).is_zero());
}

TEST(Coeff, TriangularNumberForFive) {
  const auto z = CoeffRingTag::integers();
  const long n = 5;
  auto c = coeff_arith(ArithOp::Mul, Coefficient(z, n - 1), Coefficient(z, n));
  EXPECT_EQ(Coefficient(z, c.value() / 2), Coefficient(z, 10));
}

TEST(Coeff, InverseModSeven) {
  const auto r = CoeffRingTag::integers_mod(7);
  // brute-force oracle
  long expected = -1;
  for (long k = 0; k < 7; ++k)
    if ((3 * k) % 7 == 1) expected = k;
  EXPECT_EQ(coeff_invert(Coefficient(r, 3)), Coefficient(r, expected));
  EXPECT_EQ(expected, 5);
}

TEST(Coeff, MinusOneSelfInverse) {
  const auto z = CoeffRingTag::integers();
  EXPECT_EQ(coeff_invert(Coefficient(z, -1)), Coefficient(z, -1));
}

TEST(Coeff, TwoNotUnitOverIntegers) {
  EXPECT_THROW(coeff_invert(Coefficient(CoeffRingTag::integers(), 2)), NonUnit);
}

TEST(Coeff, RingMismatchThrows) {
  EXPECT_THROW(coeff_arith(ArithOp::Add, Coefficient(CoeffRingTag::integers(), 1), Coefficient(CoeffRingTag::integers_mod(3), 1)),
               RingMismatch);
}

TEST(Coeff, NegativeResiduesCanonical) {
  const auto r = CoeffRingTag::integers_mod(6);
  EXPECT_EQ(Coefficient(r, -1).value(), 5);
  EXPECT_EQ((-Coefficient(r, 2)).value(), 4);
}

TEST(Coeff, RationalsLowestTerms) {
  const auto q = CoeffRingTag::rationals();
  Coefficient half(q, mpq_class(2, 4));
  EXPECT_EQ(half.value().get_num(), 1);
  EXPECT_EQ(half.value().get_den(), 2);
  EXPECT_EQ(coeff_invert(half), Coefficient(q, 2));
}

TEST(Coeff, Parse) {
  EXPECT_EQ(CoeffRingTag::parse("Z"), CoeffRingTag::integers());
  EXPECT_EQ(CoeffRingTag::parse("Q"), CoeffRingTag::rationals());
  EXPECT_EQ(CoeffRingTag::parse("Z/4"), CoeffRingTag::integers_mod(4));
  EXPECT_EQ(CoeffRingTag::parse("F_5"), CoeffRingTag::integers_mod(5));
  EXPECT_TRUE(CoeffRingTag::parse("F_5").is_field());
  EXPECT_FALSE(CoeffRingTag::parse("Z/4").is_field());
  EXPECT_THROW(CoeffRingTag::parse("Z/1"), Error);
  EXPECT_THROW(CoeffRingTag::parse("R"), ParseError);
}

TEST(CoeffProperties, RingAxiomsExhaustiveSmallModuli) {
  for (long m : {2, 3, 4, 6, 9}) {
    const auto r = CoeffRingTag::integers_mod(m);
    for (long a = 0; a < m; ++a)
      for (long b = 0; b < m; ++b)
        for (long c = 0; c < m; ++c) {
          Coefficient x(r, a), y(r, b), z(r, c);
          EXPECT_EQ((x + y) + z, x + (y + z));
          EXPECT_EQ((x * y) * z, x * (y * z));
          EXPECT_EQ(x * y, y * x);
          EXPECT_EQ(x * (y + z), x * y + x * z);
        }
  }
}

TEST(CoeffProperties, SampledBigIntegers) {
  const auto z = CoeffRingTag::integers();
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    mpz_class a(std::to_string(rng())), b(std::to_string(rng())), c(std::to_string(rng()));
    a *= a;  // beyond 64 bits
    Coefficient x(z, mpq_class(a)), y(z, mpq_class(-b)), w(z, mpq_class(c));
    EXPECT_EQ((x + y) * w, x * w + y * w);
    EXPECT_EQ(x * y, y * x);
  }
}

TEST(CoeffProperties, InverseTimesValueIsOne) {
  for (long m : {5, 7, 8, 12}) {
    const auto r = CoeffRingTag::integers_mod(m);
    for (long a = 0; a < m; ++a) {
      Coefficient x(r, a);
      if (!x.is_unit()) {
        EXPECT_THROW(coeff_invert(x), NonUnit);
        continue;
      }
      EXPECT_TRUE((coeff_invert(x) * x).is_one());
    }
  }
}
