#include <gtest/gtest.h>

#include <random>

#include "symcirc/field.hpp"

using namespace symcirc;

namespace {

FieldValue q(long long n, long long d = 1) {
  return FieldValue::from_rational(Field::rationals(), make_rational(n, d));
}

}  // namespace

TEST(Field, ParsesDescriptors) {
  EXPECT_TRUE(Field::parse("Q").is_rational());
  EXPECT_EQ(Field::parse("Fp:7").characteristic(), 7u);
  EXPECT_EQ(Field::parse("Fp:7").to_string(), "Fp:7");
  EXPECT_THROW(Field::parse("Fp:8"), InvalidArgument);
  EXPECT_THROW(Field::parse("Fp:"), InvalidArgument);
  EXPECT_THROW(Field::parse("R"), InvalidArgument);
  EXPECT_THROW(Field::prime(1), InvalidArgument);
}

TEST(FieldValue, RationalsStayInLowestTerms) {
  FieldValue a = q(6, -4);
  EXPECT_EQ(a.to_string(), "-3/2");
  EXPECT_EQ(denominator(a.rational()), 2);
  EXPECT_EQ(q(1, 2) + q(1, 3), q(5, 6));
  EXPECT_EQ(q(2, 3) * q(3, 4), q(1, 2));
  EXPECT_EQ(q(1) / q(3), q(1, 3));
}

TEST(FieldValue, PrimeFieldReducesRepresentatives) {
  Field f5 = Field::prime(5);
  FieldValue a = FieldValue::from_int(f5, 3), b = FieldValue::from_int(f5, 4);
  EXPECT_EQ((a + b).to_string(), "2");
  EXPECT_EQ(FieldValue::from_int(f5, -1).to_string(), "4");
  EXPECT_EQ((a * b).to_string(), "2");
  EXPECT_EQ((a / b) * b, a);
  EXPECT_EQ(FieldValue::parse(f5, "1/2").to_string(), "3");
}

TEST(FieldValue, MixedFieldsAreRejected) {
  FieldValue a = q(1), b = FieldValue::from_int(Field::prime(3), 1);
  EXPECT_THROW(a + b, FieldMismatch);
  EXPECT_THROW(a * b, FieldMismatch);
  EXPECT_NE(a, b);
}

TEST(FieldValue, DivisionByZeroThrows) {
  EXPECT_THROW(q(1) / q(0), InvalidArgument);
  EXPECT_THROW(FieldValue::from_int(Field::prime(7), 7).inverse(), InvalidArgument);
}

TEST(FieldValue, PowerMatchesRepeatedProduct) {
  EXPECT_EQ(q(0).pow(0), q(1));
  EXPECT_EQ(q(-1).pow(3), q(-1));
  EXPECT_EQ(q(2, 3).pow(3), q(8, 27));
  Field f7 = Field::prime(7);
  FieldValue acc = FieldValue::one(f7), x = FieldValue::from_int(f7, 3);
  for (int k = 0; k < 10; ++k) {
    EXPECT_EQ(x.pow(static_cast<std::uint64_t>(k)), acc);
    acc *= x;
  }
}

TEST(FieldValue, ParseRejectsGarbage) {
  EXPECT_THROW(FieldValue::parse(Field::rationals(), "abc"), InvalidArgument);
  EXPECT_THROW(FieldValue::parse(Field::rationals(), "1/0"), InvalidArgument);
  EXPECT_EQ(FieldValue::parse(Field::rationals(), "-4/6"), q(-2, 3));
  EXPECT_EQ(FieldValue::parse(Field::rationals(), "4/-6"), q(-2, 3));
}

TEST(FieldValue, FieldAxiomsOnRandomSamples) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> d(-50, 50);
  for (Field f : {Field::rationals(), Field::prime(101)}) {
    for (int t = 0; t < 200; ++t) {
      auto a = FieldValue::from_int(f, d(rng)), b = FieldValue::from_int(f, d(rng)),
           c = FieldValue::from_int(f, d(rng));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ((a + b) - b, a);
      if (!b.is_zero()) {
        EXPECT_EQ((a / b) * b, a);
      }
    }
  }
}

TEST(FieldValue, OrderingIsByValueWithinAField) {
  EXPECT_LT(q(-1), q(0));
  EXPECT_LT(q(1, 3), q(1, 2));
  Field f5 = Field::prime(5);
  EXPECT_LT(FieldValue::from_int(f5, 1), FieldValue::from_int(f5, 4));
}
