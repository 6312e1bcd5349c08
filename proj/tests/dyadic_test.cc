#include <gtest/gtest.h>

#include <random>

#include "gnmawpp/dyadic.h"

using namespace gnmawpp;

TEST(Dyadic, Canonicalizes) {
  Dyadic a(64, 8);
  EXPECT_EQ(a.numerator(), 1);
  EXPECT_EQ(a.exponent(), 2u);
  Dyadic zero(0, 17);
  EXPECT_EQ(zero.exponent(), 0u);
  EXPECT_TRUE(zero.is_zero());
  Dyadic big(12, 0);
  EXPECT_EQ(big.numerator(), 12);
  EXPECT_EQ(big.to_string(), "12");
  EXPECT_EQ(Dyadic(3, 4).to_string(), "3/2^4");
}

TEST(Dyadic, FromRational) {
  EXPECT_EQ(Dyadic::from_rational(mpq_class(3, 16)), Dyadic(3, 4));
  EXPECT_EQ(Dyadic::from_rational(mpq_class(6, 32)), Dyadic(3, 4));
  EXPECT_THROW(Dyadic::from_rational(mpq_class(1, 3)), std::domain_error);
  EXPECT_THROW(Dyadic::from_rational(mpq_class(-1, 2)), std::domain_error);
  EXPECT_THROW(Dyadic(-1, 0), std::domain_error);
}

TEST(Dyadic, SubtractionRefusesNegative) {
  EXPECT_EQ(Dyadic(1, 2) - Dyadic(1, 4), Dyadic(3, 4));
  EXPECT_THROW(Dyadic(1, 4) - Dyadic(1, 2), std::domain_error);
}

// Arithmetic and ordering agree with GMP rationals on random operands.
TEST(DyadicProperties, MatchesRationalArithmetic) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    Dyadic a(mpz_class(static_cast<unsigned long>(rng() % 100000)), rng() % 40);
    Dyadic b(mpz_class(static_cast<unsigned long>(rng() % 100000)), rng() % 40);
    mpq_class qa = a.to_rational(), qb = b.to_rational();
    EXPECT_EQ((a + b).to_rational(), mpq_class(qa + qb));
    EXPECT_EQ((a * b).to_rational(), mpq_class(qa * qb));
    EXPECT_EQ(a < b, qa < qb);
    EXPECT_EQ(a == b, qa == qb);
    if (qa >= qb) EXPECT_EQ((a - b).to_rational(), mpq_class(qa - qb));
    auto s = a + b;
    EXPECT_TRUE(s.is_zero() || mpz_odd_p(s.numerator().get_mpz_t()) || s.exponent() == 0);
    EXPECT_EQ(Dyadic::from_rational(qa), a);
  }
}

TEST(RationalString, Forms) {
  EXPECT_EQ(rational_string(mpq_class(3072, 4225)), "3072/4225");
  EXPECT_EQ(rational_string(mpq_class(8, 2)), "4");
}
