#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sigmadiv/exactint.hpp"

using namespace sigmadiv;

TEST(Nat, ParseAndPrint) {
  EXPECT_EQ(Nat::parse("33550336").to_u64(), 33550336u);
  EXPECT_EQ(Nat::parse("340282366920938463463374607431768211456").str(), "340282366920938463463374607431768211456");
  EXPECT_THROW(Nat::parse("-3"), std::invalid_argument);
  EXPECT_THROW(Nat::parse("12x"), std::invalid_argument);
  EXPECT_THROW(Nat::parse(""), std::invalid_argument);
}

TEST(Nat, RejectsNegativeAndUnderflow) {
  EXPECT_THROW(Nat(-1), std::domain_error);
  EXPECT_THROW(Nat(3) - Nat(4), std::domain_error);
  EXPECT_THROW(Nat(3) / Nat(0), std::domain_error);
  EXPECT_THROW(Nat(3) % Nat(0), std::domain_error);
}

TEST(Nat, ToU64RangeCheck) {
  EXPECT_THROW(pow2(64).to_u64(), std::overflow_error);
  EXPECT_EQ(mersenne(64).to_u64(), ~std::uint64_t{0});
}

TEST(VExact, Examples) {
  EXPECT_EQ(v_exact(2, Nat(48)).exponent, 4u);
  EXPECT_EQ(v_exact(2, pow(Nat(7), 6) - Nat(1)).exponent, 4u);
  EXPECT_EQ(v_exact(3, Nat(1)).exponent, 0u);
  EXPECT_TRUE(v_exact(5, Nat(15624)).holds());
}

TEST(VExact, Errors) {
  EXPECT_THROW(v_exact(2, Nat(0)), std::domain_error);
  EXPECT_THROW(v_exact(4, Nat(16)), std::invalid_argument);
  EXPECT_THROW(v_exact(1, Nat(16)), std::invalid_argument);
}

TEST(VExact, PropertyMatchesRepeatedDivision) {
  const std::uint64_t primes[] = {2, 3, 5, 7, 31, 127, 8191};
  for (int trial = 0; trial < 500; ++trial) {
    const std::uint64_t q = primes[oracle::uniform(0, 6)];
    mpz_class x = oracle::u(oracle::uniform(1, 1u << 30)) * oracle::power(oracle::u(q), oracle::uniform(0, 20));
    const Valuation v = v_exact(q, Nat(x));
    EXPECT_EQ(v.exponent, oracle::valuation(oracle::u(q), x));
    EXPECT_TRUE(v.holds());
    // q^e | x and q^(e+1) does not
    EXPECT_TRUE(divides(pow(Nat(q), v.exponent), Nat(x)));
    EXPECT_FALSE(divides(pow(Nat(q), v.exponent + 1), Nat(x)));
  }
}

TEST(GeometricSum, Examples) {
  EXPECT_EQ(geometric_sum(Nat(2), 1), Nat(1));
  EXPECT_EQ(geometric_sum(Nat(32), 2), Nat(33));
  EXPECT_EQ(geometric_sum(Nat(32), 2).mpz(), oracle::sigma(2, 5));
  EXPECT_EQ(geometric_sum(Nat(2), 5), Nat(31));
  EXPECT_THROW(geometric_sum(Nat(1), 3), std::invalid_argument);
  EXPECT_THROW(geometric_sum(Nat(2), 0), std::invalid_argument);
}

TEST(GeometricSum, PropertyTelescopes) {
  for (int trial = 0; trial < 300; ++trial) {
    const Nat b(oracle::uniform(2, 1000));
    const std::uint64_t m = oracle::uniform(1, 40);
    EXPECT_EQ(geometric_sum(b, m) * (b - Nat(1)) + Nat(1), pow(b, m));
  }
}

TEST(Modpow, Examples) {
  EXPECT_EQ(modpow(Nat(2), Nat(10), Nat(1000)), Nat(24));
  EXPECT_EQ(modpow(Nat(7), Nat(0), Nat(5)), Nat(1));
  EXPECT_EQ(modpow(Nat(31), Nat(5), Nat(496)).to_u64(), oracle::modpow(31, 5, 496));
  EXPECT_THROW(modpow(Nat(2), Nat(3), Nat(1)), std::invalid_argument);
}

TEST(Modpow, PropertyMatchesNaive) {
  for (int trial = 0; trial < 500; ++trial) {
    const std::uint64_t b = oracle::uniform(0, 500), e = oracle::uniform(0, 60), m = oracle::uniform(2, 5000);
    EXPECT_EQ(modpow(Nat(b), Nat(e), Nat(m)).to_u64(), oracle::modpow(b, e, m)) << b << "^" << e << " mod " << m;
  }
}

TEST(BitCap, PowRefusesPastCap) {
  EXPECT_THROW(pow(Nat(3), 1000, BitCap{100}), SizeCapExceeded);
  EXPECT_THROW(pow2(200, BitCap{100}), SizeCapExceeded);
  EXPECT_NO_THROW(pow(Nat(3), 60, BitCap{100}));
  EXPECT_EQ(pow(Nat(0), 1u << 30), Nat(0));
  EXPECT_EQ(pow(Nat(1), 1u << 30), Nat(1));
}

TEST(Multiplicity, CompositeBase) {
  // 2^21 - 1 = 7^2 * 127 * 337
  EXPECT_EQ(multiplicity(Nat(7), mersenne(21)), 2u);
  EXPECT_TRUE(exactly_divides(Nat(49), 1, mersenne(42)));
  EXPECT_EQ(multiplicity(Nat(6), Nat(6 * 6 * 6 * 5)), 3u);
}

TEST(Rational, Canonical) {
  const Rational r(mpz_class(6), mpz_class(-4));
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), Nat(2));
  EXPECT_EQ(r, Rational::parse("-3/2"));
  EXPECT_EQ(Rational::parse("781/81").str(), "781/81");
  EXPECT_EQ(Rational::parse("10/5").str(), "2");
  EXPECT_THROW(Rational(mpz_class(1), mpz_class(0)), std::domain_error);
}

TEST(Rational, NegativePowers) {
  EXPECT_EQ(pow(Rational(3), -2), Rational(mpz_class(1), mpz_class(9)));
  EXPECT_EQ(pow(Rational(mpz_class(2), mpz_class(3)), 3), Rational(mpz_class(8), mpz_class(27)));
  EXPECT_THROW(pow(Rational(0), -1), std::domain_error);
}

TEST(Rational, PropertyExactAddition) {
  for (int trial = 0; trial < 500; ++trial) {
    const long a = static_cast<long>(oracle::uniform(0, 2000)) - 1000;
    const long c = static_cast<long>(oracle::uniform(0, 2000)) - 1000;
    const long b = static_cast<long>(oracle::uniform(1, 500));
    const long d = static_cast<long>(oracle::uniform(1, 500));
    const Rational sum = Rational(mpz_class(a), mpz_class(b)) + Rational(mpz_class(c), mpz_class(d));
    const Rational scaled = sum * Rational(mpz_class(b * d), mpz_class(1));
    ASSERT_TRUE(scaled.is_integer());
    EXPECT_EQ(scaled.num(), mpz_class(a * d + c * b));
  }
}
