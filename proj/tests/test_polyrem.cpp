#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sigmadiv/polyrem.hpp"

using namespace sigmadiv;

namespace {

Rational q(long n, long d = 1) { return Rational(mpz_class(n), mpz_class(d)); }

RationalPoly quartic() { return RationalPoly::all_ones(5); }

RationalPoly random_poly(int max_degree) {
  const auto deg = static_cast<int>(oracle::uniform(0, static_cast<std::uint64_t>(max_degree)));
  std::vector<Rational> cs;
  for (int i = 0; i <= deg; ++i) {
    cs.push_back(q(static_cast<long>(oracle::uniform(0, 40)) - 20, static_cast<long>(oracle::uniform(1, 9))));
  }
  return RationalPoly(std::move(cs));
}

}  // namespace

TEST(RationalPoly, Canonical) {
  EXPECT_EQ(RationalPoly({q(1), q(0), q(0)}).degree(), 0);
  EXPECT_EQ(RationalPoly({q(0)}).degree(), RationalPoly::kZeroDegree);
  EXPECT_TRUE(RationalPoly().is_zero());
  EXPECT_EQ(RationalPoly({q(-1), q(1, 4)}).str(), "(1/4)x + (-1)");
  EXPECT_THROW(RationalPoly().leading(), std::domain_error);
}

TEST(DivmodPoly, QuarticByQuarterX) {
  const DivisionResult d = divmod_poly(quartic(), RationalPoly{q(-1), q(1, 4)});
  EXPECT_EQ(d.remainder, RationalPoly::constant(q(341)));
  EXPECT_EQ(d.quotient, (RationalPoly{q(340), q(84), q(20), q(4)}));
}

TEST(DivmodPoly, QuarticByThreeQuartersX) {
  const DivisionResult d = divmod_poly(quartic(), RationalPoly{q(-1), q(3, 4)});
  EXPECT_EQ(d.remainder, RationalPoly::constant(q(781, 81)));
}

TEST(DivmodPoly, Trivial) {
  const DivisionResult d = divmod_poly(RationalPoly{q(0), q(1)}, RationalPoly{q(0), q(1)});
  EXPECT_EQ(d.quotient, RationalPoly::constant(q(1)));
  EXPECT_TRUE(d.remainder.is_zero());
  EXPECT_THROW(divmod_poly(quartic(), RationalPoly()), std::domain_error);
}

TEST(DivmodPoly, PropertyReconstruction) {
  for (int trial = 0; trial < 300; ++trial) {
    const RationalPoly f = random_poly(8);
    RationalPoly g = random_poly(5);
    if (g.is_zero()) g = RationalPoly::constant(q(1, 3));
    const DivisionResult d = divmod_poly(f, g);
    EXPECT_EQ(g * d.quotient + d.remainder, f);
    EXPECT_LT(d.remainder.degree(), g.degree());
  }
}

TEST(RemainderAtHalf, Examples) {
  EXPECT_EQ(remainder_at_half(5), q(31));
  EXPECT_EQ(remainder_at_half(2), q(3));
  EXPECT_EQ(remainder_at_half(7), q(127));
  for (std::uint32_t k = 2; k <= 20; ++k) {
    EXPECT_EQ(remainder_at_half(k), Rational(mersenne(k))) << k;
  }
  EXPECT_THROW(remainder_at_half(1), std::invalid_argument);
}

TEST(QuarticRemainder, Table) {
  EXPECT_EQ(quartic_remainder(1), q(341));
  EXPECT_EQ(quartic_remainder(2), q(31));
  EXPECT_EQ(quartic_remainder(3), q(781, 81));
  EXPECT_EQ(quartic_remainder(4), q(5));
  EXPECT_EQ(quartic_remainder(5), q(2101, 625));
  EXPECT_THROW(quartic_remainder(0), std::invalid_argument);
  EXPECT_THROW(quartic_remainder(6), std::invalid_argument);
}

TEST(QuarticRemainder, Quotients) {
  EXPECT_EQ(quartic_division(1).quotient, (RationalPoly{q(340), q(84), q(20), q(4)}));
  EXPECT_EQ(quartic_division(2).quotient, (RationalPoly{q(30), q(14), q(6), q(2)}));
  EXPECT_EQ(quartic_division(4).quotient, (RationalPoly{q(4), q(3), q(2), q(1)}));
}

TEST(ClearDenominators, ThreeAndFive) {
  const ClearedDivision c3 = clear_denominators(quartic_division(3));
  EXPECT_EQ(c3.scale, Nat(81));
  EXPECT_EQ(c3.remainder, 781);
  EXPECT_EQ(c3.quotient, (RationalPoly{q(700), q(444), q(252), q(108)}));
  const ClearedDivision c5 = clear_denominators(quartic_division(5));
  EXPECT_EQ(c5.scale, Nat(625));
  EXPECT_EQ(c5.remainder, 2101);
  const ClearedDivision c1 = clear_denominators(quartic_division(1));
  EXPECT_EQ(c1.scale, Nat(1));
  EXPECT_EQ(c1.remainder, 341);
}

// scale * f(x0) = Q(x0) g(x0) + R for x0 = 2^alpha, all integers.
TEST(ClearDenominators, CongruenceTransfer) {
  for (std::uint32_t k1 = 1; k1 <= 5; ++k1) {
    const DivisionResult d = quartic_division(k1);
    const ClearedDivision c = clear_denominators(d);
    for (std::uint32_t alpha = 3; alpha <= 12; ++alpha) {
      const Rational x0(pow2(alpha));
      const Rational lhs = Rational(c.scale) * eval_poly(quartic(), x0);
      const Rational gx = eval_poly(RationalPoly{q(-1), q(static_cast<long>(k1), 4)}, x0);
      const Rational rhs = eval_poly(c.quotient, x0) * gx + Rational(c.remainder, mpz_class(1));
      EXPECT_EQ(lhs, rhs);
      ASSERT_TRUE(gx.is_integer());
      if (!gx.is_zero()) {
        const mpz_class m = abs(gx.num());
        const mpz_class l = lhs.num() % m, r = c.remainder % m;
        EXPECT_EQ((l - r) % m, 0) << "k1=" << k1 << " alpha=" << alpha;
      }
    }
  }
}

TEST(EvalPoly, Examples) {
  EXPECT_EQ(eval_poly(quartic(), q(2)), q(31));
  for (std::uint32_t alpha = 2; alpha < 20; ++alpha) {
    EXPECT_EQ(eval_poly(RationalPoly{q(-1), q(1, 2)}, Rational(pow2(alpha))), Rational(pow2(alpha - 1) - Nat(1)));
  }
  for (int trial = 0; trial < 50; ++trial) {
    const RationalPoly f = random_poly(6);
    EXPECT_EQ(eval_poly(f, q(0)), f.coeff(0));
  }
}
