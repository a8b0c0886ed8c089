#include <gtest/gtest.h>

#include "oracles.hpp"
#include "shafdyn/arith.hpp"
#include "shafdyn/errors.hpp"

using namespace shafdyn;

TEST(Valuation, Examples) {
  EXPECT_EQ(valuation(Rational(12), 2), 2);
  EXPECT_EQ(valuation(Rational(1), 7), 0);
  EXPECT_EQ(valuation(Rational(5, 8), 2), -3);
}

TEST(Valuation, RejectsZeroAndComposite) {
  EXPECT_THROW(valuation(Rational(0), 2), DomainError);
  EXPECT_THROW(valuation(Rational(3), 4), DomainError);
}

TEST(Valuation, AdditiveOnProducts) {
  for (long x = -30; x <= 30; ++x) {
    if (x == 0) continue;
    for (long y = 1; y <= 40; ++y)
      for (long p : {2, 3, 5}) {
        const Rational a(x, 7), b(y, 9);
        EXPECT_EQ(valuation(a * b, p), valuation(a, p) + valuation(b, p));
      }
  }
}

TEST(Factorize, MatchesTrialDivision) {
  for (long n = 2; n < 3000; n += 7) EXPECT_EQ(factorize(n), oracle::trial_division(n)) << n;
  const Integer big = Integer("1000000007") * Integer("998244353");
  EXPECT_EQ(factorize(big), (std::map<Integer, unsigned>{{Integer("998244353"), 1}, {Integer("1000000007"), 1}}));
}

TEST(Divisors, Ascending) {
  EXPECT_EQ(divisors(12), (std::vector<Integer>{1, 2, 3, 4, 6, 12}));
}

TEST(PlaceSet, RejectsNonPrimesAndRepeats) {
  EXPECT_THROW(PlaceSet({4}), DomainError);
  EXPECT_THROW(PlaceSet({2, 2}), DomainError);
  EXPECT_EQ(PlaceSet({3, 2}).to_string(), "{inf,2,3}");
  EXPECT_EQ(PlaceSet().to_string(), "{inf}");
}

TEST(SIdeal, Examples) {
  EXPECT_EQ(sideal_of_rational(6, PlaceSet{2}).exponents(), (std::map<Integer, long>{{3, 1}}));
  EXPECT_TRUE(sideal_of_rational(1, PlaceSet{}).is_unit());
  EXPECT_EQ(sideal_of_rational(Rational(4, 9), PlaceSet{}).exponents(), (std::map<Integer, long>{{2, 2}, {3, -2}}));
  EXPECT_EQ(sideal_of_rational(Rational(4, 9), PlaceSet{}).to_string(), "(2^2 * 3^-2)");
  EXPECT_EQ(SIdeal().to_string(), "(1)");
  EXPECT_THROW(sideal_of_rational(0, PlaceSet{}), DomainError);
}

TEST(SIdeal, MultiplicativeAndMatchesOracle) {
  const PlaceSet S{3};
  const std::vector<Integer> s_primes{3};
  for (long x = 1; x <= 60; ++x)
    for (long y = -20; y <= 20; ++y) {
      if (y == 0) continue;
      const Rational a(x, 11), b(y, 12);
      const SIdeal prod = sideal_of_rational(a * b, S);
      EXPECT_EQ(prod, sideal_of_rational(a, S) * sideal_of_rational(b, S));
      EXPECT_EQ(prod.exponents(), oracle::ideal_exponents(a * b, s_primes));
    }
}

TEST(SIdeal, PowAndInverse) {
  const SIdeal a = sideal_of_rational(Rational(12, 5), PlaceSet{});
  EXPECT_TRUE((a * a.inverse()).is_unit());
  EXPECT_EQ(a.pow(2), a * a);
}

TEST(SUnit, Examples) {
  EXPECT_TRUE(is_s_unit(-6, PlaceSet{2, 3}));
  EXPECT_FALSE(is_s_unit(6, PlaceSet{2}));
  EXPECT_TRUE(is_s_unit(Rational(9, 4), PlaceSet{2, 3}));
  EXPECT_THROW(is_s_unit(Rational(0), PlaceSet{}), DomainError);
  EXPECT_TRUE(is_s_integer(Rational(7, 4), PlaceSet{2}));
  EXPECT_FALSE(is_s_integer(Rational(7, 4), PlaceSet{3}));
}

TEST(SquareClass, RepsExamples) {
  auto reps = [](const PlaceSet& S) {
    std::vector<Integer> out;
    for (const auto& c : square_class_reps(S)) out.push_back(c.representative());
    return out;
  };
  EXPECT_EQ(reps(PlaceSet{}), (std::vector<Integer>{1, -1}));
  EXPECT_EQ(reps(PlaceSet{2}), (std::vector<Integer>{1, 2, -1, -2}));
  EXPECT_EQ(reps(PlaceSet{2, 3}), (std::vector<Integer>{1, 2, 3, 6, -1, -2, -3, -6}));
}

TEST(SquareClass, RepsAreDistinctSquarefreeSUnits) {
  const PlaceSet S{2, 3, 5, 7};
  const auto reps = square_class_reps(S);
  ASSERT_EQ(reps.size(), 32u);
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const Integer& r = reps[i].representative();
    EXPECT_TRUE(is_s_unit(Rational(r), S));
    for (const auto& [p, e] : oracle::trial_division(r)) EXPECT_EQ(e, 1u);
    for (std::size_t j = i + 1; j < reps.size(); ++j)
      EXPECT_FALSE(is_square(Rational(r, reps[j].representative()))) << r << " " << reps[j].representative();
  }
}

TEST(SquareClass, OfAndSameClass) {
  EXPECT_EQ(SquareClass::of(Rational(-18, 25)).representative(), -2);
  EXPECT_TRUE(SquareClass(6).same_class(Rational(24)));
  EXPECT_FALSE(SquareClass(6).same_class(Rational(-6)));
  EXPECT_THROW(SquareClass(12), DomainError);
}

TEST(ExactRoot, Basics) {
  Rational r;
  EXPECT_TRUE(exact_root(Rational(-27, 8), 3, r));
  EXPECT_EQ(r, Rational(-3, 2));
  EXPECT_FALSE(exact_root(Rational(2), 2, r));
  EXPECT_FALSE(exact_root(Rational(-4), 2, r));
}

TEST(ParseRational, Errors) {
  EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("x"), ParseError);
}
