#include <gtest/gtest.h>

#include "oracles.hpp"
#include "shafdyn/errors.hpp"
#include "shafdyn/forms.hpp"
#include "shafdyn/verify.hpp"

using namespace shafdyn;

namespace {

HomogeneousForm bf(const std::string& s) { return parse_form(s, 2); }
HomogeneousForm tf(const std::string& s) { return parse_form(s, 3); }

HomogeneousForm random_form(Rng& rng, std::size_t n_vars, int d, long bound) {
  HomogeneousForm f(n_vars, d);
  while (f.is_zero())
    for (const auto& m : monomials_of_degree(n_vars, d)) f.add_term(m, Rational(random_int(rng, -bound, bound)));
  return f;
}

}  // namespace

TEST(Evaluate, Examples) {
  const Rational a[2] = {1, 1}, b[2] = {3, 0}, c[2] = {2, 3};
  EXPECT_EQ(bf("X^2+6*Y^2").evaluate(std::span<const Rational>(a)), 7);
  EXPECT_EQ(bf("X*Y").evaluate(std::span<const Rational>(b)), 0);
  EXPECT_EQ(bf("X^2*Y+X*Y^2").evaluate(std::span<const Rational>(c)), 30);
  const Rational bad[3] = {1, 2, 3};
  EXPECT_THROW(bf("X").evaluate(std::span<const Rational>(bad)), DomainError);
}

TEST(ContentNormalize, Examples) {
  auto [g1, c1] = content_normalize(bf("4*X^2+6*Y^2"));
  EXPECT_EQ(g1, bf("2*X^2+3*Y^2"));
  EXPECT_EQ(c1, 2);
  auto [g2, c2] = content_normalize(bf("1/2*X*Y"));
  EXPECT_EQ(g2, bf("X*Y"));
  EXPECT_EQ(c2, Rational(1, 2));
  auto [g3, c3] = content_normalize(bf("-3*X^2+6*X*Y-9*Y^2"));
  EXPECT_EQ(g3, bf("X^2-2*X*Y+3*Y^2"));
  EXPECT_EQ(c3, -3);
  EXPECT_THROW(content_normalize(HomogeneousForm(2, 2)), DomainError);
}

TEST(ContentNormalize, Idempotent) {
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const auto f = random_form(rng, 3, 3, 20) * oracle::ratio(random_int(rng, 1, 9), random_int(rng, 1, 9));
    const auto [g, c] = content_normalize(f);
    EXPECT_EQ(g * c, f);
    const auto [g2, c2] = content_normalize(g);
    EXPECT_EQ(g2, g);
    EXPECT_EQ(c2, 1);
  }
}

TEST(Parser, RoundTrip) {
  for (const char* s : {"X^2 + 6*Y^2", "1/2*X*Y", "-3*X^2 - Y^2", "X*Y*Z - 2*Z^3", "0"}) {
    const auto f = parse_form(s, std::string(s).find('Z') == std::string::npos ? 2 : 3);
    EXPECT_EQ(parse_form(format_form(f), f.n_vars()), f) << s;
  }
  EXPECT_EQ(format_form(bf("6Y^2 + X^2")), "X^2 + 6*Y^2");
  EXPECT_EQ(bf("(X+Y)^2"), bf("X^2+2*X*Y+Y^2"));
}

TEST(Parser, Errors) {
  EXPECT_THROW(bf("X^2 + Y"), ParseError);
  EXPECT_THROW(bf("X^"), ParseError);
  EXPECT_THROW(bf("W"), ParseError);
  EXPECT_THROW(bf("(X+Y"), ParseError);
  EXPECT_THROW(parse_form_list(""), ParseError);
}

TEST(Sylvester, Examples) {
  EXPECT_EQ(sylvester_resultant(bf("X^2"), bf("Y^2")), 1);
  EXPECT_EQ(sylvester_resultant(bf("X^2+6*Y^2"), bf("X*Y")), 6);
  EXPECT_EQ(sylvester_resultant(bf("X^2"), bf("X^2")), 0);
  EXPECT_THROW(sylvester_resultant(tf("X"), tf("Y")), DomainError);
}

TEST(Sylvester, MatchesLeibnizOracle) {
  Rng rng(3);
  for (int t = 0; t < 60; ++t) {
    const auto f = random_form(rng, 2, static_cast<int>(random_int(rng, 1, 4)), 7);
    const auto g = random_form(rng, 2, static_cast<int>(random_int(rng, 1, 3)), 7);
    EXPECT_EQ(sylvester_resultant(f, g), oracle::sylvester_leibniz(f, g));
  }
}

TEST(Sylvester, ProductOverRoots) {
  Rng rng(5);
  for (int t = 0; t < 60; ++t) {
    const auto F = random_split_binary_form(rng, static_cast<int>(random_int(rng, 1, 4)), 5);
    const auto g = random_form(rng, 2, static_cast<int>(random_int(rng, 1, 4)), 6);
    EXPECT_EQ(sylvester_resultant(F.form, g), oracle::product_over_roots(F.scale, F.roots, g));
  }
}

TEST(Sylvester, MultiplicativeAndAntisymmetric) {
  Rng rng(8);
  for (int t = 0; t < 40; ++t) {
    const auto f = random_form(rng, 2, static_cast<int>(random_int(rng, 1, 3)), 5);
    const auto h = random_form(rng, 2, static_cast<int>(random_int(rng, 1, 3)), 5);
    const auto g = random_form(rng, 2, static_cast<int>(random_int(rng, 1, 3)), 5);
    EXPECT_EQ(sylvester_resultant(f * h, g), sylvester_resultant(f, g) * sylvester_resultant(h, g));
    const int sign = (f.degree() * g.degree()) % 2 ? -1 : 1;
    EXPECT_EQ(sylvester_resultant(f, g), sylvester_resultant(g, f) * sign);
  }
}

TEST(Macaulay, Examples) {
  const std::vector<HomogeneousForm> lin{tf("X"), tf("Y"), tf("Z")};
  EXPECT_EQ(macaulay_resultant(lin).value, Rational(1));
  const std::vector<HomogeneousForm> deg{tf("X^2"), tf("X*Y"), tf("Z^2")};
  const auto r0 = macaulay_resultant(deg);
  EXPECT_FALSE(r0.nonzero);
  if (r0.value) {
    EXPECT_EQ(*r0.value, 0);
  }
  const std::vector<HomogeneousForm> sq{tf("X^2"), tf("Y^2"), tf("Z^2")};
  EXPECT_EQ(macaulay_resultant(sq).value, Rational(1));
}

TEST(Macaulay, AgreesWithSylvesterUpToSignOnP1) {
  Rng rng(13);
  for (int t = 0; t < 40; ++t) {
    const int d = static_cast<int>(random_int(rng, 1, 3));
    const std::vector<HomogeneousForm> fs{random_form(rng, 2, d, 5), random_form(rng, 2, d, 5)};
    const auto m = macaulay_resultant(fs);
    ASSERT_TRUE(m.value);
    EXPECT_EQ(abs(*m.value), abs(sylvester_resultant(fs[0], fs[1])));
  }
}

TEST(Macaulay, DiagonalPowers) {
  // Res(a X^d, b Y^d, c Z^d) = a^(d^2) b^(d^2) c^(d^2).
  for (int d = 1; d <= 3; ++d) {
    const std::vector<HomogeneousForm> fs{HomogeneousForm::term({d, 0, 0}, 2), HomogeneousForm::term({0, d, 0}, 3),
                                          HomogeneousForm::term({0, 0, d}, 1)};
    Rational expected = 1;
    for (int i = 0; i < d * d; ++i) expected *= 6;
    EXPECT_EQ(macaulay_resultant(fs).value, expected) << d;
  }
}

TEST(Macaulay, ZeroIffCommonZeroModSmallPrimes) {
  Rng rng(21);
  for (int t = 0; t < 20; ++t) {
    std::vector<HomogeneousForm> fs;
    for (int i = 0; i < 3; ++i) fs.push_back(random_form(rng, 3, 2, 3));
    if (t % 2 == 0) {
      // plant the common zero (1 : 1 : 1)
      for (auto& f : fs) {
        const Rational one[3] = {1, 1, 1};
        f -= HomogeneousForm::term({0, 0, 2}, f.evaluate(std::span<const Rational>(one)));
      }
      if (std::any_of(fs.begin(), fs.end(), [](const HomogeneousForm& f) { return f.is_zero(); })) continue;
    }
    const auto m = macaulay_resultant(fs);
    EXPECT_EQ(m.nonzero, no_common_zero_rank_test(fs));
    if (m.value) {
      EXPECT_EQ(m.nonzero, *m.value != 0);
      for (long p : {2, 3, 5, 7, 11, 13}) {
        if (oracle::common_zero_mod_p(fs, p)) {
          EXPECT_EQ(oracle::mod(m.value->get_num(), p), 0) << p;
        }
      }
    }
    if (t % 2 == 0) {
      EXPECT_FALSE(m.nonzero);
    }
  }
}

TEST(BinaryRoots, Basics) {
  using R = std::vector<std::pair<Integer, Integer>>;
  EXPECT_EQ(binary_rational_roots(bf("X^2-Y^2")), (R{{1, -1}, {1, 1}}));
  EXPECT_EQ(binary_rational_roots(bf("X*Y")), (R{{0, 1}, {1, 0}}));
  EXPECT_TRUE(binary_rational_roots(bf("X^2-2*Y^2")).empty());
  EXPECT_EQ(binary_rational_roots(bf("6*X^2-5*X*Y+Y^2")), (R{{1, 2}, {1, 3}}));
}
