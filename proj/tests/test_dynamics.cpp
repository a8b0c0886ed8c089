#include <gtest/gtest.h>

#include <deque>

#include "oracles.hpp"
#include "shafdyn/dynamics.hpp"
#include "shafdyn/errors.hpp"
#include "shafdyn/verify.hpp"

using namespace shafdyn;

namespace {

MorphismPN map(const std::string& s) { return MorphismPN::parse(s); }
ProjPoint pt(std::initializer_list<long> c) { return ProjPoint(c); }

}  // namespace

TEST(MorphismPN, CanonicalLiftAndErrors) {
  EXPECT_EQ(map("2*X^2 + 12*Y^2; 2*X*Y"), map("X^2+6*Y^2; X*Y"));
  EXPECT_EQ(map("-X^2; -Y^2"), map("X^2; Y^2"));
  EXPECT_THROW(map("X^2; X*Y"), DomainError);
  EXPECT_THROW(map("X^2; Y"), DomainError);
  EXPECT_EQ(map("X^2+6*Y^2; X*Y").to_string(), "X^2 + 6*Y^2; X*Y");
  EXPECT_EQ(MorphismPN::parameter_space_dimension(1, 2), 5);
  EXPECT_EQ(MorphismPN::parameter_space_dimension(2, 2), 17);
}

TEST(MorphismPN, ResultantOnP2) {
  EXPECT_EQ(map("X^2; Y^2; Z^2").resultant_value(), 1);
  EXPECT_THROW(map("X^2; X*Y; Z^2"), DomainError);
}

TEST(Apply, Examples) {
  EXPECT_EQ(apply(map("X^2; Y^2"), pt({2, 1})), pt({4, 1}));
  EXPECT_EQ(apply(map("X^2+6*Y^2; X*Y"), pt({1, 1})), pt({7, 1}));
  EXPECT_EQ(apply(map("X^2; Y^2"), pt({1, 0})), pt({1, 0}));
  EXPECT_THROW(apply(map("X^2; Y^2"), pt({1, 0, 0})), DomainError);
}

TEST(Iterate, Examples) {
  EXPECT_EQ(iterate(map("X^2; Y^2"), 2), map("X^4; Y^4"));
  EXPECT_EQ(iterate(map("X^2+Y^2; X*Y"), 2), map("(X^2+Y^2)^2 + X^2*Y^2; X*Y*(X^2+Y^2)"));
  const auto phi = map("X^2-3*X*Y; Y^2+X*Y");
  EXPECT_EQ(iterate(phi, 1), phi);
  EXPECT_THROW(iterate(phi, 7), ResourceError);
  EXPECT_THROW(iterate(phi, 0), DomainError);
}

TEST(Iterate, AgreesWithRepeatedApply) {
  Rng rng(9);
  for (int t = 0; t < 30; ++t) {
    const auto phi = random_map_p1(rng, 2, 4);
    const unsigned k = static_cast<unsigned>(random_int(rng, 1, 3));
    const ProjPoint p({random_int(rng, -5, 5), random_int(rng, 1, 5)});
    ProjPoint q = p;
    for (unsigned i = 0; i < k; ++i) q = oracle::step(phi, q);
    EXPECT_EQ(apply(iterate(phi, k), p), q);
  }
}

TEST(Conjugate, Examples) {
  const auto phi = map("X^2+Y^2; X*Y");
  EXPECT_EQ(conjugate(phi, ProjLinearMap::identity(1)), phi);
  EXPECT_EQ(conjugate(phi, ProjLinearMap::mobius(2, 0, 0, 1)), map("X^2+4*Y^2; X*Y"));
  EXPECT_EQ(conjugate(map("X^2; Y^2"), ProjLinearMap::mobius(0, 1, 1, 0)), map("X^2; Y^2"));
}

TEST(Conjugate, InverseUndoesAndCommutesWithIteration) {
  Rng rng(10);
  for (int t = 0; t < 30; ++t) {
    const auto phi = random_map_p1(rng, 2, 4);
    const auto f = random_linear_map(rng, 1, 3);
    EXPECT_EQ(conjugate(conjugate(phi, f), f.inverse()), phi);
    const unsigned k = static_cast<unsigned>(random_int(rng, 1, 3));
    EXPECT_EQ(iterate(conjugate(phi, f), k), conjugate(iterate(phi, k), f));
    // pointwise: phi^f (f(P)) = f(phi(P))
    const ProjPoint p({random_int(rng, -5, 5), 1L});
    EXPECT_EQ(apply(conjugate(phi, f), apply_map(f, p)), apply_map(f, oracle::step(phi, p)));
  }
}

TEST(Orbit, Examples) {
  const auto sq = map("X^2; Y^2");
  const auto a = orbit(sq, pt({1, 1}), 10);
  EXPECT_FALSE(a.truncated);
  EXPECT_EQ(a.tail_length, 0u);
  EXPECT_EQ(a.cycle_length, 1u);
  const auto b = orbit(sq, pt({-1, 1}), 10);
  EXPECT_EQ(b.tail_length, 1u);
  EXPECT_EQ(b.cycle_length, 1u);
  EXPECT_EQ(b.points, (std::vector<ProjPoint>{pt({-1, 1}), pt({1, 1})}));
  const auto c = orbit(sq, pt({2, 1}), 5);
  EXPECT_TRUE(c.truncated);
  EXPECT_EQ(c.points.size(), 5u);
  EXPECT_THROW(orbit(sq, pt({2, 1}), 0), DomainError);
}

TEST(Orbit, RecordInvariant) {
  Rng rng(12);
  for (int t = 0; t < 40; ++t) {
    const auto phi = random_map_p1(rng, 2, 3);
    const ProjPoint p({random_int(rng, -4, 4), random_int(rng, 1, 4)});
    const auto rec = orbit(phi, p, 8);
    if (rec.truncated) continue;
    EXPECT_EQ(rec.points.size(), rec.tail_length + rec.cycle_length);
    EXPECT_EQ(apply(phi, rec.points.back()), rec.points[rec.tail_length]);
  }
}

TEST(BadPrimes, Examples) {
  EXPECT_TRUE(bad_primes_of_model(map("X^2; Y^2")).empty());
  EXPECT_EQ(bad_primes_of_model(map("X^2+6*Y^2; X*Y")), (std::vector<Integer>{2, 3}));
  EXPECT_TRUE(bad_primes_of_model(map("X^2-Y^2; X*Y")).empty());
}

TEST(ReduceAtP, Examples) {
  const auto phi = map("X^2+6*Y^2; X*Y");
  const auto r5 = reduce_at_p(phi, 5);
  EXPECT_EQ(r5.degree, 2);
  EXPECT_TRUE(r5.is_morphism);
  const auto r3 = reduce_at_p(phi, 3);
  EXPECT_EQ(r3.degree, 1);
  EXPECT_FALSE(r3.is_morphism);
  EXPECT_EQ(r3.reduced[0].lift(), parse_form("X^2", 2));
  EXPECT_EQ(r3.reduced[1].lift(), parse_form("X*Y", 2));
  const auto r2 = reduce_at_p(map("X^2; Y^2"), 2);
  EXPECT_EQ(r2.degree, 2);
  EXPECT_TRUE(r2.is_morphism);
}

TEST(ReduceAtP, CoherentWithResultantOnP1AndP2) {
  Rng rng(14);
  for (int t = 0; t < 30; ++t) {
    const auto phi = random_map_p1(rng, 2, 6);
    const Rational res = oracle::sylvester_leibniz(phi.forms()[0], phi.forms()[1]);
    for (long p : {2, 3, 5, 7, 11, 13}) EXPECT_EQ(reduce_at_p(phi, p).is_morphism, oracle::mod(res.get_num(), p) != 0);
  }
  const auto phi2 = map("X^2 + 2*Y*Z; Y^2 + 3*X*Z; Z^2");
  const Rational res2 = phi2.resultant_value();
  for (long p : {2, 3, 5, 7})
    EXPECT_EQ(reduce_at_p(phi2, p).is_morphism, oracle::mod(res2.get_num(), p) != 0) << p;
}

TEST(SModel, Examples) {
  EXPECT_TRUE(is_s_model(map("X^2+6*Y^2; X*Y"), PlaceSet{2, 3}));
  EXPECT_FALSE(is_s_model(map("X^2+6*Y^2; X*Y"), PlaceSet{}));
  EXPECT_TRUE(is_s_model(map("X^2; Y^2"), PlaceSet{}));
}

TEST(GoodReduction, Examples) {
  const auto a = good_reduction_search(map("X^2+4*Y^2; X*Y"), 2, 4);
  ASSERT_TRUE(a.found);
  EXPECT_EQ(*a.model, map("X^2+Y^2; X*Y"));
  EXPECT_EQ(*a.witness, ProjLinearMap::mobius(1, 0, 0, 2));
  EXPECT_EQ(conjugate(map("X^2+4*Y^2; X*Y"), *a.witness), *a.model);

  for (unsigned budget = 1; budget <= 4; ++budget)
    EXPECT_FALSE(good_reduction_search(map("X^2+2*Y^2; X*Y"), 2, budget).found);

  const auto c = good_reduction_search(map("X^2; Y^2"), 7, 1);
  EXPECT_TRUE(c.found);
  EXPECT_EQ(*c.witness, ProjLinearMap::identity(1));
  EXPECT_THROW(good_reduction_search(map("X^2; Y^2; Z^2"), 2, 1), UnsupportedError);
  EXPECT_THROW(good_reduction_search(map("X^2; Y^2"), 2, 0), DomainError);
}

TEST(GoodReduction, ElementaryBallHasNoGoodModelForGammaTwo) {
  // Breadth-first search over every word of length <= 3 in the elementary moves.
  const auto moves = elementary_moves(2, 3);
  std::set<std::string> seen;
  std::deque<std::pair<MorphismPN, int>> queue{{map("X^2+2*Y^2; X*Y"), 0}};
  while (!queue.empty()) {
    auto [phi, depth] = queue.front();
    queue.pop_front();
    EXPECT_GT(valuation(phi.resultant_value(), 2), 0) << phi.to_string();
    if (depth == 3) continue;
    for (const auto& m : moves) {
      auto next = conjugate(phi, m);
      if (seen.insert(next.to_string()).second) queue.emplace_back(next, depth + 1);
    }
  }
}

TEST(Preperiodic, Examples) {
  const std::set<ProjPoint> sq2{pt({0, 1}), pt({1, 1}), pt({-1, 1}), pt({1, 0})};
  EXPECT_EQ(rational_preperiodic(map("X^2; Y^2"), 2, 100), sq2);
  const std::set<ProjPoint> sq1{pt({0, 1}), pt({1, 1}), pt({1, 0})};
  EXPECT_EQ(rational_preperiodic(map("X^2; Y^2"), 1, 100), sq1);
  const std::set<ProjPoint> six{pt({0, 1}), pt({1, 0})};
  EXPECT_EQ(rational_preperiodic(map("X^2+6*Y^2; X*Y"), 2, 100), six);
  EXPECT_THROW(rational_preperiodic(map("X; Y"), 2, 10), DomainError);
}

TEST(Preperiodic, MatchesBruteForce) {
  Rng rng(15);
  for (int t = 0; t < 10; ++t) {
    const auto phi = random_map_p1(rng, 2, 3);
    const std::size_t M = static_cast<std::size_t>(random_int(rng, 1, 3));
    PreperiodicOptions opts;
    opts.periodic_roots = false;
    EXPECT_EQ(rational_preperiodic(phi, M, 12, opts), oracle::brute_preperiodic_p1(phi, M, 12)) << phi.to_string();
  }
}

TEST(Preperiodic, PeriodicRootsBeyondHeightBound) {
  // z -> z^2 - 29/16 (Flynn-Poonen-Schaefer) has a rational 3-cycle of height 16.
  const auto phi = map("16*X^2 - 29*Y^2; 16*Y^2");
  const auto pts = rational_preperiodic(phi, 3, 5);
  EXPECT_TRUE(pts.contains(pt({-1, 4})));
  EXPECT_TRUE(pts.contains(pt({-7, 4})));
  EXPECT_TRUE(pts.contains(pt({5, 4})));
}

TEST(Preperiodic, EquivariantUnderUnimodularMaps) {
  const auto phi = map("X^2; Y^2");
  const auto f = ProjLinearMap::mobius(1, 1, 0, 1);
  const auto base = rational_preperiodic(phi, 2, 20);
  const auto moved = rational_preperiodic(conjugate(phi, f), 2, 25);
  for (const auto& p : base) EXPECT_TRUE(moved.contains(apply_map(f, p))) << p.to_string();
}

TEST(CriticalPoints, TwistFamily) {
  EXPECT_EQ(rational_critical_points(map("X^2+Y^2; X*Y")), (std::vector<ProjPoint>{pt({-1, 1}), pt({1, 1})}));
  EXPECT_TRUE(rational_critical_points(map("X^2+2*Y^2; X*Y")).empty());
}

TEST(BoundedHeight, Count) {
  // P^1 points of height <= 2: inf, 0, +-1, +-2, +-1/2.
  EXPECT_EQ(points_of_bounded_height(1, 2).size(), 8u);
  EXPECT_THROW(points_of_bounded_height(1, 2000000), ResourceError);
}
