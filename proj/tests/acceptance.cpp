// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "shafdyn/dynamics.hpp"
#include "shafdyn/forms.hpp"
#include "shafdyn/serialize.hpp"
#include "shafdyn/shafarevich.hpp"
#include "shafdyn/verify.hpp"

using namespace shafdyn;

namespace {

constexpr double kFastLimitSeconds = 5.0;
constexpr double kSuiteLimitSeconds = 10.0;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, double limit, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit > 0 && secs >= limit) {
    out.pass = false;
    out.detail += " (time limit " + std::to_string(limit) + " s exceeded)";
  }
  if (!out.pass) ++failures;
  char timing[32];
  std::snprintf(timing, sizeof timing, "%.3fs", secs);
  std::cout << (out.pass ? "[PASS] " : "[FAIL] ") << "AC" << id << " " << title << " (" << timing << ")";
  if (!out.detail.empty()) std::cout << ": " << out.detail;
  std::cout << std::endl;
}

Outcome suite(const std::string& name, std::size_t trials) {
  const SuiteResult r = run_suite(name, VerifyOptions{trials, kSeed});
  std::string detail = std::to_string(r.passed) + "/" + std::to_string(r.trials) + " trials";
  for (const auto& f : r.failures) detail += "; " + f;
  return {r.ok() && r.trials == trials, detail};
}

const MorphismPN& base_map() {
  static const MorphismPN phi = MorphismPN::parse("X^2+Y^2; X*Y");
  return phi;
}

Outcome twist_enumeration() {
  const auto e = enumerate_twist_set(base_map(), PlaceSet{2, 3}, true, DynamicalSearch{3, 50});
  if (e.records.size() != 8) return {false, std::to_string(e.records.size()) + " records"};
  std::set<Integer> classes;
  for (const auto& r : e.records) {
    classes.insert(r.gamma.representative());
    if (!r.s_model) return {false, "record is not an S-model"};
    for (const auto& p : r.bad_primes)
      if (p != 2 && p != 3) return {false, "bad prime " + p.get_str()};
    const Rational res = oracle::sylvester_leibniz(r.model.forms()[0], r.model.forms()[1]);
    if (res != Rational(r.gamma.representative())) return {false, "resultant oracle mismatch"};
  }
  if (classes != std::set<Integer>{1, -1, 2, -2, 3, -3, 6, -6}) return {false, "unexpected square classes"};
  for (const auto& [i, j, v] : e.pairwise)
    if (v != IsoVerdict::no) return {false, "records " + std::to_string(i) + "," + std::to_string(j) + " not separated"};
  if (e.pairwise.size() != 28) return {false, "pairwise table incomplete"};
  return {true, "8 records, classes {+-1,+-2,+-3,+-6}, 28 pairs non-isomorphic"};
}

Outcome iso_witness() {
  const DynamicalSearch search{3, 50};
  const auto yes = is_k_isomorphic(base_map(), MorphismPN::parse("X^2+4*Y^2; X*Y"), search);
  if (yes.verdict != IsoVerdict::yes || !yes.witness || *yes.witness != ProjLinearMap::mobius(2, 0, 0, 1))
    return {false, "z+4/z: " + to_string(yes.verdict)};
  const auto no = is_k_isomorphic(base_map(), MorphismPN::parse("X^2+2*Y^2; X*Y"), search);
  if (no.verdict != IsoVerdict::no) return {false, "z+2/z: " + to_string(no.verdict)};
  return {true, "witness " + yes.witness->to_string() + ", z+2/z has no rational witness"};
}

Outcome discriminant_fixtures() {
  const PointSet unit{ProjPoint{0, 1}, ProjPoint{1, 1}, ProjPoint{1, 0}};
  const PointSet four{ProjPoint{0, 1}, ProjPoint{2, 1}, ProjPoint{1, 0}};
  const std::string unit_json = R"j({"ideal":"(1)","unit":true,"exponents":{}})j";
  const std::string four_json = R"j({"ideal":"(2^2)","unit":false,"exponents":{"2":2}})j";
  const std::string a = to_json(discriminant_ideal(form_of_point_set(unit), PlaceSet{})).dump();
  const std::string b = to_json(discriminant_ideal(form_of_point_set(four), PlaceSet{})).dump();
  const std::string c = to_json(discriminant_ideal(form_of_point_set(four), PlaceSet{2})).dump();
  if (a != unit_json) return {false, "{0,1,inf}: " + a};
  if (b != four_json) return {false, "{0,2,inf}, S={inf}: " + b};
  if (c != unit_json) return {false, "{0,2,inf}, S={inf,2}: " + c};
  return {true, "3 fixtures byte-exact"};
}

Outcome preperiodic() {
  const auto square = rational_preperiodic(MorphismPN::parse("X^2; Y^2"), 2, 100);
  const std::set<ProjPoint> square_expected{ProjPoint{0, 1}, ProjPoint{1, 1}, ProjPoint{1, -1}, ProjPoint{1, 0}};
  const auto six = rational_preperiodic(MorphismPN::parse("X^2+6*Y^2; X*Y"), 2, 100);
  const std::set<ProjPoint> six_expected{ProjPoint{0, 1}, ProjPoint{1, 0}};
  if (square != square_expected) return {false, "z^2 gives " + std::to_string(square.size()) + " points"};
  if (six != six_expected) return {false, "z+6/z gives " + std::to_string(six.size()) + " points"};
  if (oracle::brute_preperiodic_p1(MorphismPN::parse("X^2; Y^2"), 2, 100) != square_expected)
    return {false, "brute-force sweep disagrees for z^2"};
  if (oracle::brute_preperiodic_p1(MorphismPN::parse("X^2+6*Y^2; X*Y"), 2, 100) != six_expected)
    return {false, "brute-force sweep disagrees for z+6/z"};
  return {true, "{0,1,-1,inf} and {0,inf}"};
}

Outcome map_counting() {
  const PointSet V{ProjPoint{0, 1}, ProjPoint{1, 1}, ProjPoint{1, 0}};
  const auto maps = maps_between(V, V);
  const std::set<ProjLinearMap> got(maps.begin(), maps.end());
  const std::set<ProjLinearMap> expected{
      ProjLinearMap::mobius(1, 0, 0, 1),  ProjLinearMap::mobius(-1, 1, 0, 1), ProjLinearMap::mobius(0, 1, 1, 0),
      ProjLinearMap::mobius(0, 1, -1, 1), ProjLinearMap::mobius(1, -1, 1, 0), ProjLinearMap::mobius(1, 0, 1, -1)};
  if (maps.size() != 6 || got != expected) return {false, std::to_string(maps.size()) + " maps"};
  // S_3: closed, non-abelian, element orders {1, 2, 2, 2, 3, 3}
  std::multiset<int> orders;
  bool abelian = true;
  for (const auto& f : maps) {
    for (const auto& g : maps) {
      if (!got.contains(f * g)) return {false, "not closed"};
      if (f * g != g * f) abelian = false;
    }
    int k = 1;
    for (ProjLinearMap p = f; p != ProjLinearMap::identity(1); p = p * f) ++k;
    orders.insert(k);
  }
  if (abelian || orders != std::multiset<int>{1, 2, 2, 2, 3, 3}) return {false, "group is not S_3"};
  return {true, "6 maps, group S_3"};
}

Outcome resultant_agreement() {
  const Outcome binary = suite("resultant_oracle", 100);
  if (!binary.pass) return {false, "Sylvester: " + binary.detail};
  const std::vector<long> primes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
  Rng rng(kSeed);
  int disagreements = 0, zeros = 0;
  std::string first;
  for (int t = 0; t < 50; ++t) {
    std::vector<HomogeneousForm> fs;
    for (int i = 0; i < 3; ++i) {
      const int d = static_cast<int>(random_int(rng, 1, 2));
      HomogeneousForm f(3, d);
      while (f.is_zero())
        for (const auto& m : monomials_of_degree(3, d)) f.add_term(m, Rational(random_int(rng, -4, 4)));
      fs.push_back(f);
    }
    if (t % 2 == 0) {
      // plant a rational common zero (a : b : 1)
      const Rational at[3] = {Rational(random_int(rng, -3, 3)), Rational(random_int(rng, -3, 3)), 1};
      bool degenerate = false;
      for (auto& f : fs) {
        Monomial z(3, 0);
        z[2] = f.degree();
        f -= HomogeneousForm::term(z, f.evaluate(std::span<const Rational>(at)));
        degenerate = degenerate || f.is_zero();
      }
      if (degenerate) {
        --t;
        continue;
      }
    }
    const auto m = macaulay_resultant(fs);
    bool everywhere = true;
    for (long p : primes) {
      const bool found = oracle::common_zero_mod_p(fs, p);
      everywhere = everywhere && found;
      // a zero mod p forces p | Res
      if (found && m.value && oracle::mod(m.value->get_num(), p) != 0) {
        ++disagreements;
        if (first.empty()) first = "instance " + std::to_string(t) + ": zero mod " + std::to_string(p) + " but p does not divide Res";
      }
    }
    if (!m.nonzero) ++zeros;
    if (m.nonzero == everywhere) {
      ++disagreements;
      if (first.empty()) first = "instance " + std::to_string(t) + ": verdict " + (m.nonzero ? "nonzero" : "zero");
    }
  }
  if (disagreements) return {false, std::to_string(disagreements) + " disagreements, " + first};
  return {true, "100 binary trials; 50 P^2 instances (" + std::to_string(zeros) + " zero), primes <= 47, 0 disagreements"};
}

}  // namespace

int main() {
  report(1, "twist set of z+1/z over S={inf,2,3}", kFastLimitSeconds, twist_enumeration);
  report(2, "K-isomorphism witness", kFastLimitSeconds, iso_witness);
  report(3, "discriminant invariance under S-unimodular maps", kSuiteLimitSeconds,
         [] { return suite("discriminant_invariance", 100); });
  report(4, "closure of P(S,N) under the group action", kSuiteLimitSeconds,
         [] { return suite("class_p_closure", 100); });
  report(5, "exact discriminant fixtures", 0, discriminant_fixtures);
  report(6, "preperiodic enumeration", 0, preperiodic);
  report(7, "maps fixing {0,1,inf}", 0, map_counting);
  report(8, "resultant oracle agreement", 0, resultant_agreement);
  report(9, "conjugation commutes with iteration", 0, [] { return suite("conjugation_iteration", 100); });
  report(10, "reduction flag matches resultant divisibility", 0, [] { return suite("reduction_coherence", 50); });
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : "all criteria passed") << std::endl;
  return failures ? 1 : 0;
}
