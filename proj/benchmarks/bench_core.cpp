#include <benchmark/benchmark.h>

#include "shafdyn/dynamics.hpp"
#include "shafdyn/forms.hpp"
#include "shafdyn/shafarevich.hpp"
#include "shafdyn/verify.hpp"

using namespace shafdyn;

static void BM_Sylvester(benchmark::State& state) {
  Rng rng(1);
  const int d = static_cast<int>(state.range(0));
  const auto f = random_split_binary_form(rng, d, 20).form;
  const auto g = random_split_binary_form(rng, d, 20).form;
  for (auto _ : state) benchmark::DoNotOptimize(sylvester_resultant(f, g));
}
BENCHMARK(BM_Sylvester)->Arg(2)->Arg(4)->Arg(8);

static void BM_MacaulayP2(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Rng rng(2);
  std::vector<HomogeneousForm> fs;
  for (int i = 0; i < 3; ++i) {
    HomogeneousForm f(3, d);
    for (const auto& m : monomials_of_degree(3, d)) f.add_term(m, Rational(random_int(rng, -5, 5)));
    fs.push_back(f);
  }
  for (auto _ : state) benchmark::DoNotOptimize(macaulay_resultant(fs));
}
BENCHMARK(BM_MacaulayP2)->Arg(1)->Arg(2)->Arg(3);

static void BM_Preperiodic(benchmark::State& state) {
  const auto phi = MorphismPN::parse("X^2 - 29/16*Y^2; Y^2");
  const Integer bound = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(rational_preperiodic(phi, 3, bound));
}
BENCHMARK(BM_Preperiodic)->Arg(20)->Arg(50)->Arg(100);

static void BM_TwistEnumeration(benchmark::State& state) {
  const auto phi = MorphismPN::parse("X^2+Y^2; X*Y");
  std::vector<Integer> primes;
  for (long p : {2, 3, 5, 7})
    if (static_cast<long>(primes.size()) < state.range(0)) primes.emplace_back(p);
  const PlaceSet S(primes);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_twist_set(phi, S));
}
BENCHMARK(BM_TwistEnumeration)->DenseRange(0, 4);
BENCHMARK_MAIN();
