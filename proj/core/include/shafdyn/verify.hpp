#ifndef SHAFDYN_VERIFY_HPP
#define SHAFDYN_VERIFY_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "shafdyn/arith.hpp"
#include "shafdyn/dynamics.hpp"
#include "shafdyn/projective.hpp"
#include "shafdyn/shafarevich.hpp"

namespace shafdyn {

using Rng = std::mt19937_64;

// Seeded generators shared by the verify command, tests and benchmarks.

long random_int(Rng& rng, long lo, long hi);

/// Distinct points with coordinates in [-height, height] and an independent
/// (n+1)-subset.
PointSet random_point_set(Rng& rng, std::size_t n, std::size_t size, long height);

/// Invertible integer lift with entries in [-bound, bound].
ProjLinearMap random_linear_map(Rng& rng, std::size_t n, long bound);

/// Lift in GL_{n+1}(O_S): elementary row operations times a diagonal of
/// signed powers of primes of S.
ProjLinearMap random_s_unimodular_map(Rng& rng, std::size_t n, const PlaceSet& S);

/// Degree-d map of P^1 with coefficients in [-bound, bound] and nonzero
/// resultant.
MorphismPN random_map_p1(Rng& rng, int d, long bound);

/// prod (b_i X - a_i Y) times c, with the roots (a_i : b_i) returned.
struct SplitBinaryForm {
  HomogeneousForm form;
  Integer scale;
  std::vector<std::pair<Integer, Integer>> roots;
};
SplitBinaryForm random_split_binary_form(Rng& rng, int degree, long bound);

struct SuiteResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t passed = 0;
  std::vector<std::string> failures;  // first few counterexamples
  bool ok() const { return passed == trials; }
};

struct VerifyOptions {
  std::size_t trials = 100;
  std::uint64_t seed = 0;
};

/// discriminant_invariance, class_p_closure, conjugation_iteration,
/// resultant_oracle, reduction_coherence, maps_group.
const std::vector<std::string>& invariant_suite_names();

/// Each suite reseeds from (seed, suite index), so suites are independent
/// of the order they run in. DomainError on an unknown name.
SuiteResult run_suite(const std::string& name, const VerifyOptions& options);

std::vector<SuiteResult> run_invariant_suites(const VerifyOptions& options);

}  // namespace shafdyn

#endif  // SHAFDYN_VERIFY_HPP
