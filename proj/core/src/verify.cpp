#include "shafdyn/verify.hpp"

#include <set>
#include <stdexcept>

#include "shafdyn/errors.hpp"
#include "shafdyn/forms.hpp"

namespace shafdyn {

long random_int(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

PointSet random_point_set(Rng& rng, std::size_t n, std::size_t size, long height) {
  if (size < n + 1) throw DomainError("random_point_set: need at least n+1 points");
  while (true) {
    std::set<ProjPoint> pts;
    for (int attempts = 0; pts.size() < size && attempts < 1000; ++attempts) {
      std::vector<Integer> c(n + 1);
      bool zero = true;
      for (auto& x : c) {
        x = random_int(rng, -height, height);
        zero = zero && x == 0;
      }
      if (!zero) pts.insert(ProjPoint(c));
    }
    if (pts.size() < size) throw DomainError("random_point_set: height too small for the requested size");
    PointSet V(n, {pts.begin(), pts.end()});
    if (V.has_independent_frame()) return V;
  }
}

ProjLinearMap random_linear_map(Rng& rng, std::size_t n, long bound) {
  while (true) {
    IntMatrix m(n + 1, n + 1);
    for (std::size_t r = 0; r <= n; ++r)
      for (std::size_t c = 0; c <= n; ++c) m(r, c) = random_int(rng, -bound, bound);
    if (determinant(m) != 0) return ProjLinearMap(m);
  }
}

ProjLinearMap random_s_unimodular_map(Rng& rng, std::size_t n, const PlaceSet& S) {
  const std::size_t size = n + 1;
  IntMatrix m = IntMatrix::identity(size);
  for (int step = 0; step < 3 * static_cast<int>(size); ++step) {
    const auto i = static_cast<std::size_t>(random_int(rng, 0, static_cast<long>(n)));
    auto j = static_cast<std::size_t>(random_int(rng, 0, static_cast<long>(n) - 1));
    if (j >= i) ++j;
    const long c = random_int(rng, -3, 3);
    for (std::size_t k = 0; k < size; ++k) m(i, k) += c * m(j, k);
  }
  for (std::size_t r = 0; r < size; ++r) {
    Integer scale = random_int(rng, 0, 1) ? 1 : -1;
    for (const auto& p : S.primes()) {
      const long e = random_int(rng, 0, 2);
      for (long k = 0; k < e; ++k) scale *= p;
    }
    for (std::size_t c = 0; c < size; ++c) m(r, c) *= scale;
  }
  return ProjLinearMap(m);
}

MorphismPN random_map_p1(Rng& rng, int d, long bound) {
  const auto monos = monomials_of_degree(2, d);
  while (true) {
    std::vector<HomogeneousForm> forms(2, HomogeneousForm(2, d));
    for (auto& f : forms)
      for (const auto& m : monos) f.add_term(m, Rational(random_int(rng, -bound, bound)));
    try {
      return MorphismPN(std::move(forms));
    } catch (const DomainError&) {
    }
  }
}

SplitBinaryForm random_split_binary_form(Rng& rng, int degree, long bound) {
  SplitBinaryForm out;
  do {
    out.scale = random_int(rng, -bound, bound);
  } while (out.scale == 0);
  out.form = HomogeneousForm::constant(2, Rational(out.scale));
  for (int i = 0; i < degree; ++i) {
    Integer a, b;
    do {
      a = random_int(rng, -bound, bound);
      b = random_int(rng, -bound, bound);
    } while (a == 0 && b == 0);
    HomogeneousForm l = HomogeneousForm::variable(2, 0) * Rational(b) - HomogeneousForm::variable(2, 1) * Rational(a);
    out.form = out.form * l;
    out.roots.emplace_back(a, b);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

const PlaceSet& closure_places() {
  static const PlaceSet S{2, 3, 5, 7};
  return S;
}

PlaceSet random_place_set(Rng& rng) {
  static const long pool[] = {2, 3, 5, 7};
  std::vector<Integer> primes;
  for (long p : pool)
    if (random_int(rng, 0, 1)) primes.emplace_back(p);
  return PlaceSet(std::move(primes));
}

using Trial = std::string (*)(Rng&, std::size_t);

std::string trial_discriminant_invariance(Rng& rng, std::size_t t) {
  const std::size_t n = t % 2 == 0 ? 1 : 2;
  const std::size_t size = static_cast<std::size_t>(random_int(rng, std::max<long>(3, static_cast<long>(n) + 1), 6));
  const PointSet V = random_point_set(rng, n, size, 4);
  const PlaceSet S = random_place_set(rng);
  const ProjLinearMap f = random_s_unimodular_map(rng, n, S);
  if (discriminant_invariance_check(V, f, S)) return {};
  return "V=" + std::to_string(V.size()) + " points, f=" + f.to_string() + ", S=" + S.to_string();
}

std::string trial_class_p_closure(Rng& rng, std::size_t t) {
  const std::size_t n = t % 2 == 0 ? 1 : 2;
  const PlaceSet& S = closure_places();
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const std::size_t size = static_cast<std::size_t>(random_int(rng, static_cast<long>(n) + 2, static_cast<long>(n) + 3));
    const PointSet V = random_point_set(rng, n, size, 2);
    if (!in_class_P(V, S, size).member()) continue;
    const ProjLinearMap f = random_s_unimodular_map(rng, n, S);
    if (in_class_P(act(f, V), S, size).member()) return {};
    return "closure failed for f=" + f.to_string();
  }
  return "no member of P(S,N) found";
}

std::string trial_conjugation_iteration(Rng& rng, std::size_t) {
  const MorphismPN phi = random_map_p1(rng, 2, 4);
  const ProjLinearMap f = random_linear_map(rng, 1, 3);
  const unsigned k = static_cast<unsigned>(random_int(rng, 1, 3));
  if (iterate(conjugate(phi, f), k) == conjugate(iterate(phi, k), f)) return {};
  return "phi=" + phi.to_string() + ", f=" + f.to_string() + ", k=" + std::to_string(k);
}

std::string trial_resultant_oracle(Rng& rng, std::size_t) {
  const int df = static_cast<int>(random_int(rng, 1, 4));
  const int dg = static_cast<int>(random_int(rng, 1, 4));
  const SplitBinaryForm F = random_split_binary_form(rng, df, 5);
  HomogeneousForm G(2, dg);
  while (G.is_zero())
    for (const auto& m : monomials_of_degree(2, dg)) G.add_term(m, Rational(random_int(rng, -6, 6)));
  // Res(c prod (b_i X - a_i Y), G) = c^deg(G) prod G(a_i, b_i).
  Rational expected = 1;
  for (int i = 0; i < dg; ++i) expected *= F.scale;
  for (const auto& [a, b] : F.roots) {
    const Integer pt[2] = {a, b};
    expected *= G.evaluate(std::span<const Integer>(pt));
  }
  const Rational got = sylvester_resultant(F.form, G);
  if (got == expected) return {};
  return "F=" + format_form(F.form) + ", G=" + format_form(G) + ": " + got.get_str() + " vs " + expected.get_str();
}

std::string trial_reduction_coherence(Rng& rng, std::size_t) {
  const MorphismPN phi = random_map_p1(rng, 2, 9);
  const Rational& res = phi.resultant_value();
  for (long p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29}) {
    const bool expected = mpz_divisible_ui_p(res.get_num_mpz_t(), static_cast<unsigned long>(p)) == 0;
    if (reduce_at_p(phi, p).is_morphism != expected) return "phi=" + phi.to_string() + ", p=" + std::to_string(p);
  }
  return {};
}

std::string trial_maps_group(Rng& rng, std::size_t t) {
  const std::size_t n = t % 3 == 2 ? 2 : 1;
  const std::size_t size = n + 2 + static_cast<std::size_t>(random_int(rng, 0, 1));
  PointSet V = random_point_set(rng, n, size, 2);
  if (!V.general_position_anchor()) return {};
  const auto maps = maps_between(V, V);
  const std::set<ProjLinearMap> group(maps.begin(), maps.end());
  if (!group.contains(ProjLinearMap::identity(n))) return "identity missing";
  for (const auto& f : maps) {
    if (!group.contains(f.inverse())) return "not closed under inverses: " + f.to_string();
    for (const auto& g : maps)
      if (!group.contains(f * g)) return "not closed under composition: " + f.to_string() + " * " + g.to_string();
  }
  return {};
}

struct SuiteDef {
  const char* name;
  Trial trial;
};

const std::vector<SuiteDef>& suites() {
  static const std::vector<SuiteDef> defs = {
      {"discriminant_invariance", trial_discriminant_invariance},
      {"class_p_closure", trial_class_p_closure},
      {"conjugation_iteration", trial_conjugation_iteration},
      {"resultant_oracle", trial_resultant_oracle},
      {"reduction_coherence", trial_reduction_coherence},
      {"maps_group", trial_maps_group},
  };
  return defs;
}

}  // namespace

const std::vector<std::string>& invariant_suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : suites()) out.emplace_back(s.name);
    return out;
  }();
  return names;
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& options) {
  const auto& defs = suites();
  for (std::size_t i = 0; i < defs.size(); ++i) {
    if (name != defs[i].name) continue;
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(i)};
    Rng rng(seq);
    SuiteResult out;
    out.name = name;
    for (std::size_t t = 0; t < options.trials; ++t) {
      ++out.trials;
      std::string failure;
      try {
        failure = defs[i].trial(rng, t);
      } catch (const std::exception& e) {
        failure = std::string("exception: ") + e.what();
      }
      if (failure.empty()) {
        ++out.passed;
      } else if (out.failures.size() < 5) {
        out.failures.push_back("trial " + std::to_string(t) + ": " + failure);
      }
    }
    return out;
  }
  throw DomainError("unknown verification suite '" + name + "'");
}

std::vector<SuiteResult> run_invariant_suites(const VerifyOptions& options) {
  std::vector<SuiteResult> out;
  for (const auto& name : invariant_suite_names()) out.push_back(run_suite(name, options));
  return out;
}

}  // namespace shafdyn
