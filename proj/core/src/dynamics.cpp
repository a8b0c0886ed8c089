#include "shafdyn/dynamics.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "shafdyn/errors.hpp"

namespace shafdyn {

namespace {

/// Scale the forms jointly to integer coefficients with gcd 1 and make the
/// first nonzero coefficient positive.
std::vector<HomogeneousForm> canonical_lift(std::vector<HomogeneousForm> forms) {
  Integer l = 1;
  for (const auto& f : forms)
    for (const auto& [m, c] : f.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  Integer g = 0;
  const Rational* first = nullptr;
  for (const auto& f : forms) {
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
      Rational v = it->second * l;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
      if (!first) first = &it->second;
    }
  }
  if (!first) throw DomainError("MorphismPN: all forms are zero");
  Rational scale(l, g);
  scale.canonicalize();
  if (*first < 0) scale = -scale;
  for (auto& f : forms) f *= scale;
  return forms;
}

std::optional<Rational> lift_resultant(const std::vector<HomogeneousForm>& forms) {
  if (forms.size() == 2) return sylvester_resultant(forms[0], forms[1]);
  const MacaulayResult r = macaulay_resultant(forms);
  if (r.value) return r.value;
  if (!r.nonzero) return Rational(0);
  return std::nullopt;
}

void validate_shape(const std::vector<HomogeneousForm>& forms) {
  if (forms.size() < 2) throw DomainError("MorphismPN: need n+1 >= 2 forms");
  const int d = forms[0].degree();
  if (d < 1) throw DomainError("MorphismPN: degree must be at least 1");
  for (const auto& f : forms) {
    if (f.n_vars() != forms.size()) throw DomainError("MorphismPN: need n+1 forms in n+1 variables");
    if (f.degree() != d && !f.is_zero()) throw DomainError("MorphismPN: forms must share one degree");
  }
}

}  // namespace

MorphismPN::MorphismPN(std::vector<HomogeneousForm> forms) {
  validate_shape(forms);
  const int d = forms[0].degree();
  for (auto& f : forms) {
    if (f.is_zero()) f = HomogeneousForm(f.n_vars(), d);
  }
  forms_ = canonical_lift(std::move(forms));
  resultant_ = lift_resultant(forms_);
  if (resultant_ && *resultant_ == 0) {
    throw DomainError("MorphismPN: resultant vanishes, the forms do not define a morphism");
  }
}

MorphismPN MorphismPN::parse(const std::string& text) { return MorphismPN(parse_form_list(text)); }

const Rational& MorphismPN::resultant_value() const {
  if (!resultant_) throw DomainError("MorphismPN: resultant value not available (degenerate Macaulay system)");
  return *resultant_;
}

Integer MorphismPN::parameter_space_dimension(std::size_t n, int d) {
  Integer binom;
  mpz_bin_uiui(binom.get_mpz_t(), n + static_cast<unsigned long>(d), static_cast<unsigned long>(d));
  return Integer(static_cast<unsigned long>(n + 1)) * binom - 1;
}

std::string MorphismPN::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < forms_.size(); ++i) {
    if (i) out += "; ";
    out += format_form(forms_[i]);
  }
  return out;
}

ProjPoint apply(const MorphismPN& phi, const ProjPoint& point) {
  if (point.coords().size() != phi.forms().size()) throw DomainError("apply: dimension mismatch");
  std::vector<Integer> image;
  image.reserve(phi.forms().size());
  for (const auto& f : phi.forms()) image.push_back(f.evaluate(std::span<const Integer>(point.coords())));
  return ProjPoint(image);
}

MorphismPN iterate(const MorphismPN& phi, unsigned k) {
  if (k == 0) throw DomainError("iterate: k must be positive");
  Integer total = 1;
  for (unsigned i = 0; i < k; ++i) {
    total *= phi.degree();
    if (total > kMaxIterateDegree) {
      throw ResourceError("iterate: degree " + std::to_string(phi.degree()) + "^" + std::to_string(k) +
                          " exceeds the cap of " + std::to_string(kMaxIterateDegree));
    }
  }
  std::vector<HomogeneousForm> current = phi.forms();
  for (unsigned i = 1; i < k; ++i) {
    std::vector<HomogeneousForm> next;
    next.reserve(current.size());
    for (const auto& f : phi.forms()) next.push_back(f.compose(current));
    current = std::move(next);
  }
  return MorphismPN(std::move(current));
}

MorphismPN conjugate(const MorphismPN& phi, const ProjLinearMap& f) {
  const std::size_t size = phi.forms().size();
  if (f.lift().rows() != size) throw DomainError("conjugate: dimension mismatch");
  const RatMatrix a = to_rational(f.lift());
  const RatMatrix inv = to_rational(adjugate(f.lift()));
  std::vector<HomogeneousForm> pulled;
  pulled.reserve(size);
  for (const auto& form : phi.forms()) pulled.push_back(form.substitute_linear(inv));
  std::vector<HomogeneousForm> out;
  for (std::size_t i = 0; i < size; ++i) {
    HomogeneousForm g(size, phi.degree());
    for (std::size_t j = 0; j < size; ++j) {
      if (a(i, j) != 0) g += pulled[j] * a(i, j);
    }
    out.push_back(std::move(g));
  }
  return MorphismPN(std::move(out));
}

OrbitRecord orbit(const MorphismPN& phi, const ProjPoint& start, std::size_t cap) {
  if (cap == 0) throw DomainError("orbit: cap must be positive");
  OrbitRecord rec;
  rec.start = start;
  std::map<ProjPoint, std::size_t> seen;
  ProjPoint current = start;
  while (true) {
    seen.emplace(current, rec.points.size());
    rec.points.push_back(current);
    ProjPoint next = apply(phi, current);
    auto it = seen.find(next);
    if (it != seen.end()) {
      rec.tail_length = it->second;
      rec.cycle_length = rec.points.size() - it->second;
      return rec;
    }
    if (rec.points.size() == cap) {
      rec.truncated = true;
      return rec;
    }
    current = std::move(next);
  }
}

std::vector<Integer> bad_primes_of_model(const MorphismPN& phi) {
  const Rational& res = phi.resultant_value();
  return prime_divisors(Integer(res.get_num()));
}

ReductionReport reduce_at_p(const MorphismPN& phi, const Integer& p) {
  const PrimeField field(p);
  ReductionReport rep;
  rep.p = p;
  for (const auto& f : phi.forms()) rep.reduced.push_back(reduce_form(f, field));
  const int common = common_factor_degree(rep.reduced, field);
  rep.degree = phi.degree() - common;
  if (phi.dimension() == 1) {
    rep.is_morphism = common == 0;
  } else {
    rep.is_morphism = no_common_zero_mod_p(rep.reduced, field);
  }
  return rep;
}

bool is_s_model(const MorphismPN& phi, const PlaceSet& S) { return is_s_unit(phi.resultant_value(), S); }

std::vector<ProjLinearMap> elementary_moves(const Integer& p, unsigned budget) {
  if (p > kMaxTranslationPrime) throw ResourceError("elementary_moves: p = " + p.get_str() + " needs too many translations");
  std::vector<ProjLinearMap> moves;
  Integer pk = 1;
  for (unsigned k = 1; k <= budget; ++k) {
    pk *= p;
    moves.emplace_back(IntMatrix{{pk, 0}, {0, 1}});
    moves.emplace_back(IntMatrix{{1, 0}, {0, pk}});
  }
  for (Integer c = 1; c < p; ++c) moves.emplace_back(IntMatrix{{1, c}, {0, 1}});
  moves.emplace_back(IntMatrix{{0, 1}, {1, 0}});
  return moves;
}

GoodReductionSearch good_reduction_search(const MorphismPN& phi, const Integer& p, unsigned budget) {
  if (phi.dimension() != 1) throw UnsupportedError("good_reduction_search: only implemented on P^1");
  if (budget == 0) throw DomainError("good_reduction_search: budget must be positive");
  if (!is_prime(p)) throw DomainError("good_reduction_search: " + p.get_str() + " is not prime");
  const auto moves = elementary_moves(p, budget);
  MorphismPN current = phi;
  ProjLinearMap witness = ProjLinearMap::identity(1);
  long v = valuation(current.resultant_value(), p);
  GoodReductionSearch out;
  while (v > 0 && out.steps < budget) {
    std::optional<std::size_t> best;
    long best_v = v;
    std::vector<MorphismPN> candidates;
    candidates.reserve(moves.size());
    for (std::size_t i = 0; i < moves.size(); ++i) {
      candidates.push_back(conjugate(current, moves[i]));
      const long cv = valuation(candidates.back().resultant_value(), p);
      if (cv < best_v) {
        best_v = cv;
        best = i;
      }
    }
    if (!best) break;
    current = candidates[*best];
    witness = moves[*best] * witness;
    v = best_v;
    ++out.steps;
  }
  out.best_valuation = v;
  out.found = v == 0;
  if (out.found) {
    out.witness = witness;
    out.model = current;
  }
  return out;
}

HomogeneousForm periodic_point_form(const MorphismPN& phi, unsigned k) {
  if (phi.dimension() != 1) throw UnsupportedError("periodic_point_form: only implemented on P^1");
  const MorphismPN it = iterate(phi, k);
  const auto& f = it.forms();
  const HomogeneousForm x = HomogeneousForm::variable(2, 0);
  const HomogeneousForm y = HomogeneousForm::variable(2, 1);
  return y * f[0] - x * f[1];
}

std::vector<ProjPoint> rational_critical_points(const MorphismPN& phi) {
  if (phi.dimension() != 1) throw UnsupportedError("rational_critical_points: only implemented on P^1");
  const auto& f = phi.forms();
  const HomogeneousForm jac = f[0].derivative(0) * f[1].derivative(1) - f[0].derivative(1) * f[1].derivative(0);
  std::vector<ProjPoint> out;
  if (jac.is_zero() || jac.degree() == 0) return out;
  for (const auto& [a, b] : binary_rational_roots(jac)) out.push_back(ProjPoint(std::vector<Integer>{a, b}));
  return out;
}

std::vector<ProjPoint> points_of_bounded_height(std::size_t n, const Integer& bound) {
  if (bound < 1) throw DomainError("points_of_bounded_height: bound must be positive");
  if (bound > 1000000) throw ResourceError("points_of_bounded_height: bound too large");
  const long b = bound.get_si();
  const std::size_t size = n + 1;
  std::vector<ProjPoint> out;
  std::vector<long> v(size, -b);
  std::vector<Integer> coords(size);
  while (true) {
    // canonical: first nonzero positive, gcd 1
    auto first = std::find_if(v.begin(), v.end(), [](long x) { return x != 0; });
    if (first != v.end() && *first > 0) {
      long g = 0;
      for (long x : v) g = std::gcd(g, x);
      if (g == 1) {
        for (std::size_t i = 0; i < size; ++i) coords[i] = v[i];
        out.emplace_back(coords);
      }
    }
    std::size_t i = size;
    while (i > 0 && v[i - 1] == b) {
      v[i - 1] = -b;
      --i;
    }
    if (i == 0) break;
    ++v[i - 1];
  }
  return out;
}

std::set<ProjPoint> rational_preperiodic(const MorphismPN& phi, std::size_t M, const Integer& height_bound,
                                         const PreperiodicOptions& options) {
  if (phi.degree() < 2) throw DomainError("rational_preperiodic: degree must be at least 2");
  if (M == 0) throw DomainError("rational_preperiodic: M must be positive");
  std::set<ProjPoint> result;
  std::set<ProjPoint> rejected;
  auto consider = [&](const ProjPoint& p) {
    if (result.count(p) || rejected.count(p)) return;
    const OrbitRecord rec = orbit(phi, p, M);
    if (rec.truncated) {
      rejected.insert(p);
      return;
    }
    // Every point of a finite orbit of size <= M has an orbit of size <= M.
    result.insert(rec.points.begin(), rec.points.end());
  };
  for (const auto& p : points_of_bounded_height(phi.dimension(), height_bound)) consider(p);
  if (options.periodic_roots && phi.dimension() == 1) {
    Integer degree_power = 1;
    for (std::size_t k = 1; k <= M; ++k) {
      degree_power *= phi.degree();
      if (degree_power > kMaxIterateDegree) break;
      const HomogeneousForm form = periodic_point_form(phi, static_cast<unsigned>(k));
      if (form.is_zero()) continue;
      try {
        for (const auto& [a, b] : binary_rational_roots(form)) consider(ProjPoint(std::vector<Integer>{a, b}));
      } catch (const ResourceError&) {
        // Root candidates too numerous; the height search still stands.
      }
    }
  }
  return result;
}

}  // namespace shafdyn
