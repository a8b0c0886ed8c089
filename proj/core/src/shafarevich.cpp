#include "shafdyn/shafarevich.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "shafdyn/errors.hpp"

namespace shafdyn {

namespace {

template <typename Fn>
bool for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return true;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    if (!fn(idx)) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::size_t rank_of_points(std::span<const ProjPoint> pts) {
  if (pts.empty()) return 0;
  RatMatrix m(pts.size(), pts[0].coords().size());
  for (std::size_t r = 0; r < pts.size(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = pts[r][c];
  return rank(std::move(m));
}

/// Columns lambda_i P_i with sum_{i<=n} lambda_i P_i = P_{n+1}; sends the
/// standard frame (e_0, ..., e_n, e_0 + ... + e_n) to the given frame.
RatMatrix frame_matrix(std::span<const ProjPoint> frame) {
  const std::size_t size = frame[0].coords().size();
  RatMatrix cols(size, size);
  for (std::size_t r = 0; r < size; ++r)
    for (std::size_t c = 0; c < size; ++c) cols(r, c) = frame[c][r];
  std::vector<Rational> rhs(frame[size].coords().begin(), frame[size].coords().end());
  auto lambda = solve(cols, rhs);
  if (!lambda) throw DomainError("map_from_frames: frame not in general position");
  for (std::size_t c = 0; c < size; ++c) {
    if ((*lambda)[c] == 0) throw DomainError("map_from_frames: frame not in general position");
    for (std::size_t r = 0; r < size; ++r) cols(r, c) *= (*lambda)[c];
  }
  return cols;
}

/// Preference among equally valid witnesses: small entries, then few signs,
/// then few off-diagonal entries.
auto witness_key(const ProjLinearMap& f) {
  Integer total = 0;
  std::size_t negatives = 0, off_diagonal = 0;
  const auto& m = f.lift();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      total += abs(m(r, c));
      if (m(r, c) < 0) ++negatives;
      if (r != c && m(r, c) != 0) ++off_diagonal;
    }
  return std::make_tuple(total, negatives, off_diagonal);
}

void keep_simplest(std::optional<ProjLinearMap>& best, const ProjLinearMap& f) {
  if (!best) {
    best = f;
    return;
  }
  const auto kf = witness_key(f), kb = witness_key(*best);
  if (kf < kb || (kf == kb && f < *best)) best = f;
}

std::size_t rational_root_count(const HomogeneousForm& f) { return binary_rational_roots(f).size(); }

/// Coefficient slots of a map of P^1 with the exponent of lambda picked up
/// under conjugation by z -> lambda z: X^(d-j) Y^j in F_0 gets 1 + j, in F_1 j.
struct Slot {
  Rational a;
  long e;
};

std::vector<Slot> torus_slots(const MorphismPN& phi) {
  const int d = phi.degree();
  std::vector<Slot> out;
  for (std::size_t form = 0; form < 2; ++form)
    for (int j = 0; j <= d; ++j)
      out.push_back({phi.forms()[form].coefficient(Monomial{d - j, j}), static_cast<long>(j) + (form == 0 ? 1 : 0)});
  return out;
}

/// lambda with diag(lambda, 1) conjugating phi to psi; both fix 0 and infinity setwise as arranged by the caller.
std::vector<Rational> torus_solutions(const MorphismPN& phi, const MorphismPN& psi) {
  const auto a = torus_slots(phi), b = torus_slots(psi);
  std::size_t ref = a.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i].a == 0) != (b[i].a == 0)) return {};
    if (ref == a.size() && a[i].a != 0) ref = i;
  }
  if (ref == a.size()) return {};
  const Rational base = b[ref].a / a[ref].a;
  std::vector<Rational> candidates;
  for (std::size_t i = 0; i < a.size() && candidates.empty(); ++i) {
    if (a[i].a == 0 || a[i].e == a[ref].e) continue;
    long m = a[i].e - a[ref].e;
    Rational t = (b[i].a / a[i].a) / base;
    if (m < 0) {
      m = -m;
      t = 1 / t;
    }
    Rational root;
    if (!exact_root(t, static_cast<unsigned>(m), root)) return {};
    candidates.push_back(root);
    if (m % 2 == 0) candidates.push_back(-root);
  }
  if (candidates.empty()) candidates.push_back(1);
  std::vector<Rational> out;
  for (const auto& lambda : candidates) {
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i) {
      if (a[i].a == 0) continue;
      Rational power = 1;
      const long m = a[i].e - a[ref].e;
      for (long k = 0; k < std::abs(m); ++k) power *= lambda;
      if (m < 0) power = 1 / power;
      ok = power * a[i].a * base == b[i].a;
    }
    if (ok) out.push_back(lambda);
  }
  return out;
}

/// Map sending 0 = (0:1) to p0 and infinity = (1:0) to p1.
ProjLinearMap two_point_map(const ProjPoint& p0, const ProjPoint& p1) {
  return ProjLinearMap(IntMatrix{{p1[0], p0[0]}, {p1[1], p0[1]}});
}

IsoResult torus_search(const MorphismPN& phi, const MorphismPN& psi, const PointSet& V, const PointSet& W) {
  IsoResult res;
  res.method = "two-point torus solve";
  const ProjPoint& p0 = V.points()[0];
  const ProjPoint& p1 = V.points()[1];
  const ProjLinearMap tp = two_point_map(p0, p1);
  const MorphismPN phi0 = conjugate(phi, tp.inverse());
  std::optional<ProjLinearMap> best;
  for (const auto& q0 : W.points())
    for (const auto& q1 : W.points()) {
      if (q0 == q1) continue;
      ++res.candidates_tested;
      const ProjLinearMap tq = two_point_map(q0, q1);
      const MorphismPN psi0 = conjugate(psi, tq.inverse());
      for (const auto& lambda : torus_solutions(phi0, psi0)) {
        const ProjLinearMap f = tq * ProjLinearMap(RatMatrix{{lambda, 0}, {0, 1}}) * tp.inverse();
        if (conjugate(phi, f) == psi) keep_simplest(best, f);
      }
    }
  res.verdict = best ? IsoVerdict::yes : IsoVerdict::no;
  res.witness = best;
  return res;
}

PointSet point_set_of(std::size_t n, const std::set<ProjPoint>& pts) {
  return PointSet(n, std::vector<ProjPoint>(pts.begin(), pts.end()));
}

}  // namespace

// ---------------------------------------------------------------------------

PointSet::PointSet(std::vector<ProjPoint> points) {
  if (points.empty()) throw DomainError("PointSet: empty point list");
  const std::size_t n = points.front().dimension();
  *this = PointSet(n, std::move(points));
}

PointSet::PointSet(std::size_t n, std::vector<ProjPoint> points) : n_(n), points_(std::move(points)) {
  for (const auto& p : points_)
    if (p.coords().size() != n_ + 1) throw DomainError("PointSet: mixed dimensions");
  std::sort(points_.begin(), points_.end());
  if (std::adjacent_find(points_.begin(), points_.end()) != points_.end())
    throw DomainError("PointSet: repeated point");
}

bool PointSet::contains(const ProjPoint& p) const { return std::binary_search(points_.begin(), points_.end(), p); }

bool PointSet::has_independent_frame() const { return rank_of_points(points_) == n_ + 1; }

std::optional<std::vector<ProjPoint>> PointSet::general_position_anchor() const {
  std::optional<std::vector<ProjPoint>> found;
  std::vector<ProjPoint> subset(n_ + 2);
  for_each_subset(points_.size(), n_ + 2, [&](const std::vector<std::size_t>& idx) {
    for (std::size_t i = 0; i < idx.size(); ++i) subset[i] = points_[idx[i]];
    if (!in_general_position(subset)) return true;
    found = subset;
    return false;
  });
  return found;
}

// ---------------------------------------------------------------------------

DecomposableForm::DecomposableForm(const std::vector<std::pair<LinearForm, unsigned>>& factors, const Rational& scalar)
    : scalar_(scalar) {
  if (factors.empty()) throw DomainError("DecomposableForm: no factors");
  if (scalar == 0) throw DomainError("DecomposableForm: zero scalar");
  std::map<ProjPoint, unsigned> merged;
  const std::size_t n_vars = factors.front().first.n_vars();
  for (const auto& [form, k] : factors) {
    if (k == 0) throw DomainError("DecomposableForm: multiplicity must be positive");
    if (form.n_vars() != n_vars) throw DomainError("DecomposableForm: mixed numbers of variables");
    const ProjPoint p = normalize_point(std::span<const Rational>(form.coeffs()));
    std::size_t i = 0;
    while (p[i] == 0) ++i;
    const Rational c = form.coeffs()[i] / Rational(p[i]);
    for (unsigned j = 0; j < k; ++j) scalar_ *= c;
    merged[p] += k;
  }
  for (const auto& [p, k] : merged) factors_.push_back({p, k});
}

int DecomposableForm::degree() const {
  int d = 0;
  for (const auto& f : factors_) d += static_cast<int>(f.multiplicity);
  return d;
}

DecomposableForm DecomposableForm::scaled(const Rational& gamma) const {
  if (gamma == 0) throw DomainError("DecomposableForm: zero scalar");
  DecomposableForm out = *this;
  out.scalar_ *= gamma;
  return out;
}

HomogeneousForm DecomposableForm::expand() const {
  HomogeneousForm out = HomogeneousForm::constant(n_vars(), scalar_);
  for (const auto& f : factors_) {
    const LinearForm l(std::vector<Rational>(f.coefficients.coords().begin(), f.coefficients.coords().end()));
    out = out * l.to_form().pow(f.multiplicity);
  }
  return out;
}

DecomposableForm form_of_point_set(const PointSet& V) {
  if (V.size() == 0) throw DomainError("form_of_point_set: empty set");
  std::vector<std::pair<LinearForm, unsigned>> factors;
  for (const auto& p : V.points())
    factors.emplace_back(LinearForm(std::vector<Rational>(p.coords().begin(), p.coords().end())), 1u);
  DecomposableForm F(factors, 1);
  if (F.expand().leading_coefficient() < 0) return F.scaled(-1);
  return F;
}

SIdeal discriminant_ideal(const DecomposableForm& F, const PlaceSet& S) {
  const std::size_t size = F.n_vars();
  std::vector<ProjPoint> pts;
  for (const auto& f : F.factors()) pts.push_back(f.coefficients);
  SIdeal out;
  bool any = false;
  std::vector<ProjPoint> subset(size);
  for_each_subset(pts.size(), size, [&](const std::vector<std::size_t>& idx) {
    for (std::size_t i = 0; i < size; ++i) subset[i] = pts[idx[i]];
    const Integer det = det_points(subset);
    if (det != 0) {
      any = true;
      out *= sideal_of_rational(Rational(det * det), S);
    }
    return true;
  });
  if (!any) throw DomainError("discriminant_ideal: no linearly independent subset of factors");
  return out;
}

ClassPReport in_class_P(const PointSet& V, const PlaceSet& S, std::size_t N) {
  ClassPReport r;
  r.cardinality = V.size() == N;
  r.independent_frame = V.size() > 0 && V.has_independent_frame();
  if (r.independent_frame) {
    r.discriminant = discriminant_ideal(form_of_point_set(V), S);
    r.unit_discriminant = r.discriminant->is_unit();
  }
  return r;
}

PointSet act(const ProjLinearMap& f, const PointSet& V) {
  if (f.dimension() != V.dimension()) throw DomainError("act: dimension mismatch");
  std::vector<ProjPoint> image;
  image.reserve(V.size());
  for (const auto& p : V.points()) image.push_back(apply_map(f, p));
  return PointSet(V.dimension(), std::move(image));
}

bool discriminant_invariance_check(const PointSet& V, const ProjLinearMap& f, const PlaceSet& S) {
  if (!is_s_unimodular(f, S)) throw DomainError("discriminant_invariance_check: map is not S-unimodular");
  if (!V.has_independent_frame()) throw DomainError("discriminant_invariance_check: no independent (n+1)-subset");
  return discriminant_ideal(form_of_point_set(V), S) == discriminant_ideal(form_of_point_set(act(f, V)), S);
}

std::optional<Rational> forced_scalar(const DecomposableForm& F, const DecomposableForm& G, const ProjLinearMap& A) {
  if (F.n_vars() != G.n_vars() || A.lift().rows() != F.n_vars())
    throw DomainError("forced_scalar: dimension mismatch");
  if (F.degree() != G.degree()) return std::nullopt;
  const HomogeneousForm lhs = F.expand();
  const HomogeneousForm rhs = G.expand().substitute_linear(to_rational(A.lift()));
  const auto& [mono, coeff] = *lhs.terms().rbegin();
  const Rational other = rhs.coefficient(mono);
  if (other == 0) return std::nullopt;
  const Rational lambda = coeff / other;
  if (lhs != rhs * lambda) return std::nullopt;
  return lambda;
}

std::optional<FactorCorrespondence> weak_equivalence_transport(const DecomposableForm& F, const DecomposableForm& G,
                                                               const ProjLinearMap& A, const Rational& lambda) {
  if (F.degree() != G.degree()) throw DomainError("weak_equivalence_transport: degree mismatch");
  if (F.n_vars() != G.n_vars() || A.lift().rows() != F.n_vars())
    throw DomainError("weak_equivalence_transport: dimension mismatch");
  if (lambda == 0) return std::nullopt;
  if (F.expand() != G.expand().substitute_linear(to_rational(A.lift())) * lambda) return std::nullopt;
  const ProjLinearMap at = A.transpose();
  std::map<ProjPoint, unsigned> f_factors;
  for (const auto& f : F.factors()) f_factors[f.coefficients] = f.multiplicity;
  FactorCorrespondence out;
  for (const auto& g : G.factors()) {
    const ProjPoint p = apply_map(at, g.coefficients);
    const auto it = f_factors.find(p);
    if (it == f_factors.end() || it->second != g.multiplicity) return std::nullopt;
    out.emplace_back(p, g.coefficients);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ProjLinearMap map_from_frames(std::span<const ProjPoint> from, std::span<const ProjPoint> to) {
  if (from.empty() || from.size() != to.size() || from.size() != from[0].coords().size() + 1)
    throw DomainError("map_from_frames: need n+2 points on each side");
  for (std::size_t i = 0; i < from.size(); ++i)
    if (from[i].coords().size() != from[0].coords().size() || to[i].coords().size() != from[0].coords().size())
      throw DomainError("map_from_frames: dimension mismatch");
  return ProjLinearMap(frame_matrix(to)) * ProjLinearMap(frame_matrix(from)).inverse();
}

std::vector<ProjLinearMap> frame_candidates(const PointSet& V, const PointSet& W) {
  if (V.dimension() != W.dimension()) throw DomainError("frame_candidates: dimension mismatch");
  const auto anchor = V.general_position_anchor();
  if (!anchor) throw DomainError("frame_candidates: no n+2 points of V in general position");
  const std::size_t n = V.dimension();
  const auto& pts = W.points();
  std::vector<ProjLinearMap> out;
  std::vector<ProjPoint> tuple;
  std::vector<bool> used(pts.size(), false);
  auto extend = [&](auto&& self) -> void {
    if (tuple.size() == n + 2) {
      if (in_general_position(tuple)) out.push_back(map_from_frames(*anchor, tuple));
      return;
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (used[i]) continue;
      tuple.push_back(pts[i]);
      if (tuple.size() > n + 1 || rank_of_points(tuple) == tuple.size()) {
        used[i] = true;
        self(self);
        used[i] = false;
      }
      tuple.pop_back();
    }
  };
  extend(extend);
  return out;
}

std::vector<ProjLinearMap> maps_between(const PointSet& V, const PointSet& W) {
  if (V.size() != W.size()) throw DomainError("maps_between: sets differ in size");
  std::set<ProjLinearMap> found;
  for (const auto& f : frame_candidates(V, W))
    if (act(f, V) == W) found.insert(f);
  return {found.begin(), found.end()};
}

PointSet dynamical_point_set(const MorphismPN& phi, const DynamicalSearch& search) {
  std::set<ProjPoint> pts = rational_preperiodic(phi, search.M, search.height_bound);
  if (phi.dimension() == 1) {
    for (const auto& c : rational_critical_points(phi)) {
      ProjPoint x = c;
      pts.insert(x);
      for (std::size_t i = 1; i < search.M; ++i) {
        x = apply(phi, x);
        pts.insert(x);
      }
    }
  }
  return point_set_of(phi.dimension(), pts);
}

std::vector<ProjLinearMap> automorphism_group(const MorphismPN& phi, const DynamicalSearch& search) {
  if (phi.degree() < 2) throw DomainError("automorphism_group: degree must be at least 2");
  const PointSet V = dynamical_point_set(phi, search);
  if (!V.general_position_anchor())
    throw InconclusiveError("automorphism_group: fewer than n+2 rational points in general position");
  std::set<ProjLinearMap> found;
  for (const auto& f : frame_candidates(V, V))
    if (conjugate(phi, f) == phi) found.insert(f);
  return {found.begin(), found.end()};
}

std::string to_string(IsoVerdict v) {
  switch (v) {
    case IsoVerdict::yes: return "yes";
    case IsoVerdict::no: return "no";
    case IsoVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

IsoResult decide_isomorphism(const MorphismPN& phi, const MorphismPN& psi, const PointSet& V, const PointSet& W) {
  IsoResult res;
  res.phi_points = V.size();
  res.psi_points = W.size();
  if (V.general_position_anchor() && W.general_position_anchor()) {
    res.method = "frame enumeration";
    std::optional<ProjLinearMap> best;
    for (const auto& f : frame_candidates(V, W)) {
      ++res.candidates_tested;
      if (conjugate(phi, f) == psi) keep_simplest(best, f);
    }
    res.verdict = best ? IsoVerdict::yes : IsoVerdict::no;
    res.witness = best;
    return res;
  }
  if (phi.dimension() == 1 && V.size() >= 2 && W.size() >= 2) {
    IsoResult t = torus_search(phi, psi, V, W);
    t.phi_points = V.size();
    t.psi_points = W.size();
    return t;
  }
  res.method = "insufficient rational points";
  return res;
}

/// Exact conjugacy invariants on P^1; a mismatch proves non-isomorphism.
std::optional<std::string> invariant_mismatch(const MorphismPN& phi, const MorphismPN& psi, std::size_t M) {
  try {
    if (rational_critical_points(phi).size() != rational_critical_points(psi).size())
      return "rational critical point count";
    long power = 1;
    for (unsigned k = 1; k <= M; ++k) {
      power *= phi.degree();
      if (power > kMaxIterateDegree) break;
      if (rational_root_count(periodic_point_form(phi, k)) != rational_root_count(periodic_point_form(psi, k)))
        return "rational periodic point count (period dividing " + std::to_string(k) + ")";
    }
  } catch (const ResourceError&) {
  }
  return std::nullopt;
}

}  // namespace

IsoResult is_k_isomorphic(const MorphismPN& phi, const MorphismPN& psi, const DynamicalSearch& search) {
  if (phi.dimension() != psi.dimension() || phi.degree() != psi.degree())
    throw DomainError("is_k_isomorphic: dimension or degree mismatch");
  if (phi.dimension() == 1) {
    if (auto why = invariant_mismatch(phi, psi, search.M)) {
      IsoResult res;
      res.verdict = IsoVerdict::no;
      res.method = *why;
      return res;
    }
  }
  return decide_isomorphism(phi, psi, dynamical_point_set(phi, search), dynamical_point_set(psi, search));
}

// ---------------------------------------------------------------------------

bool is_odd(const MorphismPN& phi) {
  return phi.dimension() == 1 && conjugate(phi, ProjLinearMap::mobius(-1, 0, 0, 1)) == phi;
}

MorphismPN quadratic_twist(const MorphismPN& phi, const Rational& gamma) {
  if (gamma == 0) throw DomainError("quadratic_twist: gamma must be nonzero");
  if (phi.dimension() != 1 || !is_odd(phi)) throw UnsupportedError("quadratic_twist: map is not an odd map of P^1");
  // Lift of the conjugate by z -> c z is (c F_0(X, c Y), F_1(X, c Y)); each
  // coefficient picks up c^e with e of one parity, so c^e = gamma^(e/2) or
  // gamma^((e-1)/2) c, and a common factor c is dropped.
  const int d = phi.degree();
  std::vector<HomogeneousForm> out(2, HomogeneousForm(2, d));
  int parity = -1;
  for (std::size_t form = 0; form < 2; ++form)
    for (const auto& [mono, coeff] : phi.forms()[form].terms()) {
      const int e = mono[1] + (form == 0 ? 1 : 0);
      if (parity == -1) parity = e % 2;
      if (e % 2 != parity) throw UnsupportedError("quadratic_twist: map is not odd");
      Rational scale = 1;
      for (int k = 0; k < e / 2; ++k) scale *= gamma;
      out[form].add_term(mono, coeff * scale);
    }
  return MorphismPN(std::move(out));
}

TwistEnumeration enumerate_twist_set(const MorphismPN& phi, const PlaceSet& S, bool check_pairwise,
                                     const DynamicalSearch& search) {
  if (phi.dimension() != 1) throw UnsupportedError("enumerate_twist_set: only maps of P^1 are supported");
  if (!is_odd(phi)) throw UnsupportedError("enumerate_twist_set: map is not odd");
  if (!is_s_model(phi, S)) throw UnsupportedError("enumerate_twist_set: canonical lift is not an S-model");
  TwistEnumeration out;
  out.complete_relative_to_z2 = true;
  for (const auto& gamma : square_class_reps(S)) {
    MorphismPN model = quadratic_twist(phi, Rational(gamma.representative()));
    auto bad = bad_primes_of_model(model);
    const bool s_model = is_s_model(model, S);
    out.records.push_back(TwistRecord{gamma, std::move(model), std::move(bad), s_model, out.records.size()});
  }
  if (!check_pairwise) return out;
  std::vector<PointSet> sets;
  for (const auto& r : out.records) sets.push_back(dynamical_point_set(r.model, search));
  for (std::size_t i = 0; i < out.records.size(); ++i)
    for (std::size_t j = i + 1; j < out.records.size(); ++j) {
      const auto& a = out.records[i].model;
      const auto& b = out.records[j].model;
      IsoVerdict v;
      if (invariant_mismatch(a, b, search.M)) {
        v = IsoVerdict::no;
      } else {
        v = decide_isomorphism(a, b, sets[i], sets[j]).verdict;
      }
      out.pairwise.emplace_back(i, j, v);
      if (v == IsoVerdict::yes)
        out.records[j].k_iso_class = std::min(out.records[j].k_iso_class, out.records[i].k_iso_class);
    }
  return out;
}

}  // namespace shafdyn
