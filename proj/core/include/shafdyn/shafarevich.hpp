#ifndef SHAFDYN_SHAFAREVICH_HPP
#define SHAFDYN_SHAFAREVICH_HPP

#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "shafdyn/arith.hpp"
#include "shafdyn/dynamics.hpp"
#include "shafdyn/forms.hpp"
#include "shafdyn/projective.hpp"

namespace shafdyn {

/// A finite set of rational points of P^n. All coordinates are rational, so
/// Galois stability holds automatically.
class PointSet {
 public:
  PointSet() = default;
  /// Throws DomainError on mixed dimensions, an empty list, or repeats.
  explicit PointSet(std::vector<ProjPoint> points);
  /// Possibly empty set in P^n.
  PointSet(std::size_t n, std::vector<ProjPoint> points);
  PointSet(std::initializer_list<ProjPoint> points) : PointSet(std::vector<ProjPoint>(points)) {}

  std::size_t dimension() const { return n_; }
  std::size_t size() const { return points_.size(); }
  /// Sorted by canonical coordinates.
  const std::vector<ProjPoint>& points() const { return points_; }
  bool contains(const ProjPoint& p) const;

  /// Some n+1 of the points are linearly independent.
  bool has_independent_frame() const;

  /// Lexicographically first (n+2)-subset in general position, if any.
  std::optional<std::vector<ProjPoint>> general_position_anchor() const;

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<ProjPoint> points_;
};

/// lambda * prod l_i^k_i over rational linear forms. Factors are stored as
/// canonical points (primitive integer coefficient vectors), so distinct
/// entries are automatically non-proportional and their content ideals are
/// trivial.
class DecomposableForm {
 public:
  struct Factor {
    ProjPoint coefficients;
    unsigned multiplicity = 1;
  };

  /// Proportional factors are merged; their scalars move into lambda.
  DecomposableForm(const std::vector<std::pair<LinearForm, unsigned>>& factors, const Rational& scalar);

  std::size_t n_vars() const { return factors_.front().coefficients.coords().size(); }
  int degree() const;
  const std::vector<Factor>& factors() const { return factors_; }
  const Rational& scalar() const { return scalar_; }

  DecomposableForm scaled(const Rational& gamma) const;
  HomogeneousForm expand() const;

 private:
  DecomposableForm() = default;

  std::vector<Factor> factors_;
  Rational scalar_ = 1;
};

/// F_V = prod over P in V of l_P, with scalar +-1 so the expansion is
/// primitive with positive leading coefficient.
DecomposableForm form_of_point_set(const PointSet& V);

/// prod over independent (n+1)-subsets of distinct factors of det^2; the
/// content ideals are trivial for primitive factors. Throws DomainError
/// if no independent subset exists.
SIdeal discriminant_ideal(const DecomposableForm& F, const PlaceSet& S);

struct ClassPReport {
  bool cardinality = false;      // |V| = N
  bool galois_stable = true;     // vacuous over Q
  bool independent_frame = false;
  bool unit_discriminant = false;
  std::optional<SIdeal> discriminant;
  bool member() const { return cardinality && galois_stable && independent_frame && unit_discriminant; }
};

ClassPReport in_class_P(const PointSet& V, const PlaceSet& S, std::size_t N);

PointSet act(const ProjLinearMap& f, const PointSet& V);

/// D(F_V) == D(F_f(V)). Requires f S-unimodular and V to have an
/// independent frame (DomainError otherwise).
bool discriminant_invariance_check(const PointSet& V, const ProjLinearMap& f, const PlaceSet& S);

/// lambda with F = lambda * G(A X), if the two sides are proportional.
std::optional<Rational> forced_scalar(const DecomposableForm& F, const DecomposableForm& G, const ProjLinearMap& A);

/// Pairs (P, Q): factor l_P of F matched with factor l_Q of G so that
/// P = a(Q) for the projective map a of A^t.
using FactorCorrespondence = std::vector<std::pair<ProjPoint, ProjPoint>>;

/// Checks F(X) = lambda G(A X) exactly. On success returns the factor
/// matching induced by A^t; on failure nullopt. DomainError if the degrees
/// differ.
std::optional<FactorCorrespondence> weak_equivalence_transport(const DecomposableForm& F,
                                                               const DecomposableForm& G,
                                                               const ProjLinearMap& A, const Rational& lambda);

/// The unique f in PGL_{n+1}(Q) sending the n+2 frame points `from` to
/// `to` (both in general position).
ProjLinearMap map_from_frames(std::span<const ProjPoint> from, std::span<const ProjPoint> to);

/// All f in PGL_{n+1}(Q) with f(V) = W, sorted by canonical lift.
/// Requires |V| = |W| and an (n+2)-subset of V in general position.
std::vector<ProjLinearMap> maps_between(const PointSet& V, const PointSet& W);

/// Maps sending the anchor frame of V into ordered (n+2)-tuples of W in
/// general position (no full-set filter).
std::vector<ProjLinearMap> frame_candidates(const PointSet& V, const PointSet& W);

struct DynamicalSearch {
  std::size_t M = 4;
  Integer height_bound = 100;
};

/// Rational points that any K-conjugacy must carry onto the matching set of
/// the conjugate map: PrePer(phi, M) within the height bound, and on P^1
/// also the rational critical points with their first M - 1 forward images.
PointSet dynamical_point_set(const MorphismPN& phi, const DynamicalSearch& search);

/// f in PGL_{n+1}(Q) with conjugate(phi, f) == phi, from frames in the
/// dynamical point set. InconclusiveError if that set has no n+2 points in
/// general position.
std::vector<ProjLinearMap> automorphism_group(const MorphismPN& phi, const DynamicalSearch& search);

enum class IsoVerdict { yes, no, inconclusive };

struct IsoResult {
  IsoVerdict verdict = IsoVerdict::inconclusive;
  std::optional<ProjLinearMap> witness;  // conjugate(phi, witness) == psi
  std::string method;                    // which route decided
  std::size_t phi_points = 0;
  std::size_t psi_points = 0;
  std::size_t candidates_tested = 0;
};

std::string to_string(IsoVerdict v);

/// Decide whether psi = f o phi o f^-1 for some f in PGL_{n+1}(Q).
/// "no" means no rational witness over the computed point sets.
IsoResult is_k_isomorphic(const MorphismPN& phi, const MorphismPN& psi, const DynamicalSearch& search);

/// phi conjugated by z -> c z with c^2 = gamma; phi must be odd on P^1.
MorphismPN quadratic_twist(const MorphismPN& phi, const Rational& gamma);

/// conjugate(phi, z -> -z) == phi on P^1.
bool is_odd(const MorphismPN& phi);

struct TwistRecord {
  SquareClass gamma;
  MorphismPN model;
  std::vector<Integer> bad_primes;
  bool s_model = false;
  std::size_t k_iso_class = 0;
};

struct TwistEnumeration {
  std::vector<TwistRecord> records;
  /// z -> -z is an automorphism, so square classes parameterize the
  /// quadratic twists; completeness of V(S) is relative to that.
  bool complete_relative_to_z2 = false;
  /// Pairwise verdicts when requested: (i, j, verdict).
  std::vector<std::tuple<std::size_t, std::size_t, IsoVerdict>> pairwise;
};

/// One record per square class of S-units. UnsupportedError unless phi is
/// an odd map of P^1 whose canonical lift is an S-model.
TwistEnumeration enumerate_twist_set(const MorphismPN& phi, const PlaceSet& S, bool check_pairwise = false,
                                     const DynamicalSearch& search = {});

}  // namespace shafdyn

#endif  // SHAFDYN_SHAFAREVICH_HPP
