#ifndef SHAFDYN_DYNAMICS_HPP
#define SHAFDYN_DYNAMICS_HPP

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "shafdyn/arith.hpp"
#include "shafdyn/finite_field.hpp"
#include "shafdyn/forms.hpp"
#include "shafdyn/projective.hpp"

namespace shafdyn {

/// A morphism P^n -> P^n given by a homogeneous lift (F_0, ..., F_n) of
/// common degree d with nonvanishing resultant.
///
/// The lift is stored in canonical form: integer coefficients with overall
/// gcd 1 and the first nonzero coefficient (form by form, monomials in
/// descending lex order) positive. Two morphisms are equal iff their
/// canonical lifts are equal.
class MorphismPN {
 public:
  /// Throws DomainError when the forms are not n+1 forms of one degree
  /// d >= 1 in n+1 variables, or when their resultant vanishes.
  explicit MorphismPN(std::vector<HomogeneousForm> forms);

  static MorphismPN parse(const std::string& text);

  std::size_t dimension() const { return forms_.size() - 1; }
  int degree() const { return forms_[0].degree(); }
  const std::vector<HomogeneousForm>& forms() const { return forms_; }

  /// Resultant of the canonical lift: Sylvester for n = 1, Macaulay
  /// otherwise. Absent only if Macaulay could decide nonvanishing but not
  /// the value.
  const std::optional<Rational>& resultant() const { return resultant_; }
  const Rational& resultant_value() const;

  /// Dimension of the parameter space P^N of degree-d morphisms,
  /// N = (n+1) C(n+d, d) - 1.
  static Integer parameter_space_dimension(std::size_t n, int d);

  /// "F_0; F_1; ..."
  std::string to_string() const;

  friend bool operator==(const MorphismPN& a, const MorphismPN& b) { return a.forms_ == b.forms_; }

 private:
  std::vector<HomogeneousForm> forms_;
  std::optional<Rational> resultant_;
};

struct OrbitRecord {
  ProjPoint start;
  std::vector<ProjPoint> points;  // distinct, in visiting order
  std::size_t tail_length = 0;
  std::size_t cycle_length = 0;
  bool truncated = false;
};

ProjPoint apply(const MorphismPN& phi, const ProjPoint& point);

/// Largest d^k accepted by iterate().
inline constexpr long kMaxIterateDegree = 64;

/// k-fold composite; ResourceError when d^k exceeds kMaxIterateDegree.
MorphismPN iterate(const MorphismPN& phi, unsigned k);

/// f o phi o f^-1, using adj(A) for the inverse of the lift A.
MorphismPN conjugate(const MorphismPN& phi, const ProjLinearMap& f);

/// Collects up to `cap` distinct points of the forward orbit. If the image
/// of the last collected point was already seen the orbit is closed and its
/// tail/cycle structure is filled in; otherwise `truncated` is set.
OrbitRecord orbit(const MorphismPN& phi, const ProjPoint& start, std::size_t cap);

/// Primes dividing the resultant of the canonical lift.
std::vector<Integer> bad_primes_of_model(const MorphismPN& phi);

struct ReductionReport {
  Integer p;
  std::vector<ReducedForm> reduced;
  int degree = 0;            // d minus the degree of the common factor mod p
  bool is_morphism = false;  // no common zero over the algebraic closure of F_p
};

/// Reduce the canonical lift mod p. For n = 1 the morphism test is the
/// gcd test; for n >= 2 it is the degree-D rank test over F_p. Neither
/// route looks at the resultant.
ReductionReport reduce_at_p(const MorphismPN& phi, const Integer& p);

/// Resultant of the canonical lift is an S-unit.
bool is_s_model(const MorphismPN& phi, const PlaceSet& S);

struct GoodReductionSearch {
  bool found = false;
  std::optional<ProjLinearMap> witness;
  std::optional<MorphismPN> model;
  long best_valuation = 0;  // v_p(Res) of the best model seen
  unsigned steps = 0;
};

/// Greedy descent on v_p(Res) over elementary conjugations of P^1:
/// z -> p^k z (1 <= |k| <= budget), z -> z + c (1 <= c < p) and z -> 1/z.
/// At most `budget` improving steps. found == false only means that no
/// good model was located; it does not prove bad reduction.
GoodReductionSearch good_reduction_search(const MorphismPN& phi, const Integer& p, unsigned budget);

/// Largest p for which the p - 1 translations are enumerated.
inline constexpr long kMaxTranslationPrime = 100000;

/// The elementary moves used by good_reduction_search; ResourceError when
/// p exceeds kMaxTranslationPrime.
std::vector<ProjLinearMap> elementary_moves(const Integer& p, unsigned budget);

/// Fixed-point form Y F_0^(k) - X F_1^(k) of phi^k on P^1 (hence its roots
/// are the points of period dividing k).
HomogeneousForm periodic_point_form(const MorphismPN& phi, unsigned k);

/// Rational roots of the Jacobian determinant of the lift on P^1.
std::vector<ProjPoint> rational_critical_points(const MorphismPN& phi);

struct PreperiodicOptions {
  /// Also solve for rational periodic points via periodic_point_form
  /// (P^1 only); these may lie above the height bound.
  bool periodic_roots = true;
};

/// Rational points of height <= height_bound whose forward orbit is
/// finite with at most M points; on P^1 augmented with rational periodic
/// points of period <= M found as exact roots.
std::set<ProjPoint> rational_preperiodic(const MorphismPN& phi, std::size_t M, const Integer& height_bound,
                                         const PreperiodicOptions& options = {});

/// Every canonical point of P^n(Q) with height <= bound, in a fixed order.
std::vector<ProjPoint> points_of_bounded_height(std::size_t n, const Integer& bound);

}  // namespace shafdyn

#endif  // SHAFDYN_DYNAMICS_HPP
