#ifndef SHAFDYN_PROJECTIVE_HPP
#define SHAFDYN_PROJECTIVE_HPP

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "shafdyn/arith.hpp"
#include "shafdyn/linalg.hpp"

namespace shafdyn {

/// A point of P^n(Q) stored by its canonical integer representative:
/// coprime entries, first nonzero entry positive. Because the
/// representative is canonical it is v-normalized at every prime at once.
class ProjPoint {
 public:
  ProjPoint() = default;
  explicit ProjPoint(std::span<const Integer> coords);
  ProjPoint(std::initializer_list<long> coords);

  const std::vector<Integer>& coords() const { return coords_; }
  std::size_t dimension() const { return coords_.size() - 1; }
  const Integer& operator[](std::size_t i) const { return coords_[i]; }

  /// Largest absolute coordinate.
  Integer height() const;

  /// "(a : b : c)"
  std::string to_string() const;

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
  friend std::strong_ordering operator<=>(const ProjPoint& a, const ProjPoint& b);

 private:
  std::vector<Integer> coords_;
};

ProjPoint normalize_point(std::span<const Rational> raw);
ProjPoint normalize_point(std::span<const Integer> raw);

/// Parse "(a : b : c)"; also accepts "a:b:c".
ProjPoint parse_point(const std::string& text);

/// Entrywise reduction of the canonical coordinates mod p, in [0, p).
std::vector<Integer> reduce_point(const ProjPoint& point, const Integer& p);

/// Determinant of the matrix whose rows are the canonical coordinates.
Integer det_points(std::span<const ProjPoint> points);

/// No n+1 of the points lie in a hyperplane.
bool in_general_position(std::span<const ProjPoint> points);

/// Element of PGL_{n+1}(Q) stored by its canonical integer lift: entry gcd
/// 1, first nonzero entry (row-major) positive, nonzero determinant.
class ProjLinearMap {
 public:
  ProjLinearMap() = default;
  explicit ProjLinearMap(const IntMatrix& lift);
  explicit ProjLinearMap(const RatMatrix& lift);

  static ProjLinearMap identity(std::size_t n);
  /// z -> (a z + b) / (c z + d) on P^1.
  static ProjLinearMap mobius(long a, long b, long c, long d);

  const IntMatrix& lift() const { return lift_; }
  std::size_t dimension() const { return lift_.rows() - 1; }
  Integer det() const { return determinant(lift_); }

  ProjLinearMap inverse() const;
  ProjLinearMap transpose() const;

  /// "[[1,1],[0,1]]"
  std::string to_string() const;

  friend ProjLinearMap operator*(const ProjLinearMap& f, const ProjLinearMap& g);
  friend bool operator==(const ProjLinearMap&, const ProjLinearMap&) = default;
  friend std::strong_ordering operator<=>(const ProjLinearMap& a, const ProjLinearMap& b);

 private:
  IntMatrix lift_;
};

ProjPoint apply_map(const ProjLinearMap& f, const ProjPoint& point);

/// The canonical lift lies in GL_{n+1}(O_S): its determinant is an S-unit.
bool is_s_unimodular(const ProjLinearMap& f, const PlaceSet& S);

}  // namespace shafdyn

#endif  // SHAFDYN_PROJECTIVE_HPP
