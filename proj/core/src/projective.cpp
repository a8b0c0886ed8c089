#include "shafdyn/projective.hpp"

#include <algorithm>
#include <sstream>

#include "shafdyn/errors.hpp"

namespace shafdyn {

namespace {

std::strong_ordering compare_vectors(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

/// Divide by the gcd and fix the sign of the first nonzero entry.
void canonicalize(std::vector<Integer>& v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g == 0) throw DomainError("normalize: zero vector");
  auto first = std::find_if(v.begin(), v.end(), [](const Integer& x) { return x != 0; });
  if (*first < 0) g = -g;
  for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

/// Subsets of {0..n-1} of size k, lexicographic.
template <typename Fn>
bool for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return true;
  while (true) {
    if (!fn(idx)) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

ProjPoint::ProjPoint(std::span<const Integer> coords) : coords_(coords.begin(), coords.end()) {
  if (coords_.size() < 2) throw DomainError("ProjPoint: need at least two coordinates");
  canonicalize(coords_);
}

ProjPoint::ProjPoint(std::initializer_list<long> coords) {
  std::vector<Integer> v(coords.begin(), coords.end());
  *this = ProjPoint(std::span<const Integer>(v));
}

Integer ProjPoint::height() const {
  Integer h = 0;
  for (const auto& x : coords_) h = std::max<Integer>(h, abs(x));
  return h;
}

std::string ProjPoint::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out += " : ";
    out += coords_[i].get_str();
  }
  return out + ")";
}

std::strong_ordering operator<=>(const ProjPoint& a, const ProjPoint& b) {
  return compare_vectors(a.coords_, b.coords_);
}

ProjPoint normalize_point(std::span<const Rational> raw) {
  Integer l = 1;
  for (const auto& x : raw) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Integer> v;
  v.reserve(raw.size());
  for (const auto& x : raw) {
    Rational s = x * l;
    v.emplace_back(s.get_num());
  }
  return ProjPoint(v);
}

ProjPoint normalize_point(std::span<const Integer> raw) { return ProjPoint(raw); }

ProjPoint parse_point(const std::string& text) {
  std::string body = text;
  const auto open = body.find('(');
  const auto close = body.rfind(')');
  if (open != std::string::npos || close != std::string::npos) {
    if (open == std::string::npos || close == std::string::npos || close < open) {
      throw ParseError("point '" + text + "': unbalanced parentheses");
    }
    if (body.find_first_not_of(" \t", close + 1) != std::string::npos ||
        body.find_first_not_of(" \t") != open) {
      throw ParseError("point '" + text + "': trailing characters");
    }
    body = body.substr(open + 1, close - open - 1);
  }
  std::vector<Rational> coords;
  std::stringstream ss(body);
  std::string piece;
  while (std::getline(ss, piece, ':')) {
    const auto b = piece.find_first_not_of(" \t");
    const auto e = piece.find_last_not_of(" \t");
    if (b == std::string::npos) throw ParseError("point '" + text + "': empty coordinate");
    coords.push_back(parse_rational(piece.substr(b, e - b + 1)));
  }
  if (coords.size() < 2) throw ParseError("point '" + text + "': need at least two coordinates");
  try {
    return normalize_point(coords);
  } catch (const DomainError&) {
    throw ParseError("point '" + text + "': all coordinates are zero");
  }
}

std::vector<Integer> reduce_point(const ProjPoint& point, const Integer& p) {
  std::vector<Integer> out;
  out.reserve(point.coords().size());
  for (const auto& x : point.coords()) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
    out.push_back(r);
  }
  return out;
}

Integer det_points(std::span<const ProjPoint> points) {
  if (points.empty()) throw DomainError("det_points: no points");
  const std::size_t size = points[0].coords().size();
  if (points.size() != size) throw DomainError("det_points: need exactly n+1 points of P^n");
  IntMatrix m(size, size);
  for (std::size_t r = 0; r < size; ++r) {
    if (points[r].coords().size() != size) throw DomainError("det_points: dimension mismatch");
    for (std::size_t c = 0; c < size; ++c) m(r, c) = points[r][c];
  }
  return determinant(std::move(m));
}

bool in_general_position(std::span<const ProjPoint> points) {
  if (points.empty()) throw DomainError("in_general_position: no points");
  const std::size_t k = points[0].coords().size();
  if (points.size() < k) throw DomainError("in_general_position: need at least n+1 points");
  std::vector<ProjPoint> subset(k);
  return for_each_subset(points.size(), k, [&](const std::vector<std::size_t>& idx) {
    for (std::size_t i = 0; i < k; ++i) subset[i] = points[idx[i]];
    return det_points(subset) != 0;
  });
}

// ---------------------------------------------------------------------------

ProjLinearMap::ProjLinearMap(const IntMatrix& lift) : lift_(lift) {
  if (lift_.rows() != lift_.cols() || lift_.rows() < 2) throw DomainError("ProjLinearMap: square matrix of size >= 2 required");
  if (determinant(lift_) == 0) throw DomainError("ProjLinearMap: singular matrix");
  std::vector<Integer> flat;
  for (std::size_t r = 0; r < lift_.rows(); ++r)
    for (std::size_t c = 0; c < lift_.cols(); ++c) flat.push_back(lift_(r, c));
  canonicalize(flat);
  for (std::size_t r = 0, i = 0; r < lift_.rows(); ++r)
    for (std::size_t c = 0; c < lift_.cols(); ++c) lift_(r, c) = flat[i++];
}

ProjLinearMap::ProjLinearMap(const RatMatrix& lift) {
  Integer l = 1;
  for (std::size_t r = 0; r < lift.rows(); ++r)
    for (std::size_t c = 0; c < lift.cols(); ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), lift(r, c).get_den_mpz_t());
  IntMatrix m(lift.rows(), lift.cols());
  for (std::size_t r = 0; r < lift.rows(); ++r)
    for (std::size_t c = 0; c < lift.cols(); ++c) {
      Rational v = lift(r, c) * l;
      m(r, c) = v.get_num();
    }
  *this = ProjLinearMap(m);
}

ProjLinearMap ProjLinearMap::identity(std::size_t n) { return ProjLinearMap(IntMatrix::identity(n + 1)); }

ProjLinearMap ProjLinearMap::mobius(long a, long b, long c, long d) {
  return ProjLinearMap(IntMatrix{{a, b}, {c, d}});
}

ProjLinearMap ProjLinearMap::inverse() const { return ProjLinearMap(adjugate(lift_)); }

ProjLinearMap ProjLinearMap::transpose() const { return ProjLinearMap(lift_.transpose()); }

std::string ProjLinearMap::to_string() const {
  std::string out = "[";
  for (std::size_t r = 0; r < lift_.rows(); ++r) {
    if (r) out += ",";
    out += "[";
    for (std::size_t c = 0; c < lift_.cols(); ++c) {
      if (c) out += ",";
      out += lift_(r, c).get_str();
    }
    out += "]";
  }
  return out + "]";
}

ProjLinearMap operator*(const ProjLinearMap& f, const ProjLinearMap& g) {
  if (f.lift_.rows() != g.lift_.rows()) throw DomainError("map composition: dimension mismatch");
  return ProjLinearMap(f.lift_ * g.lift_);
}

std::strong_ordering operator<=>(const ProjLinearMap& a, const ProjLinearMap& b) {
  if (a.lift_.rows() != b.lift_.rows()) return a.lift_.rows() <=> b.lift_.rows();
  for (std::size_t r = 0; r < a.lift_.rows(); ++r)
    for (std::size_t c = 0; c < a.lift_.cols(); ++c) {
      const int v = cmp(a.lift_(r, c), b.lift_(r, c));
      if (v != 0) return v < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
  return std::strong_ordering::equal;
}

ProjPoint apply_map(const ProjLinearMap& f, const ProjPoint& point) {
  if (f.lift().cols() != point.coords().size()) throw DomainError("apply_map: dimension mismatch");
  return ProjPoint(f.lift().apply(point.coords()));
}

bool is_s_unimodular(const ProjLinearMap& f, const PlaceSet& S) { return is_s_unit(Rational(f.det()), S); }

}  // namespace shafdyn
