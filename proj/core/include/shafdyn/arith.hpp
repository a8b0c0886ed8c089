#ifndef SHAFDYN_ARITH_HPP
#define SHAFDYN_ARITH_HPP

#include <gmpxx.h>

#include <initializer_list>
#include <map>
#include <string>
#include <vector>

namespace shafdyn {

using Integer = mpz_class;
using Rational = mpq_class;

// ---------------------------------------------------------------------------
// Primes and factorization
// ---------------------------------------------------------------------------

bool is_prime(const Integer& n);

/// Prime factorization of |n| (n != 0). Trial division up to 10^6, then
/// Brent's variant of Pollard rho on the cofactor.
std::map<Integer, unsigned> factorize(const Integer& n);

/// Distinct primes dividing |n|, ascending. Empty for n = +-1.
std::vector<Integer> prime_divisors(const Integer& n);

/// All positive divisors of |n|, ascending.
std::vector<Integer> divisors(const Integer& n);

/// Exponent of p in x. Throws DomainError for x == 0 or p not prime.
long valuation(const Rational& x, const Integer& p);

bool is_square(const Integer& n);
bool is_square(const Rational& x);

/// Rational k-th root if one exists (sign handled for odd k).
bool exact_root(const Rational& x, unsigned k, Rational& root);

std::string to_string(const Integer& n);
std::string to_string(const Rational& x);
Rational parse_rational(const std::string& text);

// ---------------------------------------------------------------------------
// S-integers
// ---------------------------------------------------------------------------

/// Finite primes of S. The archimedean place is always implicitly present.
class PlaceSet {
 public:
  PlaceSet() = default;
  explicit PlaceSet(std::vector<Integer> primes);
  PlaceSet(std::initializer_list<long> primes);

  const std::vector<Integer>& primes() const { return primes_; }
  bool contains(const Integer& p) const;
  std::size_t finite_count() const { return primes_.size(); }

  /// "{inf,2,3}"
  std::string to_string() const;

  friend bool operator==(const PlaceSet&, const PlaceSet&) = default;

 private:
  std::vector<Integer> primes_;  // sorted, distinct
};

/// Fractional ideal of O_S stored as prime -> nonzero exponent, primes
/// outside S only. The unit ideal is the empty map.
class SIdeal {
 public:
  SIdeal() = default;

  static SIdeal from_exponents(const std::map<Integer, long>& exps, const PlaceSet& S);

  const std::map<Integer, long>& exponents() const { return exps_; }
  bool is_unit() const { return exps_.empty(); }
  long exponent(const Integer& p) const;

  SIdeal& operator*=(const SIdeal& other);
  friend SIdeal operator*(SIdeal a, const SIdeal& b) { return a *= b; }
  SIdeal pow(long k) const;
  SIdeal inverse() const { return pow(-1); }

  /// "(1)" for the unit ideal, otherwise "(2^2 * 3^-1)".
  std::string to_string() const;

  friend bool operator==(const SIdeal&, const SIdeal&) = default;

 private:
  std::map<Integer, long> exps_;
};

SIdeal sideal_of_rational(const Rational& x, const PlaceSet& S);
bool is_s_unit(const Rational& x, const PlaceSet& S);
bool is_s_integer(const Rational& x, const PlaceSet& S);

/// Coset of Q^x modulo squares, represented by its squarefree integer.
class SquareClass {
 public:
  explicit SquareClass(const Integer& representative);
  static SquareClass of(const Rational& x);

  const Integer& representative() const { return rep_; }
  bool same_class(const Rational& x) const;

  friend bool operator==(const SquareClass&, const SquareClass&) = default;

 private:
  Integer rep_;
};

/// Square classes of S-units: +-prod p_i over subsets of the finite primes.
/// Sign-major, then ascending divisor order: S={2} gives [1, 2, -1, -2].
std::vector<SquareClass> square_class_reps(const PlaceSet& S);

}  // namespace shafdyn

#endif  // SHAFDYN_ARITH_HPP
