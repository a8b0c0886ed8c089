#ifndef SHAFDYN_FINITE_FIELD_HPP
#define SHAFDYN_FINITE_FIELD_HPP

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "shafdyn/arith.hpp"
#include "shafdyn/forms.hpp"

namespace shafdyn {

/// Z/pZ for primes below 2^62.
__extension__ typedef unsigned __int128 uint128_t;

class PrimeField {
 public:
  explicit PrimeField(const Integer& p);

  std::uint64_t modulus() const { return p_; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p_; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p_ - b) % p_; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>((static_cast<uint128_t>(a) * b) % p_);
  }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t inv(std::uint64_t a) const;

  std::uint64_t reduce(const Integer& x) const;
  /// Throws DomainError if p divides the denominator.
  std::uint64_t reduce(const Rational& x) const;

 private:
  std::uint64_t p_;
};

/// A form with coefficients in F_p (zero coefficients not stored).
struct ReducedForm {
  std::size_t n_vars = 0;
  int degree = 0;
  std::map<Monomial, std::uint64_t> terms;

  bool is_zero() const { return terms.empty(); }
  std::uint64_t evaluate(std::span<const std::uint64_t> x, const PrimeField& field) const;
  /// Lift to a form with coefficients in [0, p) for printing.
  HomogeneousForm lift() const;
};

ReducedForm reduce_form(const HomogeneousForm& f, const PrimeField& field);

/// Total degree of gcd(F_0, ..., F_n) over F_p. The gcd of all-zero input
/// is taken to have the common degree of the inputs.
int common_factor_degree(std::span<const ReducedForm> forms, const PrimeField& field);

/// Rank of the full degree-D Macaulay system over F_p; true iff the forms
/// have no common zero over the algebraic closure of F_p.
bool no_common_zero_mod_p(std::span<const ReducedForm> forms, const PrimeField& field);

}  // namespace shafdyn

#endif  // SHAFDYN_FINITE_FIELD_HPP
