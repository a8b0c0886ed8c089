#ifndef SHAFDYN_FORMS_HPP
#define SHAFDYN_FORMS_HPP

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "shafdyn/arith.hpp"
#include "shafdyn/linalg.hpp"

namespace shafdyn {

/// Exponent vector (j_0, ..., j_n).
using Monomial = std::vector<int>;

/// All exponent vectors of total degree `degree` in `n_vars` variables,
/// lexicographically descending (X0^d first).
std::vector<Monomial> monomials_of_degree(std::size_t n_vars, int degree);

/// A form of fixed degree in n_vars variables with exact rational
/// coefficients. Zero coefficients are never stored.
class HomogeneousForm {
 public:
  using Terms = std::map<Monomial, Rational>;

  HomogeneousForm() = default;
  HomogeneousForm(std::size_t n_vars, int degree);

  static HomogeneousForm variable(std::size_t n_vars, std::size_t index);
  static HomogeneousForm constant(std::size_t n_vars, const Rational& c);
  static HomogeneousForm term(const Monomial& m, const Rational& c);

  std::size_t n_vars() const { return n_vars_; }
  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(const Monomial& m) const;
  void set_coefficient(const Monomial& m, const Rational& c);
  void add_term(const Monomial& m, const Rational& c);

  /// Coefficient of the lexicographically largest monomial present.
  const Rational& leading_coefficient() const;
  bool is_integral() const;

  Rational evaluate(std::span<const Rational> x) const;
  Integer evaluate(std::span<const Integer> x) const;

  HomogeneousForm& operator+=(const HomogeneousForm& o);
  HomogeneousForm& operator-=(const HomogeneousForm& o);
  HomogeneousForm& operator*=(const Rational& c);
  friend HomogeneousForm operator+(HomogeneousForm a, const HomogeneousForm& b) { return a += b; }
  friend HomogeneousForm operator-(HomogeneousForm a, const HomogeneousForm& b) { return a -= b; }
  friend HomogeneousForm operator*(HomogeneousForm a, const Rational& c) { return a *= c; }
  friend HomogeneousForm operator*(const Rational& c, HomogeneousForm a) { return a *= c; }
  friend HomogeneousForm operator*(const HomogeneousForm& a, const HomogeneousForm& b);
  HomogeneousForm operator-() const { return *this * Rational(-1); }

  HomogeneousForm pow(unsigned k) const;

  /// F(G_0, ..., G_n): every G_i has the same degree and variable count.
  HomogeneousForm compose(std::span<const HomogeneousForm> subs) const;

  /// F(A X), i.e. X_i replaced by sum_j A(i,j) X_j.
  HomogeneousForm substitute_linear(const RatMatrix& a) const;

  HomogeneousForm derivative(std::size_t var) const;

  friend bool operator==(const HomogeneousForm&, const HomogeneousForm&) = default;

 private:
  void check_compatible(const HomogeneousForm& o, const char* what) const;

  std::size_t n_vars_ = 0;
  int degree_ = 0;
  Terms terms_;
};

/// (G, c) with F = c G, G integral with content 1 and positive leading
/// coefficient. Throws DomainError for the zero form.
std::pair<HomogeneousForm, Rational> content_normalize(const HomogeneousForm& f);

/// A nonzero degree-1 form sum p_i X_i.
class LinearForm {
 public:
  explicit LinearForm(std::vector<Rational> coeffs);
  explicit LinearForm(const HomogeneousForm& f);

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  std::size_t n_vars() const { return coeffs_.size(); }
  HomogeneousForm to_form() const;

  friend bool operator==(const LinearForm&, const LinearForm&) = default;

 private:
  std::vector<Rational> coeffs_;
};

/// Resultant of two binary forms via the Sylvester matrix. The coefficient
/// sequence of F is (a_d, ..., a_0) with a_i the coefficient of X^i Y^(d-i);
/// the d_G rows of F come first. With this convention
/// Res(prod (b_i X - a_i Y), G) = prod G(a_i, b_i).
Rational sylvester_resultant(const HomogeneousForm& f, const HomogeneousForm& g);

struct MacaulayResult {
  std::optional<Rational> value;  // absent only when both routes below fail
  bool nonzero = false;
  unsigned substitutions = 0;     // unimodular coordinate changes tried
  bool rank_fallback = false;     // verdict came from the rank test
};

/// Macaulay resultant of n+1 forms in n+1 variables, at critical degree
/// sum(d_i - 1) + 1, normalized so Res(X_0^d0, ..., X_n^dn) = 1.
/// When the extraneous minor vanishes the forms are moved by determinant-1
/// integer substitutions (which leave the resultant unchanged); if that
/// fails too, only zero/nonzero is reported via a rank test.
MacaulayResult macaulay_resultant(std::span<const HomogeneousForm> forms);

/// True iff the forms have no common zero over the algebraic closure,
/// decided by whether the degree-D part of their ideal is everything.
bool no_common_zero_rank_test(std::span<const HomogeneousForm> forms);

/// Rational roots (a : b) of a nonzero binary form, each as a primitive
/// integer pair with first nonzero entry positive. Distinct, sorted.
std::vector<std::pair<Integer, Integer>> binary_rational_roots(const HomogeneousForm& f);

// Text form ----------------------------------------------------------------

/// Parse a form in X0..Xn (aliases X, Y, Z when n_vars <= 3).
///
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor (['*'] factor)*
///   factor := atom ['^' uint]
///   atom   := uint ['/' uint] | var | '(' expr ')'
///
/// The result must be homogeneous. Throws ParseError.
HomogeneousForm parse_form(const std::string& text, std::size_t n_vars);

/// Semicolon-separated forms; n_vars equals the number of forms.
std::vector<HomogeneousForm> parse_form_list(const std::string& text);

/// Exact printer; parse_form(format_form(F), F.n_vars()) == F.
std::string format_form(const HomogeneousForm& f);

std::string variable_name(std::size_t n_vars, std::size_t index);

}  // namespace shafdyn

#endif  // SHAFDYN_FORMS_HPP
