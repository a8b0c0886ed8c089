#include "shafdyn/forms.hpp"

#include <algorithm>
#include <numeric>

#include "shafdyn/errors.hpp"

namespace shafdyn {

namespace {

void monomials_rec(std::size_t n_vars, int remaining, Monomial& cur, std::size_t pos,
                   std::vector<Monomial>& out) {
  if (pos + 1 == n_vars) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[pos] = e;
    monomials_rec(n_vars, remaining - e, cur, pos + 1, out);
  }
}

Monomial add_monomials(const Monomial& a, const Monomial& b) {
  Monomial out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Integer lcm_of_denominators(const HomogeneousForm& f) {
  Integer l = 1;
  for (const auto& [m, c] : f.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  return l;
}

}  // namespace

std::vector<Monomial> monomials_of_degree(std::size_t n_vars, int degree) {
  std::vector<Monomial> out;
  if (n_vars == 0 || degree < 0) return out;
  Monomial cur(n_vars, 0);
  monomials_rec(n_vars, degree, cur, 0, out);
  return out;
}

HomogeneousForm::HomogeneousForm(std::size_t n_vars, int degree) : n_vars_(n_vars), degree_(degree) {
  if (n_vars == 0) throw DomainError("HomogeneousForm: needs at least one variable");
  if (degree < 0) throw DomainError("HomogeneousForm: negative degree");
}

HomogeneousForm HomogeneousForm::variable(std::size_t n_vars, std::size_t index) {
  if (index >= n_vars) throw DomainError("HomogeneousForm::variable: index out of range");
  Monomial m(n_vars, 0);
  m[index] = 1;
  return term(m, 1);
}

HomogeneousForm HomogeneousForm::constant(std::size_t n_vars, const Rational& c) {
  return term(Monomial(n_vars, 0), c);
}

HomogeneousForm HomogeneousForm::term(const Monomial& m, const Rational& c) {
  HomogeneousForm f(m.size(), std::accumulate(m.begin(), m.end(), 0));
  f.set_coefficient(m, c);
  return f;
}

Rational HomogeneousForm::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void HomogeneousForm::set_coefficient(const Monomial& m, const Rational& c) {
  if (m.size() != n_vars_ || std::accumulate(m.begin(), m.end(), 0) != degree_ ||
      std::any_of(m.begin(), m.end(), [](int e) { return e < 0; })) {
    throw DomainError("HomogeneousForm: monomial does not match variables/degree");
  }
  if (c == 0) {
    terms_.erase(m);
  } else {
    terms_[m] = c;
  }
}

void HomogeneousForm::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    set_coefficient(m, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

const Rational& HomogeneousForm::leading_coefficient() const {
  if (terms_.empty()) throw DomainError("leading_coefficient: zero form");
  return terms_.rbegin()->second;
}

bool HomogeneousForm::is_integral() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.get_den() == 1; });
}

Rational HomogeneousForm::evaluate(std::span<const Rational> x) const {
  if (x.size() != n_vars_) throw DomainError("evaluate: expected " + std::to_string(n_vars_) + " values");
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < n_vars_; ++i) {
      for (int k = 0; k < m[i]; ++k) t *= x[i];
    }
    sum += t;
  }
  return sum;
}

Integer HomogeneousForm::evaluate(std::span<const Integer> x) const {
  if (x.size() != n_vars_) throw DomainError("evaluate: expected " + std::to_string(n_vars_) + " values");
  if (!is_integral()) throw DomainError("evaluate: integer evaluation of a non-integral form");
  Integer sum = 0;
  Integer t, pw;
  for (const auto& [m, c] : terms_) {
    t = c.get_num();
    for (std::size_t i = 0; i < n_vars_; ++i) {
      if (m[i] == 0) continue;
      mpz_pow_ui(pw.get_mpz_t(), x[i].get_mpz_t(), static_cast<unsigned long>(m[i]));
      t *= pw;
    }
    sum += t;
  }
  return sum;
}

void HomogeneousForm::check_compatible(const HomogeneousForm& o, const char* what) const {
  if (n_vars_ != o.n_vars_) throw DomainError(std::string(what) + ": variable count mismatch");
  if (degree_ != o.degree_ && !is_zero() && !o.is_zero()) {
    throw DomainError(std::string(what) + ": degree mismatch");
  }
}

HomogeneousForm& HomogeneousForm::operator+=(const HomogeneousForm& o) {
  check_compatible(o, "form addition");
  if (is_zero()) degree_ = o.degree_;
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

HomogeneousForm& HomogeneousForm::operator-=(const HomogeneousForm& o) {
  check_compatible(o, "form subtraction");
  if (is_zero()) degree_ = o.degree_;
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

HomogeneousForm& HomogeneousForm::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

HomogeneousForm operator*(const HomogeneousForm& a, const HomogeneousForm& b) {
  if (a.n_vars_ != b.n_vars_) throw DomainError("form product: variable count mismatch");
  HomogeneousForm out(a.n_vars_, a.degree_ + b.degree_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(add_monomials(ma, mb), ca * cb);
  }
  return out;
}

HomogeneousForm HomogeneousForm::pow(unsigned k) const {
  HomogeneousForm result = constant(n_vars_, 1);
  HomogeneousForm base = *this;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return result;
}

HomogeneousForm HomogeneousForm::compose(std::span<const HomogeneousForm> subs) const {
  if (subs.size() != n_vars_) throw DomainError("compose: expected one substitution per variable");
  const std::size_t m_vars = subs[0].n_vars();
  const int e = subs[0].degree();
  for (const auto& g : subs) {
    if (g.n_vars() != m_vars || g.degree() != e) throw DomainError("compose: substitutions must share shape");
  }
  // powers[i][k] = subs[i]^k
  std::vector<std::vector<HomogeneousForm>> powers(n_vars_);
  for (std::size_t i = 0; i < n_vars_; ++i) {
    powers[i].push_back(constant(m_vars, 1));
    for (int k = 1; k <= degree_; ++k) powers[i].push_back(powers[i].back() * subs[i]);
  }
  HomogeneousForm out(m_vars, degree_ * e);
  for (const auto& [m, c] : terms_) {
    HomogeneousForm t = constant(m_vars, c);
    for (std::size_t i = 0; i < n_vars_; ++i) {
      if (m[i] > 0) t = t * powers[i][static_cast<std::size_t>(m[i])];
    }
    out += t;
  }
  return out;
}

HomogeneousForm HomogeneousForm::substitute_linear(const RatMatrix& a) const {
  if (a.rows() != n_vars_) throw DomainError("substitute_linear: matrix row count mismatch");
  std::vector<HomogeneousForm> subs;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    HomogeneousForm l(a.cols(), 1);
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Monomial m(a.cols(), 0);
      m[j] = 1;
      l.add_term(m, a(i, j));
    }
    subs.push_back(std::move(l));
  }
  return compose(subs);
}

HomogeneousForm HomogeneousForm::derivative(std::size_t var) const {
  if (var >= n_vars_) throw DomainError("derivative: variable out of range");
  HomogeneousForm out(n_vars_, std::max(degree_ - 1, 0));
  if (degree_ == 0) return out;
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial d = m;
    --d[var];
    out.add_term(d, c * m[var]);
  }
  return out;
}

std::pair<HomogeneousForm, Rational> content_normalize(const HomogeneousForm& f) {
  if (f.is_zero()) throw DomainError("content_normalize: zero form");
  const Integer l = lcm_of_denominators(f);
  Integer g = 0;
  for (const auto& [m, c] : f.terms()) {
    Rational v = c * l;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
  }
  Rational content(g, l);
  content.canonicalize();
  if (f.leading_coefficient() < 0) content = -content;
  HomogeneousForm normalized = f * Rational(1 / content);
  return {std::move(normalized), content};
}

LinearForm::LinearForm(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw DomainError("LinearForm: needs at least one variable");
  if (std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; })) {
    throw DomainError("LinearForm: zero form");
  }
}

LinearForm::LinearForm(const HomogeneousForm& f) {
  if (f.degree() != 1 || f.is_zero()) throw DomainError("LinearForm: expected a nonzero degree-1 form");
  coeffs_.resize(f.n_vars());
  for (const auto& [m, c] : f.terms()) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 1) coeffs_[i] = c;
    }
  }
}

HomogeneousForm LinearForm::to_form() const {
  HomogeneousForm f(coeffs_.size(), 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    Monomial m(coeffs_.size(), 0);
    m[i] = 1;
    f.add_term(m, coeffs_[i]);
  }
  return f;
}

// ---------------------------------------------------------------------------
// Resultants
// ---------------------------------------------------------------------------

namespace {

/// (a_d, ..., a_0) with a_i the coefficient of X^i Y^(d-i).
std::vector<Rational> binary_coefficients(const HomogeneousForm& f) {
  const int d = f.degree();
  std::vector<Rational> out(static_cast<std::size_t>(d) + 1);
  for (int i = d; i >= 0; --i) out[static_cast<std::size_t>(d - i)] = f.coefficient({i, d - i});
  return out;
}

}  // namespace

Rational sylvester_resultant(const HomogeneousForm& f, const HomogeneousForm& g) {
  if (f.n_vars() != 2 || g.n_vars() != 2) throw DomainError("sylvester_resultant: binary forms required");
  if (f.is_zero() || g.is_zero()) throw DomainError("sylvester_resultant: zero form");
  const auto df = static_cast<std::size_t>(f.degree());
  const auto dg = static_cast<std::size_t>(g.degree());
  const std::size_t size = df + dg;
  if (size == 0) return 1;
  const auto cf = binary_coefficients(f);
  const auto cg = binary_coefficients(g);
  RatMatrix m(size, size);
  for (std::size_t r = 0; r < dg; ++r)
    for (std::size_t k = 0; k <= df; ++k) m(r, r + k) = cf[k];
  for (std::size_t r = 0; r < df; ++r)
    for (std::size_t k = 0; k <= dg; ++k) m(dg + r, r + k) = cg[k];
  return determinant(m);
}

namespace {

struct MacaulaySystem {
  RatMatrix matrix;
  std::vector<bool> reduced;  // per monomial of degree D
};

MacaulaySystem macaulay_system(std::span<const HomogeneousForm> forms) {
  const std::size_t nv = forms.size();
  int D = 1;
  for (const auto& f : forms) D += f.degree() - 1;
  const auto mons = monomials_of_degree(nv, D);
  std::map<Monomial, std::size_t> index;
  for (std::size_t i = 0; i < mons.size(); ++i) index[mons[i]] = i;

  MacaulaySystem sys{RatMatrix(mons.size(), mons.size()), std::vector<bool>(mons.size())};
  for (std::size_t r = 0; r < mons.size(); ++r) {
    const Monomial& m = mons[r];
    std::size_t which = nv;
    int divisible = 0;
    for (std::size_t i = 0; i < nv; ++i) {
      if (m[i] >= forms[i].degree()) {
        ++divisible;
        if (which == nv) which = i;
      }
    }
    sys.reduced[r] = divisible == 1;
    Monomial shift = m;
    shift[which] -= forms[which].degree();
    for (const auto& [fm, c] : forms[which].terms()) {
      sys.matrix(r, index.at(add_monomials(shift, fm))) = c;
    }
  }
  return sys;
}

/// Returns nullopt when the extraneous minor vanishes.
std::optional<Rational> macaulay_ratio(std::span<const HomogeneousForm> forms) {
  const MacaulaySystem sys = macaulay_system(forms);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < sys.reduced.size(); ++i) {
    if (!sys.reduced[i]) keep.push_back(i);
  }
  RatMatrix minor(keep.size(), keep.size());
  for (std::size_t r = 0; r < keep.size(); ++r)
    for (std::size_t c = 0; c < keep.size(); ++c) minor(r, c) = sys.matrix(keep[r], keep[c]);
  const Rational denom = determinant(minor);
  if (denom == 0) return std::nullopt;
  return determinant(sys.matrix) / denom;
}

/// Deterministic sequence of determinant-1 integer matrices.
RatMatrix unimodular_substitution(std::size_t n, unsigned attempt) {
  RatMatrix a = RatMatrix::identity(n);
  // Product of elementary shears with attempt-dependent offsets.
  unsigned seed = attempt * 2654435761u + 12345u;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      seed = seed * 1103515245u + 12345u;
      const long shift = static_cast<long>((seed >> 16) % 5) - 2;
      RatMatrix e = RatMatrix::identity(n);
      e(i, j) = shift;
      a = a * e;
    }
  }
  return a;
}

void check_macaulay_input(std::span<const HomogeneousForm> forms, const char* what) {
  if (forms.empty()) throw DomainError(std::string(what) + ": no forms");
  for (const auto& f : forms) {
    if (f.n_vars() != forms.size()) {
      throw DomainError(std::string(what) + ": need n+1 forms in n+1 variables");
    }
    if (f.degree() < 1) throw DomainError(std::string(what) + ": forms must have degree >= 1");
  }
}

}  // namespace

bool no_common_zero_rank_test(std::span<const HomogeneousForm> forms) {
  check_macaulay_input(forms, "no_common_zero_rank_test");
  const std::size_t nv = forms.size();
  int D = 1;
  for (const auto& f : forms) D += f.degree() - 1;
  const auto mons = monomials_of_degree(nv, D);
  std::map<Monomial, std::size_t> index;
  for (std::size_t i = 0; i < mons.size(); ++i) index[mons[i]] = i;
  std::vector<std::vector<Rational>> rows;
  for (const auto& f : forms) {
    if (f.is_zero()) continue;
    for (const auto& shift : monomials_of_degree(nv, D - f.degree())) {
      std::vector<Rational> row(mons.size());
      for (const auto& [fm, c] : f.terms()) row[index.at(add_monomials(shift, fm))] = c;
      rows.push_back(std::move(row));
    }
  }
  RatMatrix m(rows.size(), mons.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < mons.size(); ++c) m(r, c) = rows[r][c];
  return rank(std::move(m)) == mons.size();
}

MacaulayResult macaulay_resultant(std::span<const HomogeneousForm> forms) {
  check_macaulay_input(forms, "macaulay_resultant");
  MacaulayResult result;
  if (std::any_of(forms.begin(), forms.end(), [](const HomogeneousForm& f) { return f.is_zero(); })) {
    result.value = Rational(0);
    return result;
  }
  constexpr unsigned kAttempts = 8;
  for (unsigned attempt = 0; attempt <= kAttempts; ++attempt) {
    std::optional<Rational> value;
    if (attempt == 0) {
      value = macaulay_ratio(forms);
    } else {
      const RatMatrix a = unimodular_substitution(forms.size(), attempt);
      std::vector<HomogeneousForm> moved;
      for (const auto& f : forms) moved.push_back(f.substitute_linear(a));
      value = macaulay_ratio(moved);
    }
    if (value) {
      result.value = *value;
      result.nonzero = *value != 0;
      result.substitutions = attempt;
      return result;
    }
  }
  result.substitutions = kAttempts;
  result.rank_fallback = true;
  result.nonzero = no_common_zero_rank_test(forms);
  if (!result.nonzero) result.value = Rational(0);
  return result;
}

// ---------------------------------------------------------------------------
// Rational roots of binary forms
// ---------------------------------------------------------------------------

std::vector<std::pair<Integer, Integer>> binary_rational_roots(const HomogeneousForm& f) {
  if (f.n_vars() != 2) throw DomainError("binary_rational_roots: binary form required");
  if (f.is_zero()) throw DomainError("binary_rational_roots: zero form");
  const int d = f.degree();
  const Integer l = lcm_of_denominators(f);
  // a[i] = coefficient of X^i Y^(d-i)
  std::vector<Integer> a(static_cast<std::size_t>(d) + 1);
  for (const auto& [m, c] : f.terms()) {
    Rational v = c * l;
    a[static_cast<std::size_t>(m[0])] = v.get_num();
  }
  std::vector<std::pair<Integer, Integer>> roots;
  if (a[static_cast<std::size_t>(d)] == 0) roots.emplace_back(1, 0);
  if (a[0] == 0) roots.emplace_back(0, 1);

  std::size_t lo = 0, hi = static_cast<std::size_t>(d);
  while (a[lo] == 0) ++lo;
  while (a[hi] == 0) --hi;
  if (hi > lo) {
    // p(z) = sum_{i=lo}^{hi} a_i z^(i-lo); roots r/s with r | a_lo, s | a_hi.
    const auto rs = divisors(a[lo]);
    const auto ss = divisors(a[hi]);
    constexpr std::size_t kMaxCandidates = 20'000'000;
    if (rs.size() * ss.size() > kMaxCandidates) {
      throw ResourceError("binary_rational_roots: too many rational root candidates");
    }
    Integer acc, spow;
    for (const auto& s : ss) {
      for (const auto& r0 : rs) {
        if (gcd(r0, s) != 1) continue;
        for (int sign : {1, -1}) {
          const Integer r = sign * r0;
          // Horner on the homogenized polynomial: sum a_i r^(i-lo) s^(hi-i)
          acc = a[hi];
          spow = 1;
          for (std::size_t i = hi; i-- > lo;) {
            spow *= s;
            acc = acc * r + a[i] * spow;
          }
          if (acc == 0) roots.emplace_back(r > 0 ? r : Integer(-r), r > 0 ? s : Integer(-s));
        }
      }
    }
  }
  // (a : b) canonical: first nonzero entry positive.
  for (auto& [x, y] : roots) {
    if (x < 0 || (x == 0 && y < 0)) {
      x = -x;
      y = -y;
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace shafdyn
