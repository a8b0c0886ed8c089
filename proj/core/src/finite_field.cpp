#include "shafdyn/finite_field.hpp"

#include <optional>

#include "shafdyn/errors.hpp"
#include "shafdyn/linalg.hpp"

namespace shafdyn {

PrimeField::PrimeField(const Integer& p) {
  if (!is_prime(p)) throw DomainError("PrimeField: " + p.get_str() + " is not prime");
  if (p >= (Integer(1) << 62)) throw DomainError("PrimeField: modulus above 2^62 is not supported");
  p_ = mpz_get_ui(p.get_mpz_t());
}

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1 % p_;
  a %= p_;
  while (e) {
    if (e & 1u) r = mul(r, a);
    a = mul(a, a);
    e >>= 1u;
  }
  return r;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
  if (a % p_ == 0) throw DomainError("PrimeField: inverse of zero");
  return pow(a, p_ - 2);
}

std::uint64_t PrimeField::reduce(const Integer& x) const {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), p_);
  return mpz_get_ui(r.get_mpz_t());
}

std::uint64_t PrimeField::reduce(const Rational& x) const {
  const std::uint64_t den = reduce(Integer(x.get_den()));
  if (den == 0) throw DomainError("PrimeField: denominator divisible by p");
  return mul(reduce(Integer(x.get_num())), inv(den));
}

std::uint64_t ReducedForm::evaluate(std::span<const std::uint64_t> x, const PrimeField& field) const {
  std::uint64_t sum = 0;
  for (const auto& [m, c] : terms) {
    std::uint64_t t = c;
    for (std::size_t i = 0; i < m.size(); ++i) t = field.mul(t, field.pow(x[i], static_cast<std::uint64_t>(m[i])));
    sum = field.add(sum, t);
  }
  return sum;
}

HomogeneousForm ReducedForm::lift() const {
  HomogeneousForm f(n_vars, degree);
  for (const auto& [m, c] : terms) f.set_coefficient(m, Rational(Integer(static_cast<unsigned long>(c))));
  return f;
}

ReducedForm reduce_form(const HomogeneousForm& f, const PrimeField& field) {
  ReducedForm out{f.n_vars(), f.degree(), {}};
  for (const auto& [m, c] : f.terms()) {
    const std::uint64_t v = field.reduce(c);
    if (v != 0) out.terms[m] = v;
  }
  return out;
}

namespace {

// Recursive dense polynomial over F_p. At level k the coefficients are
// level-(k-1) polynomials in x_0..x_{k-2} and the main variable is x_{k-1};
// level 0 is a scalar.
struct RPoly {
  std::uint64_t scalar = 0;
  std::vector<RPoly> coeffs;
};

class RecursiveArith {
 public:
  explicit RecursiveArith(const PrimeField& f) : f_(f) {}

  static bool is_zero(const RPoly& a, int k) { return k == 0 ? a.scalar == 0 : a.coeffs.empty(); }

  static RPoly constant(std::uint64_t c, int k) {
    RPoly r;
    if (k == 0) {
      r.scalar = c;
      return r;
    }
    RPoly inner = constant(c, k - 1);
    if (!is_zero(inner, k - 1)) r.coeffs.push_back(std::move(inner));
    return r;
  }

  static void trim(RPoly& a, int k) {
    while (!a.coeffs.empty() && is_zero(a.coeffs.back(), k - 1)) a.coeffs.pop_back();
  }

  static int degree(const RPoly& a) { return static_cast<int>(a.coeffs.size()) - 1; }

  RPoly add(const RPoly& a, const RPoly& b, int k, bool subtract = false) const {
    if (k == 0) return RPoly{subtract ? f_.sub(a.scalar, b.scalar) : f_.add(a.scalar, b.scalar), {}};
    RPoly r;
    const std::size_t n = std::max(a.coeffs.size(), b.coeffs.size());
    r.coeffs.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const RPoly za = i < a.coeffs.size() ? a.coeffs[i] : constant(0, k - 1);
      const RPoly zb = i < b.coeffs.size() ? b.coeffs[i] : constant(0, k - 1);
      r.coeffs[i] = add(za, zb, k - 1, subtract);
    }
    trim(r, k);
    return r;
  }

  RPoly mul(const RPoly& a, const RPoly& b, int k) const {
    if (k == 0) return RPoly{f_.mul(a.scalar, b.scalar), {}};
    RPoly r;
    if (a.coeffs.empty() || b.coeffs.empty()) return r;
    r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, constant(0, k - 1));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
      if (is_zero(a.coeffs[i], k - 1)) continue;
      for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
        r.coeffs[i + j] = add(r.coeffs[i + j], mul(a.coeffs[i], b.coeffs[j], k - 1), k - 1);
      }
    }
    trim(r, k);
    return r;
  }

  /// a * s where s lives one level down.
  RPoly scale(const RPoly& a, const RPoly& s, int k) const {
    RPoly r;
    for (const auto& c : a.coeffs) r.coeffs.push_back(mul(c, s, k - 1));
    trim(r, k);
    return r;
  }

  /// a * x^shift (main variable)
  static RPoly shift(const RPoly& a, std::size_t s, int k) {
    RPoly r;
    if (a.coeffs.empty()) return r;
    r.coeffs.assign(s, constant(0, k - 1));
    r.coeffs.insert(r.coeffs.end(), a.coeffs.begin(), a.coeffs.end());
    return r;
  }

  std::optional<RPoly> div_exact(RPoly a, const RPoly& b, int k) const {
    if (is_zero(b, k)) return std::nullopt;
    if (k == 0) return RPoly{f_.mul(a.scalar, f_.inv(b.scalar)), {}};
    RPoly q;
    if (a.coeffs.empty()) return q;
    if (a.coeffs.size() < b.coeffs.size()) return std::nullopt;
    q.coeffs.assign(a.coeffs.size() - b.coeffs.size() + 1, constant(0, k - 1));
    while (!a.coeffs.empty() && a.coeffs.size() >= b.coeffs.size()) {
      const std::size_t s = a.coeffs.size() - b.coeffs.size();
      auto lead = div_exact(a.coeffs.back(), b.coeffs.back(), k - 1);
      if (!lead) return std::nullopt;
      q.coeffs[s] = *lead;
      a = add(a, shift(scale(b, *lead, k), s, k), k, true);
    }
    if (!a.coeffs.empty()) return std::nullopt;
    trim(q, k);
    return q;
  }

  RPoly pseudo_rem(RPoly a, const RPoly& b, int k) const {
    const RPoly& lb = b.coeffs.back();
    while (!a.coeffs.empty() && a.coeffs.size() >= b.coeffs.size()) {
      const std::size_t s = a.coeffs.size() - b.coeffs.size();
      const RPoly la = a.coeffs.back();
      a = add(scale(a, lb, k), shift(scale(b, la, k), s, k), k, true);
    }
    return a;
  }

  RPoly content(const RPoly& a, int k) const {
    RPoly g = constant(0, k - 1);
    for (const auto& c : a.coeffs) g = gcd(g, c, k - 1);
    return g;
  }

  RPoly primitive_part(const RPoly& a, int k) const {
    if (a.coeffs.empty()) return a;
    const RPoly c = content(a, k);
    RPoly r;
    for (const auto& x : a.coeffs) r.coeffs.push_back(*div_exact(x, c, k - 1));
    return r;
  }

  std::uint64_t leading_scalar(const RPoly& a, int k) const {
    return k == 0 ? a.scalar : leading_scalar(a.coeffs.back(), k - 1);
  }

  RPoly monic(const RPoly& a, int k) const {
    if (is_zero(a, k)) return a;
    return mul(a, constant(f_.inv(leading_scalar(a, k)), k), k);
  }

  RPoly gcd(const RPoly& a, const RPoly& b, int k) const {
    if (is_zero(a, k)) return monic(b, k);
    if (is_zero(b, k)) return monic(a, k);
    if (k == 0) return constant(1, 0);
    const RPoly c = gcd(content(a, k), content(b, k), k - 1);
    RPoly p = primitive_part(a, k), q = primitive_part(b, k);
    if (p.coeffs.size() < q.coeffs.size()) std::swap(p, q);
    while (!q.coeffs.empty()) {
      RPoly r = pseudo_rem(p, q, k);
      p = std::move(q);
      q = primitive_part(r, k);
    }
    return monic(scale(p, c, k), k);
  }

  static int total_degree(const RPoly& a, int k) {
    if (k == 0) return a.scalar == 0 ? -1 : 0;
    int best = -1;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
      const int d = total_degree(a.coeffs[i], k - 1);
      if (d >= 0) best = std::max(best, d + static_cast<int>(i));
    }
    return best;
  }

  RPoly from_form(const ReducedForm& f) const {
    const int k = static_cast<int>(f.n_vars);
    RPoly r = constant(0, k);
    for (const auto& [m, c] : f.terms) r = add(r, monomial(m, c, k), k);
    return r;
  }

 private:
  RPoly monomial(const Monomial& m, std::uint64_t c, int k) const {
    if (k == 0) return RPoly{c, {}};
    RPoly r;
    const auto e = static_cast<std::size_t>(m[static_cast<std::size_t>(k - 1)]);
    r.coeffs.assign(e + 1, constant(0, k - 1));
    r.coeffs[e] = monomial(m, c, k - 1);
    return r;
  }

  const PrimeField& f_;
};

}  // namespace

int common_factor_degree(std::span<const ReducedForm> forms, const PrimeField& field) {
  if (forms.empty()) throw DomainError("common_factor_degree: no forms");
  RecursiveArith ar(field);
  const int k = static_cast<int>(forms[0].n_vars);
  RPoly g = RecursiveArith::constant(0, k);
  for (const auto& f : forms) g = ar.gcd(g, ar.from_form(f), k);
  if (RecursiveArith::is_zero(g, k)) return forms[0].degree;
  return RecursiveArith::total_degree(g, k);
}

bool no_common_zero_mod_p(std::span<const ReducedForm> forms, const PrimeField& field) {
  if (forms.empty()) throw DomainError("no_common_zero_mod_p: no forms");
  const std::size_t nv = forms.size();
  int D = 1;
  for (const auto& f : forms) D += f.degree - 1;
  const auto mons = monomials_of_degree(nv, D);
  std::map<Monomial, std::size_t> index;
  for (std::size_t i = 0; i < mons.size(); ++i) index[mons[i]] = i;
  std::vector<std::vector<std::uint64_t>> rows;
  for (const auto& f : forms) {
    if (f.is_zero()) continue;
    for (const auto& s : monomials_of_degree(nv, D - f.degree)) {
      std::vector<std::uint64_t> row(mons.size(), 0);
      for (const auto& [m, c] : f.terms) {
        Monomial t(nv);
        for (std::size_t i = 0; i < nv; ++i) t[i] = m[i] + s[i];
        row[index.at(t)] = c;
      }
      rows.push_back(std::move(row));
    }
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < mons.size() && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    const std::uint64_t inv = field.inv(rows[r][c]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      const std::uint64_t factor = field.mul(rows[i][c], inv);
      for (std::size_t j = c; j < mons.size(); ++j) {
        rows[i][j] = field.sub(rows[i][j], field.mul(factor, rows[r][j]));
      }
    }
    ++r;
  }
  return r == mons.size();
}

}  // namespace shafdyn
