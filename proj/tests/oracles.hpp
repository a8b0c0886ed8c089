// Independent reference computations used only by tests. Each one takes the
// slow, obvious route so it shares no code path with the library routine it
// checks.
#ifndef SHAFDYN_TESTS_ORACLES_HPP
#define SHAFDYN_TESTS_ORACLES_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "shafdyn/dynamics.hpp"
#include "shafdyn/forms.hpp"
#include "shafdyn/projective.hpp"

namespace oracle {

using shafdyn::HomogeneousForm;
using shafdyn::Integer;
using shafdyn::Rational;

/// a/b in lowest terms.
inline Rational ratio(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

/// Leibniz expansion over all permutations.
inline Rational leibniz_det(const std::vector<std::vector<Rational>>& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rational total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Rational term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n && term != 0; ++i) term *= m[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline std::map<Integer, unsigned> trial_division(Integer n) {
  std::map<Integer, unsigned> out;
  n = abs(n);
  for (Integer p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  if (n > 1) ++out[n];
  return out;
}

/// Exponents of x at primes outside `s_primes`.
inline std::map<Integer, long> ideal_exponents(const Rational& x, const std::vector<Integer>& s_primes) {
  std::map<Integer, long> out;
  for (const auto& [p, e] : trial_division(x.get_num())) out[p] += e;
  for (const auto& [p, e] : trial_division(x.get_den())) out[p] -= e;
  for (auto it = out.begin(); it != out.end();) {
    if (it->second == 0 || std::find(s_primes.begin(), s_primes.end(), it->first) != s_primes.end())
      it = out.erase(it);
    else
      ++it;
  }
  return out;
}

/// Binary form coefficients (a_d, ..., a_0), a_i the coefficient of X^i Y^(d-i).
inline std::vector<Rational> binary_coeffs(const HomogeneousForm& f) {
  std::vector<Rational> out;
  for (int i = f.degree(); i >= 0; --i) out.push_back(f.coefficient({i, f.degree() - i}));
  return out;
}

/// Sylvester determinant, rows of F first, via Leibniz.
inline Rational sylvester_leibniz(const HomogeneousForm& f, const HomogeneousForm& g) {
  const auto a = binary_coeffs(f), b = binary_coeffs(g);
  const std::size_t df = a.size() - 1, dg = b.size() - 1, n = df + dg;
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, 0));
  for (std::size_t r = 0; r < dg; ++r)
    for (std::size_t i = 0; i <= df; ++i) m[r][r + i] = a[i];
  for (std::size_t r = 0; r < df; ++r)
    for (std::size_t i = 0; i <= dg; ++i) m[dg + r][r + i] = b[i];
  return leibniz_det(m);
}

/// scale^deg(G) * prod G(a_i, b_i) for F = scale * prod (b_i X - a_i Y).
inline Rational product_over_roots(const Integer& scale, const std::vector<std::pair<Integer, Integer>>& roots,
                                   const HomogeneousForm& g) {
  Rational out = 1;
  for (int i = 0; i < g.degree(); ++i) out *= scale;
  for (const auto& [a, b] : roots) {
    const Rational pt[2] = {Rational(a), Rational(b)};
    out *= g.evaluate(std::span<const Rational>(pt));
  }
  return out;
}

inline long mod(const Integer& x, long p) {
  Integer r = x % p;
  if (r < 0) r += p;
  return r.get_si();
}

/// Integer-coefficient form evaluated mod p at a point with entries in [0, p).
inline long eval_mod(const HomogeneousForm& f, const std::vector<long>& x, long p) {
  long total = 0;
  for (const auto& [mono, c] : f.terms()) {
    long term = mod(c.get_num(), p);
    for (std::size_t i = 0; i < mono.size(); ++i)
      for (int k = 0; k < mono[i]; ++k) term = term * x[i] % p;
    total = (total + term) % p;
  }
  return total;
}

/// Exhaustive search for a common zero in P^n(F_p) (normalized points: last
/// nonzero coordinate is 1).
inline bool common_zero_mod_p(const std::vector<HomogeneousForm>& forms, long p) {
  const std::size_t size = forms[0].n_vars();
  std::vector<long> x(size, 0);
  for (std::size_t lead = 0; lead < size; ++lead) {
    // x[lead] = 1, x[j] = 0 for j > lead, x[j] free for j < lead.
    long count = 1;
    for (std::size_t j = 0; j < lead; ++j) count *= p;
    for (long code = 0; code < count; ++code) {
      long c = code;
      for (std::size_t j = 0; j < size; ++j) {
        if (j < lead) {
          x[j] = c % p;
          c /= p;
        } else {
          x[j] = j == lead ? 1 : 0;
        }
      }
      bool all = true;
      for (const auto& f : forms)
        if (eval_mod(f, x, p) != 0) {
          all = false;
          break;
        }
      if (all) return true;
    }
  }
  return false;
}

inline shafdyn::ProjPoint canonical(std::vector<Integer> v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  auto first = std::find_if(v.begin(), v.end(), [](const Integer& x) { return x != 0; });
  if (*first < 0) g = -g;
  for (auto& x : v) x /= g;
  return shafdyn::ProjPoint(v);
}

/// Evaluate the lift directly and normalize.
inline shafdyn::ProjPoint step(const shafdyn::MorphismPN& phi, const shafdyn::ProjPoint& p) {
  std::vector<Integer> out;
  for (const auto& f : phi.forms()) out.push_back(f.evaluate(std::span<const Integer>(p.coords())));
  return canonical(out);
}

/// Rational points of P^1 with |a|, |b| <= bound whose orbit has at most M
/// distinct points.
inline std::set<shafdyn::ProjPoint> brute_preperiodic_p1(const shafdyn::MorphismPN& phi, std::size_t M, long bound) {
  std::set<shafdyn::ProjPoint> out;
  for (long a = -bound; a <= bound; ++a)
    for (long b = 0; b <= bound; ++b) {
      if (gcd(Integer(a), Integer(b)) != 1) continue;
      if (b == 0 && a != 1) continue;
      std::vector<shafdyn::ProjPoint> seen{canonical({a, b})};
      bool closed = false;
      while (seen.size() <= M) {
        const auto next = step(phi, seen.back());
        if (std::find(seen.begin(), seen.end(), next) != seen.end()) {
          closed = true;
          break;
        }
        seen.push_back(next);
      }
      if (closed && seen.size() <= M) out.insert(seen.front());
    }
  return out;
}

}  // namespace oracle

#endif  // SHAFDYN_TESTS_ORACLES_HPP
