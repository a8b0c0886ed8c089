#include "shafdyn/arith.hpp"

#include <algorithm>
#include <sstream>

#include "shafdyn/errors.hpp"

namespace shafdyn {

namespace {

constexpr unsigned long kTrialLimit = 1000000;

Integer pollard_brent(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, q = 1, g = 1, ys;
    const unsigned long m = 128;
    unsigned long r = 1;
    auto f = [&](const Integer& v) {
      Integer out = v * v + c;
      mpz_mod(out.get_mpz_t(), out.get_mpz_t(), n.get_mpz_t());
      return out;
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        const unsigned long steps = std::min(m, r - k);
        for (unsigned long i = 0; i < steps; ++i) {
          y = f(y);
          Integer diff = abs(x - y);
          q = (q * diff) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        Integer diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(const Integer& n, std::map<Integer, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  Integer d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

std::map<Integer, unsigned> factorize(const Integer& n) {
  if (n == 0) throw DomainError("factorize: zero has no factorization");
  std::map<Integer, unsigned> out;
  Integer m = abs(n);
  for (unsigned long p = 2; p <= kTrialLimit; p += (p == 2 ? 1 : 2)) {
    if (m == 1) break;
    if (Integer(p) * p > m) {
      ++out[m];
      return out;
    }
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      ++out[Integer(p)];
      m /= p;
    }
  }
  factor_into(m, out);
  return out;
}

std::vector<Integer> prime_divisors(const Integer& n) {
  std::vector<Integer> out;
  for (const auto& [p, e] : factorize(n)) out.push_back(p);
  return out;
}

std::vector<Integer> divisors(const Integer& n) {
  std::vector<Integer> out{1};
  for (const auto& [p, e] : factorize(n)) {
    const std::size_t base = out.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

long valuation(const Rational& x, const Integer& p) {
  if (x == 0) throw DomainError("valuation: the valuation of 0 is infinite");
  if (!is_prime(p)) throw DomainError("valuation: " + to_string(p) + " is not prime");
  long v = 0;
  Integer t = x.get_num();
  while (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
    t /= p;
    ++v;
  }
  t = x.get_den();
  while (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
    t /= p;
    --v;
  }
  return v;
}

bool is_square(const Integer& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

bool is_square(const Rational& x) {
  return is_square(Integer(x.get_num())) && is_square(Integer(x.get_den()));
}

bool exact_root(const Rational& x, unsigned k, Rational& root) {
  if (k == 0) return false;
  if (x < 0 && k % 2 == 0) return false;
  Integer num = abs(x.get_num()), den = x.get_den();
  Integer rn, rd;
  if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), k) == 0) return false;
  if (mpz_root(rd.get_mpz_t(), den.get_mpz_t(), k) == 0) return false;
  root = Rational(rn, rd);
  root.canonicalize();
  if (x < 0) root = -root;
  return true;
}

std::string to_string(const Integer& n) { return n.get_str(); }

std::string to_string(const Rational& x) { return x.get_str(); }

Rational parse_rational(const std::string& text) {
  Rational out;
  if (text.empty() || out.set_str(text, 10) != 0) {
    throw ParseError("not a rational number: '" + text + "'");
  }
  if (out.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
  out.canonicalize();
  return out;
}

// ---------------------------------------------------------------------------

PlaceSet::PlaceSet(std::vector<Integer> primes) : primes_(std::move(primes)) {
  std::sort(primes_.begin(), primes_.end());
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    if (!is_prime(primes_[i])) {
      throw DomainError("PlaceSet: " + shafdyn::to_string(primes_[i]) + " is not prime");
    }
    if (i > 0 && primes_[i] == primes_[i - 1]) {
      throw DomainError("PlaceSet: duplicate prime " + shafdyn::to_string(primes_[i]));
    }
  }
}

PlaceSet::PlaceSet(std::initializer_list<long> primes)
    : PlaceSet(std::vector<Integer>(primes.begin(), primes.end())) {}

bool PlaceSet::contains(const Integer& p) const {
  return std::binary_search(primes_.begin(), primes_.end(), p);
}

std::string PlaceSet::to_string() const {
  std::string out = "{inf";
  for (const auto& p : primes_) out += "," + shafdyn::to_string(p);
  return out + "}";
}

SIdeal SIdeal::from_exponents(const std::map<Integer, long>& exps, const PlaceSet& S) {
  SIdeal out;
  for (const auto& [p, e] : exps) {
    if (e != 0 && !S.contains(p)) out.exps_[p] = e;
  }
  return out;
}

long SIdeal::exponent(const Integer& p) const {
  auto it = exps_.find(p);
  return it == exps_.end() ? 0 : it->second;
}

SIdeal& SIdeal::operator*=(const SIdeal& other) {
  for (const auto& [p, e] : other.exps_) {
    long& slot = exps_[p];
    slot += e;
    if (slot == 0) exps_.erase(p);
  }
  return *this;
}

SIdeal SIdeal::pow(long k) const {
  SIdeal out;
  if (k == 0) return out;
  for (const auto& [p, e] : exps_) out.exps_[p] = e * k;
  return out;
}

std::string SIdeal::to_string() const {
  if (exps_.empty()) return "(1)";
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (const auto& [p, e] : exps_) {
    if (!first) os << " * ";
    first = false;
    os << p.get_str();
    if (e != 1) os << "^" << e;
  }
  os << ")";
  return os.str();
}

SIdeal sideal_of_rational(const Rational& x, const PlaceSet& S) {
  if (x == 0) throw DomainError("sideal_of_rational: zero generates no fractional ideal");
  std::map<Integer, long> exps;
  for (const auto& [p, e] : factorize(Integer(x.get_num()))) exps[p] += e;
  if (x.get_den() != 1) {
    for (const auto& [p, e] : factorize(Integer(x.get_den()))) exps[p] -= e;
  }
  return SIdeal::from_exponents(exps, S);
}

bool is_s_unit(const Rational& x, const PlaceSet& S) {
  if (x == 0) throw DomainError("is_s_unit: zero is not a unit");
  return sideal_of_rational(x, S).is_unit();
}

bool is_s_integer(const Rational& x, const PlaceSet& S) {
  if (x == 0) return true;
  const SIdeal ideal = sideal_of_rational(x, S);
  for (const auto& [p, e] : ideal.exponents()) {
    if (e < 0) return false;
  }
  return true;
}

SquareClass::SquareClass(const Integer& representative) : rep_(representative) {
  if (rep_ == 0) throw DomainError("SquareClass: zero has no square class");
  for (const auto& [p, e] : factorize(rep_)) {
    if (e > 1) throw DomainError("SquareClass: representative " + rep_.get_str() + " is not squarefree");
  }
}

SquareClass SquareClass::of(const Rational& x) {
  if (x == 0) throw DomainError("SquareClass: zero has no square class");
  Integer rep = sgn(x);
  Integer n = x.get_num() * x.get_den();
  for (const auto& [p, e] : factorize(n)) {
    if (e % 2 == 1) rep *= p;
  }
  return SquareClass(rep);
}

bool SquareClass::same_class(const Rational& x) const {
  if (x == 0) return false;
  return is_square(Rational(x / rep_));
}

std::vector<SquareClass> square_class_reps(const PlaceSet& S) {
  const auto& ps = S.primes();
  std::vector<Integer> positive;
  const std::size_t count = std::size_t{1} << ps.size();
  for (std::size_t mask = 0; mask < count; ++mask) {
    Integer r = 1;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (mask & (std::size_t{1} << i)) r *= ps[i];
    }
    positive.push_back(r);
  }
  std::sort(positive.begin(), positive.end());
  std::vector<SquareClass> out;
  out.reserve(2 * positive.size());
  for (const auto& r : positive) out.emplace_back(r);
  for (const auto& r : positive) out.emplace_back(Integer(-r));
  return out;
}

}  // namespace shafdyn
