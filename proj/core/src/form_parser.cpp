#include <cctype>
#include <map>

#include "shafdyn/errors.hpp"
#include "shafdyn/forms.hpp"

namespace shafdyn {

namespace {

// Not necessarily homogeneous; homogeneity is checked once at the end.
using Poly = std::map<Monomial, Rational>;

void poly_add(Poly& a, const Poly& b, int sign) {
  for (const auto& [m, c] : b) {
    Rational& slot = a[m];
    slot += sign * c;
    if (slot == 0) a.erase(m);
  }
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      Monomial m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      Rational& slot = out[m];
      slot += ca * cb;
      if (slot == 0) out.erase(m);
    }
  }
  return out;
}

class Parser {
 public:
  Parser(const std::string& text, std::size_t n_vars) : text_(text), n_vars_(n_vars) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("form '" + text_ + "' at offset " + std::to_string(pos_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  Poly constant(const Rational& c) const {
    Poly p;
    if (c != 0) p[Monomial(n_vars_, 0)] = c;
    return p;
  }

  Poly expr() {
    Poly out;
    int sign = 1;
    if (accept('-')) {
      sign = -1;
    } else {
      accept('+');
    }
    poly_add(out, term(), sign);
    while (true) {
      if (accept('+')) {
        poly_add(out, term(), 1);
      } else if (accept('-')) {
        poly_add(out, term(), -1);
      } else {
        break;
      }
    }
    return out;
  }

  bool starts_factor() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '(';
  }

  Poly term() {
    Poly out = factor();
    while (true) {
      if (accept('*')) {
        out = poly_mul(out, factor());
      } else if (starts_factor()) {
        out = poly_mul(out, factor());
      } else {
        break;
      }
    }
    return out;
  }

  Poly factor() {
    Poly base = atom();
    if (accept('^')) {
      const Integer e = uint_literal();
      if (e > 64) fail("exponent too large");
      Poly result = constant(1);
      for (unsigned long k = 0; k < e.get_ui(); ++k) result = poly_mul(result, base);
      return result;
    }
    return base;
  }

  Integer uint_literal() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return Integer(text_.substr(start, pos_ - start));
  }

  Poly atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num = uint_literal();
      Integer den = 1;
      if (accept('/')) {
        den = uint_literal();
        if (den == 0) fail("zero denominator");
      }
      Rational q(num, den);
      q.canonicalize();
      return constant(q);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string name = text_.substr(start, pos_ - start);
      Monomial m(n_vars_, 0);
      m[variable_index(name)] = 1;
      Poly p;
      p[m] = 1;
      return p;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::size_t variable_index(const std::string& name) {
    std::size_t idx = n_vars_;
    if (n_vars_ <= 3 && name.size() == 1) {
      if (name == "X") idx = 0;
      if (name == "Y") idx = 1;
      if (name == "Z") idx = 2;
    }
    if (name.size() >= 2 && name[0] == 'X' &&
        name.find_first_not_of("0123456789", 1) == std::string::npos) {
      idx = std::stoul(name.substr(1));
    }
    if (idx >= n_vars_) fail("unknown variable '" + name + "' for " + std::to_string(n_vars_) + " variables");
    return idx;
  }

  const std::string& text_;
  std::size_t n_vars_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string variable_name(std::size_t n_vars, std::size_t index) {
  if (n_vars <= 3) return std::string(1, "XYZ"[index]);
  return "X" + std::to_string(index);
}

HomogeneousForm parse_form(const std::string& text, std::size_t n_vars) {
  if (n_vars == 0) throw ParseError("parse_form: need at least one variable");
  const Poly p = Parser(text, n_vars).parse();
  if (p.empty()) return HomogeneousForm(n_vars, 0);
  int degree = -1;
  for (const auto& [m, c] : p) {
    int d = 0;
    for (int e : m) d += e;
    if (degree >= 0 && d != degree) throw ParseError("form '" + text + "' is not homogeneous");
    degree = d;
  }
  HomogeneousForm f(n_vars, degree);
  for (const auto& [m, c] : p) f.set_coefficient(m, c);
  return f;
}

std::vector<HomogeneousForm> parse_form_list(const std::string& text) {
  std::vector<std::string> pieces;
  std::size_t start = 0;
  while (true) {
    const std::size_t semi = text.find(';', start);
    pieces.push_back(text.substr(start, semi == std::string::npos ? std::string::npos : semi - start));
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  // Tolerate one trailing semicolon.
  if (pieces.size() > 1 && pieces.back().find_first_not_of(" \t\r\n") == std::string::npos) pieces.pop_back();
  std::vector<HomogeneousForm> out;
  for (const auto& piece : pieces) out.push_back(parse_form(piece, pieces.size()));
  return out;
}

std::string format_form(const HomogeneousForm& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    const bool negative = c < 0;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const Rational mag = abs(c);
    std::string mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += variable_name(f.n_vars(), i);
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    if (mono.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.get_str() + "*" + mono;
    }
  }
  return out;
}

}  // namespace shafdyn
