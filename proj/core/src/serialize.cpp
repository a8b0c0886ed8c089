#include "shafdyn/serialize.hpp"

#include <limits>

#include "shafdyn/errors.hpp"
#include "shafdyn/forms.hpp"

namespace shafdyn {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

/// "inf", "a:b", "(a : b)" or an affine rational z meaning (z : 1).
ProjPoint parse_point_token(const std::string& token) {
  const std::string t = trim(token);
  if (t == "inf" || t == "oo" || t == "infinity") return ProjPoint{1, 0};
  if (t.find(':') != std::string::npos) return parse_point(t);
  const Rational z = parse_rational(t);
  const Rational coords[2] = {z, Rational(1)};
  return normalize_point(std::span<const Rational>(coords));
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ParseError("expected an integer or a rational string, got " + j.dump());
}

}  // namespace

Json integer_json(const Integer& n) {
  if (n.fits_slong_p()) return Json(static_cast<std::int64_t>(n.get_si()));
  return Json(n.get_str());
}

Json rational_json(const Rational& x) { return Json(x.get_str()); }

Json to_json(const ProjPoint& p) {
  Json out = Json::array();
  for (const auto& c : p.coords()) out.push_back(integer_json(c));
  return out;
}

Json to_json(const PointSet& V) {
  Json out = Json::array();
  for (const auto& p : V.points()) out.push_back(to_json(p));
  return out;
}

Json to_json(const ProjLinearMap& f) {
  Json out = Json::array();
  const auto& m = f.lift();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(integer_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const SIdeal& ideal) {
  Json exps = Json::object();
  for (const auto& [p, e] : ideal.exponents()) exps[p.get_str()] = e;
  return Json{{"ideal", ideal.to_string()}, {"unit", ideal.is_unit()}, {"exponents", exps}};
}

Json to_json(const MorphismPN& phi) {
  Json forms = Json::array();
  for (const auto& f : phi.forms()) forms.push_back(format_form(f));
  Json out{{"n", phi.dimension()}, {"d", phi.degree()}, {"forms", forms}};
  out["resultant"] = phi.resultant() ? rational_json(*phi.resultant()) : Json(nullptr);
  return out;
}

Json to_json(const OrbitRecord& orbit) {
  Json pts = Json::array();
  for (const auto& p : orbit.points) pts.push_back(to_json(p));
  return Json{{"start", to_json(orbit.start)},
              {"points", pts},
              {"tail_length", orbit.tail_length},
              {"cycle_length", orbit.cycle_length},
              {"truncated", orbit.truncated}};
}

Json to_json(const ReductionReport& report) {
  Json reduced = Json::array();
  for (const auto& f : report.reduced) reduced.push_back(format_form(f.lift()));
  return Json{{"p", integer_json(report.p)},
              {"degree", report.degree},
              {"is_morphism", report.is_morphism},
              {"reduced_coeffs", reduced}};
}

Json to_json(const ClassPReport& report) {
  Json out{{"member", report.member()},
           {"cardinality", report.cardinality},
           {"galois_stable", report.galois_stable},
           {"galois_stable_vacuous", true},
           {"independent_frame", report.independent_frame},
           {"unit_discriminant", report.unit_discriminant}};
  out["discriminant"] = report.discriminant ? to_json(*report.discriminant) : Json(nullptr);
  return out;
}

Json to_json(const DecomposableForm& F) {
  Json factors = Json::array();
  for (const auto& f : F.factors()) {
    const LinearForm l(std::vector<Rational>(f.coefficients.coords().begin(), f.coefficients.coords().end()));
    factors.push_back(Json{{"linear_form", format_form(l.to_form())}, {"multiplicity", f.multiplicity}});
  }
  return Json{{"scalar", rational_json(F.scalar())},
              {"degree", F.degree()},
              {"factors", factors},
              {"expanded", format_form(F.expand())}};
}

Json to_json(const IsoResult& result) {
  Json out{{"verdict", to_string(result.verdict)}, {"method", result.method}};
  out["witness"] = result.witness ? to_json(*result.witness) : Json(nullptr);
  out["phi_points"] = result.phi_points;
  out["psi_points"] = result.psi_points;
  out["candidates_tested"] = result.candidates_tested;
  if (result.verdict == IsoVerdict::no) out["note"] = "no rational witness over the computed sets";
  return out;
}

Json to_json(const TwistRecord& record) {
  Json bad = Json::array();
  for (const auto& p : record.bad_primes) bad.push_back(integer_json(p));
  return Json{{"gamma", integer_json(record.gamma.representative())},
              {"model", to_json(record.model)},
              {"bad_primes", bad},
              {"s_model", record.s_model},
              {"k_iso_class", record.k_iso_class}};
}

Json to_json(const TwistEnumeration& twists) {
  Json records = Json::array();
  for (const auto& r : twists.records) records.push_back(to_json(r));
  Json out{{"count", twists.records.size()},
           {"complete_relative_to_z2", twists.complete_relative_to_z2},
           {"records", records}};
  if (!twists.pairwise.empty()) {
    Json pairs = Json::array();
    for (const auto& [i, j, v] : twists.pairwise) pairs.push_back(Json{{"i", i}, {"j", j}, {"verdict", to_string(v)}});
    out["pairwise"] = pairs;
  }
  return out;
}

// ---------------------------------------------------------------------------

PointSet point_set_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("point set: expected a nonempty JSON array");
  std::vector<ProjPoint> pts;
  for (const auto& item : j) {
    if (item.is_string()) {
      pts.push_back(parse_point_token(item.get<std::string>()));
      continue;
    }
    if (!item.is_array()) throw ParseError("point set: expected coordinate arrays");
    std::vector<Rational> coords;
    for (const auto& c : item) coords.push_back(rational_from_json(c));
    if (coords.size() < 2) throw ParseError("point set: a point needs at least two coordinates");
    try {
      pts.push_back(normalize_point(coords));
    } catch (const DomainError&) {
      throw ParseError("point set: all coordinates are zero");
    }
  }
  try {
    return PointSet(std::move(pts));
  } catch (const DomainError& e) {
    throw ParseError(std::string("point set: ") + e.what());
  }
}

PointSet parse_point_set(const std::string& text) {
  std::string body = trim(text);
  if (!body.empty() && body.front() == '[') {
    Json j;
    try {
      j = Json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("point set: invalid JSON: ") + e.what());
    }
    return point_set_from_json(j);
  }
  if (!body.empty() && body.front() == '{') {
    if (body.back() != '}') throw ParseError("point set: unbalanced braces");
    body = body.substr(1, body.size() - 2);
  }
  std::vector<ProjPoint> pts;
  std::string token;
  int depth = 0;
  auto flush = [&] {
    if (trim(token).empty()) throw ParseError("point set: empty entry in '" + text + "'");
    pts.push_back(parse_point_token(token));
    token.clear();
  };
  for (char ch : body) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth < 0) throw ParseError("point set: unbalanced parentheses");
    if (depth == 0 && (ch == ',' || ch == ';')) {
      flush();
      continue;
    }
    token += ch;
  }
  if (depth != 0) throw ParseError("point set: unbalanced parentheses");
  flush();
  try {
    return PointSet(std::move(pts));
  } catch (const DomainError& e) {
    throw ParseError(std::string("point set: ") + e.what());
  }
}

MorphismPN morphism_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("forms") || !j["forms"].is_array())
    throw ParseError("morphism: expected an object with a \"forms\" array");
  std::string joined;
  for (const auto& f : j["forms"]) {
    if (!f.is_string()) throw ParseError("morphism: forms must be strings");
    if (!joined.empty()) joined += ";";
    joined += f.get<std::string>();
  }
  return MorphismPN::parse(joined);
}

MorphismPN parse_morphism(const std::string& text) {
  const std::string body = trim(text);
  if (!body.empty() && body.front() == '{') {
    try {
      return morphism_from_json(Json::parse(body));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("morphism: invalid JSON: ") + e.what());
    }
  }
  return MorphismPN::parse(body);
}

PlaceSet parse_place_set(const std::string& text) {
  std::vector<Integer> primes;
  std::string token;
  auto flush = [&] {
    const std::string t = trim(token);
    token.clear();
    if (t.empty() || t == "inf") return;
    Integer p;
    if (p.set_str(t, 10) != 0 || p < 2) throw ParseError("place set: not a prime: '" + t + "'");
    primes.push_back(p);
  };
  for (char ch : text) {
    if (ch == ',') {
      flush();
    } else if (ch != '{' && ch != '}') {
      token += ch;
    }
  }
  flush();
  try {
    return PlaceSet(std::move(primes));
  } catch (const DomainError& e) {
    throw ParseError(std::string("place set: ") + e.what());
  }
}

}  // namespace shafdyn
