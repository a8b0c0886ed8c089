#include "cli.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

#include "shafdyn/dynamics.hpp"
#include "shafdyn/errors.hpp"
#include "shafdyn/shafarevich.hpp"
#include "shafdyn/verify.hpp"

namespace shafdyn::cli {

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"badprimes", "reduce", "preper", "disc", "classp",
                                                 "maps",      "twists", "iso",    "verify"};
  return names;
}

std::string to_string(Command c) { return command_names()[static_cast<std::size_t>(c)]; }

Command parse_command(const std::string& name) {
  const auto& names = command_names();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<Command>(i);
  throw ParseError("unknown command '" + name + "'");
}

namespace {

std::string format_name(Format f) { return f == Format::json ? "json" : "text"; }

Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "text") return Format::text;
  throw ParseError("unknown format '" + s + "' (expected json or text)");
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.dump());
  if (j.is_string()) {
    Integer out;
    if (out.set_str(j.get<std::string>(), 10) == 0) return out;
  }
  throw ParseError("expected an integer, got " + j.dump());
}

std::size_t expect_inputs(const RunConfig& c, std::size_t count) {
  if (c.inputs.size() != count)
    throw ParseError(to_string(c.command) + ": expected " + std::to_string(count) + " input(s), got " +
                     std::to_string(c.inputs.size()));
  return count;
}

Json header(const RunConfig& c) { return Json{{"schema", kSchema}, {"command", to_string(c.command)}}; }

Json places_json(const PlaceSet& S) {
  Json out = Json::array();
  for (const auto& p : S.primes()) out.push_back(integer_json(p));
  return out;
}

Json run_badprimes(const RunConfig& c) {
  expect_inputs(c, 1);
  const MorphismPN phi = parse_morphism(c.inputs[0]);
  Json r = header(c);
  r["morphism"] = to_json(phi);
  r["resultant"] = rational_json(phi.resultant_value());
  Json bad = Json::array();
  const auto primes = bad_primes_of_model(phi);
  for (const auto& p : primes) bad.push_back(integer_json(p));
  r["bad_primes"] = bad;
  if (phi.dimension() == 1) {
    Json searches = Json::array();
    for (const auto& p : primes) {
      Json entry{{"p", integer_json(p)}};
      try {
        const auto s = good_reduction_search(phi, p, c.budget);
        entry["found"] = s.found;
        entry["best_valuation"] = s.best_valuation;
        entry["steps"] = s.steps;
        entry["witness"] = s.witness ? to_json(*s.witness) : Json(nullptr);
        entry["model"] = s.model ? to_json(*s.model) : Json(nullptr);
      } catch (const ResourceError& e) {
        entry["skipped"] = e.what();
      }
      searches.push_back(std::move(entry));
    }
    r["good_reduction_search"] = searches;
  }
  return r;
}

Json run_reduce(const RunConfig& c) {
  expect_inputs(c, 1);
  if (!c.p) throw ParseError("reduce: --p is required");
  const MorphismPN phi = parse_morphism(c.inputs[0]);
  Json r = header(c);
  r["morphism"] = to_json(phi);
  r["reduction"] = to_json(reduce_at_p(phi, *c.p));
  if (phi.resultant())
    r["p_divides_resultant"] = valuation(*phi.resultant(), *c.p) > 0;
  return r;
}

Json run_preper(const RunConfig& c) {
  expect_inputs(c, 1);
  const MorphismPN phi = parse_morphism(c.inputs[0]);
  const auto pts = rational_preperiodic(phi, c.M, c.height_bound);
  Json r = header(c);
  r["morphism"] = to_json(phi);
  r["M"] = c.M;
  r["height_bound"] = integer_json(c.height_bound);
  Json points = Json::array(), orbits = Json::array();
  for (const auto& p : pts) {
    points.push_back(to_json(p));
    orbits.push_back(to_json(orbit(phi, p, c.M)));
  }
  r["count"] = pts.size();
  r["points"] = points;
  r["orbits"] = orbits;
  return r;
}

Json determinant_table(const DecomposableForm& F) {
  std::vector<ProjPoint> pts;
  for (const auto& f : F.factors()) pts.push_back(f.coefficients);
  const std::size_t k = F.n_vars();
  Json rows = Json::array();
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > pts.size()) return rows;
  std::vector<ProjPoint> subset(k);
  while (true) {
    Json ids = Json::array();
    for (std::size_t i = 0; i < k; ++i) {
      subset[i] = pts[idx[i]];
      ids.push_back(idx[i]);
    }
    rows.push_back(Json{{"factors", ids}, {"det", det_points(subset).get_str()}});
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == pts.size() - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return rows;
}

Json run_disc(const RunConfig& c) {
  expect_inputs(c, 1);
  const PointSet V = parse_point_set(c.inputs[0]);
  const DecomposableForm F = form_of_point_set(V);
  Json r = header(c);
  r["points"] = to_json(V);
  r["S"] = places_json(c.S);
  r["form"] = to_json(F);
  r["determinants"] = determinant_table(F);
  r["discriminant"] = to_json(discriminant_ideal(F, c.S));
  return r;
}

Json run_classp(const RunConfig& c) {
  expect_inputs(c, 1);
  const PointSet V = parse_point_set(c.inputs[0]);
  const std::size_t N = c.N.value_or(V.size());
  Json r = header(c);
  r["points"] = to_json(V);
  r["S"] = places_json(c.S);
  r["N"] = N;
  r["report"] = to_json(in_class_P(V, c.S, N));
  return r;
}

Json run_maps(const RunConfig& c) {
  expect_inputs(c, 2);
  const PointSet V = parse_point_set(c.inputs[0]);
  const PointSet W = parse_point_set(c.inputs[1]);
  const auto maps = maps_between(V, W);
  Json r = header(c);
  r["V"] = to_json(V);
  r["W"] = to_json(W);
  r["count"] = maps.size();
  Json list = Json::array();
  for (const auto& f : maps) list.push_back(to_json(f));
  r["maps"] = list;
  return r;
}

Json run_twists(const RunConfig& c) {
  expect_inputs(c, 1);
  const MorphismPN phi = parse_morphism(c.inputs[0]);
  Json r = header(c);
  r["morphism"] = to_json(phi);
  r["S"] = places_json(c.S);
  r["twists"] = to_json(enumerate_twist_set(phi, c.S, c.check_iso, DynamicalSearch{c.M, c.height_bound}));
  return r;
}

Json run_iso(const RunConfig& c, int& exit_code) {
  expect_inputs(c, 2);
  const MorphismPN phi = parse_morphism(c.inputs[0]);
  const MorphismPN psi = parse_morphism(c.inputs[1]);
  const IsoResult res = is_k_isomorphic(phi, psi, DynamicalSearch{c.M, c.height_bound});
  Json r = header(c);
  r["phi"] = to_json(phi);
  r["psi"] = to_json(psi);
  r["M"] = c.M;
  r["height_bound"] = integer_json(c.height_bound);
  r["result"] = to_json(res);
  if (res.verdict == IsoVerdict::inconclusive) exit_code = kExitInconclusive;
  return r;
}

Json run_verify(const RunConfig& c, int& exit_code) {
  if (!c.inputs.empty()) throw ParseError("verify: takes no positional inputs");
  const VerifyOptions opts{c.trials, c.rng_seed};
  std::vector<SuiteResult> results;
  if (c.suite == "invariants") {
    results = run_invariant_suites(opts);
  } else {
    try {
      results.push_back(run_suite(c.suite, opts));
    } catch (const DomainError&) {
      throw ParseError("verify: unknown suite '" + c.suite + "'");
    }
  }
  Json r = header(c);
  r["suite"] = c.suite;
  r["trials"] = c.trials;
  r["rng_seed"] = c.rng_seed;
  Json table = Json::array();
  bool all = true;
  for (const auto& s : results) {
    all = all && s.ok();
    table.push_back(Json{{"name", s.name},
                         {"trials", s.trials},
                         {"passed", s.passed},
                         {"status", s.ok() ? "pass" : "fail"},
                         {"failures", s.failures}});
  }
  r["suites"] = table;
  r["all_passed"] = all;
  if (!all) exit_code = kExitDomain;
  return r;
}

// Text rendering: nested keys become indented "key: value" lines; arrays of
// scalars and of scalar arrays print inline.

bool is_flat(const Json& j) {
  if (j.is_object()) return j.empty();
  if (!j.is_array()) return true;
  for (const auto& x : j)
    if (x.is_object() || (x.is_array() && !is_flat(x))) return false;
  return true;
}

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) {
    std::string out = "[";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ", ";
      out += scalar_text(j[i]);
    }
    return out + "]";
  }
  return j.dump();
}

void render_text(const Json& j, int indent, std::ostringstream& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (is_flat(value)) {
        out << pad << key << ": " << scalar_text(value) << "\n";
      } else {
        out << pad << key << ":\n";
        render_text(value, indent + 2, out);
      }
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (is_flat(j[i])) {
        out << pad << "- " << scalar_text(j[i]) << "\n";
      } else {
        out << pad << "- [" << i << "]\n";
        render_text(j[i], indent + 2, out);
      }
    }
  } else {
    out << pad << scalar_text(j) << "\n";
  }
}

std::string verify_table(const Json& r) {
  std::ostringstream out;
  out << "suite                       trials  passed  status\n";
  for (const auto& s : r["suites"]) {
    std::string name = s["name"].get<std::string>();
    name.resize(std::max<std::size_t>(name.size(), 26), ' ');
    out << name << "  " << s["trials"].dump() << "     " << s["passed"].dump() << "     "
        << s["status"].get<std::string>() << "\n";
    for (const auto& f : s["failures"]) out << "    " << f.get<std::string>() << "\n";
  }
  out << (r["all_passed"].get<bool>() ? "all suites passed\n" : "FAILURES\n");
  return out.str();
}

}  // namespace

Json config_to_json(const RunConfig& c) {
  Json inputs = Json::array();
  for (const auto& s : c.inputs) inputs.push_back(s);
  Json out{{"command", to_string(c.command)},
           {"S", places_json(c.S)},
           {"M", c.M},
           {"height_bound", integer_json(c.height_bound)},
           {"budget", c.budget},
           {"format", format_name(c.format)},
           {"inputs", inputs}};
  out["p"] = c.p ? integer_json(*c.p) : Json(nullptr);
  out["N"] = c.N ? Json(*c.N) : Json(nullptr);
  out["check_iso"] = c.check_iso;
  out["suite"] = c.suite;
  out["rng_seed"] = c.rng_seed;
  out["trials"] = c.trials;
  return out;
}

RunConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("config: expected a JSON object");
  try {
    RunConfig c;
    c.command = parse_command(j.at("command").get<std::string>());
    std::vector<Integer> primes;
    for (const auto& p : j.at("S")) primes.push_back(integer_from_json(p));
    c.S = PlaceSet(std::move(primes));
    c.M = j.at("M").get<std::size_t>();
    c.height_bound = integer_from_json(j.at("height_bound"));
    c.budget = j.at("budget").get<unsigned>();
    c.format = parse_format(j.at("format").get<std::string>());
    c.inputs = j.at("inputs").get<std::vector<std::string>>();
    if (!j.at("p").is_null()) c.p = integer_from_json(j.at("p"));
    if (!j.at("N").is_null()) c.N = j.at("N").get<std::size_t>();
    c.check_iso = j.at("check_iso").get<bool>();
    c.suite = j.at("suite").get<std::string>();
    c.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    c.trials = j.at("trials").get<std::size_t>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
}

std::string RunOutcome::render(Format format) const {
  if (report.is_null()) return {};
  if (format == Format::json) return report.dump(2) + "\n";
  if (report.value("command", "") == "verify") return verify_table(report);
  std::ostringstream out;
  render_text(report, 0, out);
  return out.str();
}

RunOutcome run(const RunConfig& config) {
  RunOutcome out;
  try {
    if (config.M == 0) throw ParseError("--M must be positive");
    if (config.height_bound < 1) throw ParseError("--height-bound must be positive");
    if (config.budget == 0) throw ParseError("--budget must be positive");
    int code = kExitOk;
    switch (config.command) {
      case Command::badprimes: out.report = run_badprimes(config); break;
      case Command::reduce: out.report = run_reduce(config); break;
      case Command::preper: out.report = run_preper(config); break;
      case Command::disc: out.report = run_disc(config); break;
      case Command::classp: out.report = run_classp(config); break;
      case Command::maps: out.report = run_maps(config); break;
      case Command::twists: out.report = run_twists(config); break;
      case Command::iso: out.report = run_iso(config, code); break;
      case Command::verify: out.report = run_verify(config, code); break;
    }
    out.exit_code = code;
  } catch (const ParseError& e) {
    out = RunOutcome{kExitParse, Json(), std::string("parse error: ") + e.what()};
  } catch (const InconclusiveError& e) {
    out = RunOutcome{kExitInconclusive, Json(), std::string("inconclusive: ") + e.what()};
  } catch (const UnsupportedError& e) {
    out = RunOutcome{kExitDomain, Json(), std::string("unsupported: ") + e.what()};
  } catch (const DomainError& e) {
    out = RunOutcome{kExitDomain, Json(), std::string("domain error: ") + e.what()};
  } catch (const ResourceError& e) {
    out = RunOutcome{kExitDomain, Json(), std::string("resource limit: ") + e.what()};
  }
  return out;
}

std::string resolve_input(const std::string& arg, std::istream& stdin_stream) {
  if (arg == "-") return std::string(std::istreambuf_iterator<char>(stdin_stream), {});
  if (!arg.empty() && arg.front() == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw ParseError("cannot read input file '" + arg.substr(1) + "'");
    return std::string(std::istreambuf_iterator<char>(in), {});
  }
  return arg;
}

}  // namespace shafdyn::cli
