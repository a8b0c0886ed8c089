#ifndef SHAFDYN_TOOLS_CLI_HPP
#define SHAFDYN_TOOLS_CLI_HPP

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "shafdyn/serialize.hpp"

namespace shafdyn::cli {

enum class Command { badprimes, reduce, preper, disc, classp, maps, twists, iso, verify };
enum class Format { json, text };

const std::vector<std::string>& command_names();
std::string to_string(Command c);
/// ParseError on an unknown name.
Command parse_command(const std::string& name);

struct RunConfig {
  Command command = Command::badprimes;
  PlaceSet S;
  std::size_t M = 4;
  Integer height_bound = 100;
  unsigned budget = 4;
  Format format = Format::json;
  /// Input texts after @file / stdin resolution: one morphism or point set
  /// per entry, two for maps and iso.
  std::vector<std::string> inputs;
  std::optional<Integer> p;         // reduce
  std::optional<std::size_t> N;     // classp; defaults to |V|
  bool check_iso = false;           // twists
  std::string suite = "invariants";  // verify
  std::uint64_t rng_seed = 0;
  std::size_t trials = 100;
};

/// Canonical serialized form; from_json(to_json(c)) == c field by field.
Json config_to_json(const RunConfig& config);
RunConfig config_from_json(const Json& j);

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitInconclusive = 3;

struct RunOutcome {
  int exit_code = kExitOk;
  Json report;             // empty on errors
  std::string diagnostic;  // error text, never part of the report
  /// The report rendered in the requested format.
  std::string render(Format format) const;
};

RunOutcome run(const RunConfig& config);

/// "@path" reads a file, "-" reads `stdin_stream`, anything else is inline.
/// ParseError when a file cannot be read.
std::string resolve_input(const std::string& arg, std::istream& stdin_stream);

}  // namespace shafdyn::cli

#endif  // SHAFDYN_TOOLS_CLI_HPP
