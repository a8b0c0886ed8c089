#include <iostream>

#include <CLI11.hpp>

#include "cli.hpp"
#include "shafdyn/errors.hpp"

using namespace shafdyn;

int main(int argc, char** argv) {
  CLI::App app{"shafdyn: exact arithmetic for good reduction, twists and point-set discriminants"};
  app.footer(
      "commands: badprimes reduce preper disc classp maps twists iso verify\n"
      "inputs: inline text, @file, or - for stdin\n"
      "exit status: 0 ok, 1 domain error, 2 parse error, 3 inconclusive");

  std::string command, S_text, format = "json", p_text, height_text = "100";
  std::vector<std::string> raw_inputs;
  cli::RunConfig config;
  std::size_t N = 0;
  bool print_config = false;

  app.add_option("command", command, "Subcommand")->required()->check(CLI::IsMember(cli::command_names()));
  app.add_option("inputs", raw_inputs, "Morphisms (\"F0; F1\") or point sets (\"0, 1, inf\" / \"(0:1),(1:0)\")");
  app.add_option("--S", S_text, "Finite primes of S, comma separated (infinity is implicit)");
  app.add_option("--M", config.M, "Orbit size bound for preperiodic search")->capture_default_str();
  app.add_option("--height-bound", height_text, "Height bound for point searches")->capture_default_str();
  app.add_option("--budget", config.budget, "Step budget for good-reduction search")->capture_default_str();
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.add_option("--p", p_text, "Prime for reduce");
  auto* n_opt = app.add_option("--N", N, "Cardinality for classp (default |V|)");
  app.add_flag("--check-iso", config.check_iso, "twists: decide pairwise K-isomorphism");
  app.add_option("--suite", config.suite, "verify: 'invariants' or one suite name")->capture_default_str();
  app.add_option("--rng-seed", config.rng_seed, "verify: generator seed")->capture_default_str();
  app.add_option("--trials", config.trials, "verify: trials per suite")->capture_default_str();
  app.add_flag("--print-config", print_config, "Print the canonical run configuration and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitParse;
  }

  try {
    config.command = cli::parse_command(command);
    config.format = format == "text" ? cli::Format::text : cli::Format::json;
    config.S = parse_place_set(S_text);
    if (config.height_bound.set_str(height_text, 10) != 0) throw ParseError("--height-bound: not an integer");
    if (!p_text.empty()) {
      Integer p;
      if (p.set_str(p_text, 10) != 0) throw ParseError("--p: not an integer");
      config.p = p;
    }
    if (*n_opt) config.N = N;
    for (const auto& arg : raw_inputs) config.inputs.push_back(cli::resolve_input(arg, std::cin));
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return cli::kExitParse;
  }

  if (print_config) {
    std::cout << cli::config_to_json(config).dump(2) << "\n";
    return cli::kExitOk;
  }

  const cli::RunOutcome outcome = cli::run(config);
  if (!outcome.diagnostic.empty()) std::cerr << outcome.diagnostic << "\n";
  std::cout << outcome.render(config.format);
  return outcome.exit_code;
}
