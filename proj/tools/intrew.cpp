#include <iostream>

#include <CLI11.hpp>

#include "intrew/cli.hpp"

int main(int argc, char** argv) {
  using namespace intrew::cli;
  CLI::App app{"Rewriting systems over finite sets and finite-dimensional rational vector spaces"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Machine-readable report");

  std::string path;
  std::string term;
  std::optional<std::size_t> depth_cap;
  SuiteOptions suite;

  auto* check = app.add_subcommand("check", "Verify the local strategy of a system");
  check->add_option("system", path, "System file")->required()->check(CLI::ExistingFile);
  auto* normalize = app.add_subcommand("normalize", "Normal form of a term under the induced global strategy");
  normalize->add_option("system", path, "System file")->required()->check(CLI::ExistingFile);
  normalize->add_option("term", term, "Element label or linear combination")->required();
  auto* newman = app.add_subcommand("newman", "Search an lc-structure and certify E/R against min(E)");
  newman->add_option("system", path, "System file")->required()->check(CLI::ExistingFile);
  newman->add_option("--depth-cap", depth_cap, "Bound on conversion length");
  auto* quotient = app.add_subcommand("quotient", "Quotient of the base by the rules");
  quotient->add_option("system", path, "System file")->required()->check(CLI::ExistingFile);
  auto* run = app.add_subcommand("suite", "Seeded random-instance suites");
  run->add_option("family", suite.family, "set, linear, quotient or all")->check(CLI::IsMember({"set", "linear", "quotient", "all"}));
  run->add_option("--seed", suite.seed, "Seed");
  run->add_option("--count", suite.count, "Instances per family");
  run->add_option("--max-elements", suite.max_elements, "Largest carrier")->check(CLI::Range(1, 64));
  run->add_option("--depth-cap", suite.depth_cap, "Bound on conversion length");
  run->add_option("--threads", suite.threads, "Worker threads")->check(CLI::Range(1, 256));
  for (auto* sub : {check, normalize, newman, quotient, run}) sub->add_flag("--json", json, "Machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? Pass : InputError;
  }

  Outcome out;
  if (*check) out = cmd_check(path, json);
  else if (*normalize) out = cmd_normalize(path, term, json);
  else if (*newman) out = cmd_newman(path, depth_cap, json);
  else if (*quotient) out = cmd_quotient(path, json);
  else {
    suite.json = json;
    out = cmd_suite(suite);
  }
  std::cout << out.text;
  return out.code;
}
