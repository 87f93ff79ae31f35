#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "heatjet/cli/commands.hpp"

namespace hc = heatjet::cli;

namespace {

void add_target_flags(CLI::App* cmd, hc::Overrides& o, std::optional<int>& max_k,
                      std::optional<int>& max_degree) {
  cmd->add_option("--max-k", max_k, "Override the highest coefficient index K");
  cmd->add_option("--max-degree", max_degree, "Override the jet degree of each a_k");
  cmd->add_flag("--reinstate-4pi", o.reinstate_4pi, "Flag the (4 pi)^(-n/2) prefactor");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Taylor jets of heat kernel coefficients at a point"};
  app.require_subcommand(1);

  hc::Overrides overrides;
  std::optional<int> max_k;
  std::optional<int> max_degree;
  std::string spec_path;
  std::string out_path = "-";
  std::optional<std::string> result_path;
  std::string level;

  auto* compute = app.add_subcommand("compute", "Compute a_0..a_K and write a result document");
  compute->add_option("spec", spec_path, "Problem file (JSON)")->required();
  compute->add_option("-o,--output", out_path, "Output path, - for stdout");
  compute->add_option("--verify", level, "Verification level: none, fast, full");
  add_target_flags(compute, overrides, max_k, max_degree);

  auto* verify = app.add_subcommand("verify", "Run identity checks on a problem or result");
  verify->add_option("spec", spec_path, "Problem file (JSON)")->required();
  verify->add_option("--level", level, "Verification level: fast or full");
  verify->add_option("--result", result_path, "Check this result document instead of recomputing");
  add_target_flags(verify, overrides, max_k, max_degree);

  auto* selftest = app.add_subcommand("selftest", "Check flat-model identities");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : hc::kExitParse;
  }

  overrides.max_k = max_k;
  overrides.max_degree = max_degree;
  if (!level.empty()) {
    try {
      overrides.verify = hc::parse_level(level);
    } catch (const std::exception& e) {
      std::cerr << "heatjet: parse error: " << e.what() << "\n";
      return hc::kExitParse;
    }
  }

  if (compute->parsed()) return hc::run_compute(spec_path, out_path, overrides, std::cout, std::cerr);
  if (verify->parsed()) return hc::run_verify(spec_path, result_path, overrides, std::cout, std::cerr);
  if (selftest->parsed()) return hc::run_selftest_command(std::cout, std::cerr);
  return hc::kExitParse;
}
