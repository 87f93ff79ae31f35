#pragma once

#include <exception>
#include <iosfwd>
#include <optional>
#include <string>

#include "heatjet/cli/problem_spec.hpp"
#include "heatjet/cli/result_doc.hpp"

namespace heatjet::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitParse = 2,
  kExitValidation = 3,
  kExitTruncation = 4,
  kExitVerification = 5,
};

/// Command-line overrides applied on top of the problem file.
struct Overrides {
  std::optional<int> max_k;
  std::optional<int> max_degree;
  bool reinstate_4pi = false;
  std::optional<VerifyLevel> verify;
};

void apply_overrides(ProblemSpec& spec, const Overrides& o);

/// Heat and hat coefficients for `spec`, plus a verification report when
/// spec.verify is not none.
ResultDoc compute_result(const ProblemSpec& spec);

int exit_code_for(const std::exception& e);

int run_compute(const std::string& spec_path, const std::string& out_path, const Overrides& o,
                std::ostream& out, std::ostream& err);
int run_verify(const std::string& spec_path, const std::optional<std::string>& result_path,
               const Overrides& o, std::ostream& out, std::ostream& err);
int run_selftest_command(std::ostream& out, std::ostream& err);

}  // namespace heatjet::cli
