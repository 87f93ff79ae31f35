#pragma once

#include <optional>
#include <string>
#include <vector>

#include "heatjet/cli/problem_spec.hpp"
#include "heatjet/heat_jets.hpp"

namespace heatjet::cli {

inline constexpr const char* kVersion = "1.0.0";

struct CheckResult {
  std::string name;
  bool passed = false;
  /// Counterexample or summary; empty when there is nothing to say.
  std::string detail;

  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

struct VerificationReport {
  VerifyLevel level = VerifyLevel::none;
  std::vector<CheckResult> checks;

  bool passed() const;
  const CheckResult* first_failure() const;
  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

/// Everything `compute` writes. Coefficients are exact rationals; the
/// (4 pi)^{-n/2} factor is never multiplied in, only flagged.
struct ResultDoc {
  std::string version = kVersion;
  int dimension = 0;
  int rank = 1;
  int max_k = 0;
  int max_degree = 0;
  bool reinstate_4pi = false;
  DegreeRequirements bounds;
  std::string input_hash;
  HeatJets heat;
  std::optional<HeatJets> hat;
  std::optional<VerificationReport> verification;

  /// "(4*pi)^(-n/2)" when reinstated, otherwise "1".
  std::string prefactor() const;
  friend bool operator==(const ResultDoc&, const ResultDoc&) = default;
};

/// Deterministic JSON text (sorted keys, two-space indent, trailing newline).
std::string to_json(const ResultDoc& doc);
/// Throws ParseError on malformed documents.
ResultDoc result_from_json(const std::string& text);
ResultDoc load_result(const std::string& path);

}  // namespace heatjet::cli
