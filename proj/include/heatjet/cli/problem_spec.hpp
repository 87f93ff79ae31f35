#pragma once

#include <string>
#include <vector>

#include "heatjet/diffop.hpp"
#include "heatjet/jet_poly.hpp"
#include "heatjet/laplacian.hpp"

namespace heatjet::cli {

enum class VerifyLevel { none, fast, full };

std::string level_name(VerifyLevel level);
/// "none", "fast" or "full"; throws ParseError otherwise.
VerifyLevel parse_level(const std::string& text);

/// Degrees every stage needs so that a_0..a_K come out exact to Dmax.
struct DegreeRequirements {
  int difference_order = 0;    // R = 2K + Dmax
  int operator_degree = 0;     // coefficient jets of L: 2(R - 1)
  int metric_degree = 0;       // g: operator degree + 1
  int first_order_degree = 0;  // b^i
  int potential_degree = 0;    // F

  std::string str() const;
  friend bool operator==(const DegreeRequirements&, const DegreeRequirements&) = default;
};

DegreeRequirements degree_requirements(int max_k, int max_degree);

/// A problem file after parsing. Input jets are polynomials in normal
/// coordinates known exactly up to `jet_degree` (kExactDegree for exact
/// polynomial data).
struct ProblemSpec {
  int dimension = 0;
  int rank = 1;
  int max_k = 0;
  int max_degree = 0;
  int jet_degree = kExactDegree;
  /// Row-major n*n scalar polynomials; empty means the flat metric.
  std::vector<JetPoly> metric;
  /// n endomorphism polynomials; empty means no first-order term.
  std::vector<JetPoly> first_order;
  /// Endomorphism polynomial; dim() == 0 means no potential.
  JetPoly potential;
  bool reinstate_4pi = false;
  VerifyLevel verify = VerifyLevel::none;
  /// FNV-1a 64 of the raw input text, as "fnv1a64:<hex>".
  std::string input_hash;
};

/// Throws ParseError for malformed text or fields.
ProblemSpec parse_problem_spec(const std::string& text);
ProblemSpec load_problem_spec(const std::string& path);

std::string fnv1a64(const std::string& bytes);

/// Throws TruncationError naming the required input degree when jet_degree is
/// too small for the targets.
void check_degree_sufficiency(const ProblemSpec& spec);

/// Metric truncated to the degree the targets need; validates normal gauge
/// (ValidationError listing the offending monomials).
MetricJets problem_metric(const ProblemSpec& spec);

/// The generalized Laplacian with coefficients exact to the required
/// operator degree.
DiffOp build_operator(const ProblemSpec& spec);

}  // namespace heatjet::cli
