#pragma once

#include "heatjet/cli/problem_spec.hpp"
#include "heatjet/cli/result_doc.hpp"
#include "heatjet/diffop.hpp"
#include "heatjet/heat_jets.hpp"

namespace heatjet::cli {

/// Runs the suites of `level` against `reported` (computed by us or loaded
/// from a result file). `op` must be exact to the problem's required operator degree.
///
/// fast: normal gauge, order bound, a_0(0) = id, agreement with a fresh
///       computation, intertwining for mu <= K on monomial sections, degree-0
///       parts against the inversion formula, link identity to z^K.
/// full: adds the powers path, r-stability of the inversion formula, excess
///       vanishing on harmonic sections and single-coefficient corruption.
VerificationReport run_verification(const ProblemSpec& spec, const DiffOp& op,
                                    const HeatJets& reported, VerifyLevel level);

/// Flat-model identities that need no input: classical formula, binomial
/// inversion, Green's identity, lemma mi, and the sl2 commutator.
VerificationReport run_selftest();

}  // namespace heatjet::cli
