#include "heatjet/cli/commands.hpp"

#include <fstream>
#include <iostream>

#include "heatjet/cli/verification.hpp"
#include "heatjet/error.hpp"
#include "heatjet/heatcoeff.hpp"

namespace heatjet::cli {

void apply_overrides(ProblemSpec& spec, const Overrides& o) {
  if (o.max_k) {
    if (*o.max_k < 0) throw ParseError("--max-k must be >= 0");
    spec.max_k = *o.max_k;
  }
  if (o.max_degree) {
    if (*o.max_degree < 0) throw ParseError("--max-degree must be >= 0");
    spec.max_degree = *o.max_degree;
  }
  if (o.reinstate_4pi) spec.reinstate_4pi = true;
  if (o.verify) spec.verify = *o.verify;
}

ResultDoc compute_result(const ProblemSpec& spec) {
  const DiffOp op = build_operator(spec);
  ResultDoc doc;
  doc.dimension = spec.dimension;
  doc.rank = spec.rank;
  doc.max_k = spec.max_k;
  doc.max_degree = spec.max_degree;
  doc.reinstate_4pi = spec.reinstate_4pi;
  doc.bounds = degree_requirements(spec.max_k, spec.max_degree);
  doc.input_hash = spec.input_hash;
  doc.heat = heat_jets(op, spec.max_k, spec.max_degree);
  doc.hat = hat_coefficients(doc.heat, problem_metric(spec));
  if (spec.verify != VerifyLevel::none)
    doc.verification = run_verification(spec, op, doc.heat, spec.verify);
  return doc;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return kExitParse;
  if (dynamic_cast<const TruncationError*>(&e)) return kExitTruncation;
  if (dynamic_cast<const OrderBoundViolation*>(&e)) return kExitVerification;
  if (dynamic_cast<const Error*>(&e)) return kExitValidation;
  return kExitInternal;
}

namespace {

const char* error_label(int code) {
  switch (code) {
    case kExitParse: return "parse error";
    case kExitValidation: return "invalid input";
    case kExitTruncation: return "insufficient jet degree";
    case kExitVerification: return "verification failed";
    default: return "internal error";
  }
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    const int code = exit_code_for(e);
    err << "heatjet: " << error_label(code) << ": " << e.what() << "\n";
    return code;
  }
}

void print_report(const VerificationReport& report, std::ostream& out) {
  out << "verification (" << level_name(report.level) << "):\n";
  for (const auto& c : report.checks) {
    out << "  [" << (c.passed ? "PASS" : "FAIL") << "] " << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << "\n";
  }
}

int report_exit(const VerificationReport& report, std::ostream& err) {
  if (const CheckResult* f = report.first_failure()) {
    err << "heatjet: verification failed: " << f->name << ": " << f->detail << "\n";
    return kExitVerification;
  }
  return kExitOk;
}

void print_requirements(const ProblemSpec& spec, std::ostream& out) {
  out << "requirements: " << degree_requirements(spec.max_k, spec.max_degree).str() << "\n";
}

}  // namespace

int run_compute(const std::string& spec_path, const std::string& out_path, const Overrides& o,
                std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    // Diagnostics go to stderr when the document itself goes to stdout.
    std::ostream& log = out_path == "-" ? err : out;
    ProblemSpec spec = load_problem_spec(spec_path);
    apply_overrides(spec, o);
    print_requirements(spec, log);
    const ResultDoc doc = compute_result(spec);
    const std::string text = to_json(doc);
    if (out_path == "-") {
      out << text;
    } else {
      std::ofstream file(out_path, std::ios::binary);
      if (!file) throw Error("cannot write " + out_path);
      file << text;
      log << "wrote " << out_path << "\n";
    }
    if (!doc.verification) return static_cast<int>(kExitOk);
    print_report(*doc.verification, log);
    return report_exit(*doc.verification, err);
  });
}

int run_verify(const std::string& spec_path, const std::optional<std::string>& result_path,
               const Overrides& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ProblemSpec spec = load_problem_spec(spec_path);
    apply_overrides(spec, o);
    const VerifyLevel level = o.verify.value_or(VerifyLevel::fast);
    HeatJets reported;
    if (result_path) {
      const ResultDoc doc = load_result(*result_path);
      if (doc.dimension != spec.dimension || doc.rank != spec.rank)
        throw ValidationError("result dimension/rank does not match the problem file");
      if (!o.max_k) spec.max_k = doc.max_k;
      if (!o.max_degree) spec.max_degree = doc.max_degree;
      reported = doc.heat;
    }
    print_requirements(spec, out);
    const DiffOp op = build_operator(spec);
    if (!result_path) reported = heat_jets(op, spec.max_k, spec.max_degree);
    const VerificationReport report = run_verification(spec, op, reported, level);
    print_report(report, out);
    return report_exit(report, err);
  });
}

int run_selftest_command(std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const VerificationReport report = run_selftest();
    print_report(report, out);
    return report_exit(report, err);
  });
}

}  // namespace heatjet::cli
