#include "heatjet/cli/result_doc.hpp"

#include <fstream>
#include <sstream>

#include "heatjet/error.hpp"
#include "json_jets.hpp"

namespace heatjet::cli {

using detail::int_field;
using detail::json;

bool VerificationReport::passed() const { return first_failure() == nullptr; }

const CheckResult* VerificationReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.passed) return &c;
  return nullptr;
}

std::string ResultDoc::prefactor() const {
  if (!reinstate_4pi) return "1";
  return "(4*pi)^(-" + std::to_string(dimension) + "/2)";
}

namespace {

json jets_to_json(const HeatJets& h) {
  json out = json::array();
  for (int k = 0; k <= h.max_k(); ++k) {
    json entry;
    entry["k"] = k;
    entry["degree"] = h[k].degree();
    entry["terms"] = detail::poly_to_json(h[k]);
    out.push_back(std::move(entry));
  }
  return out;
}

HeatJets jets_from_json(const json& j, int n, int rank, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + " must be an array");
  HeatJets h;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const json& entry = j[k];
    const std::string at = where + "[" + std::to_string(k) + "]";
    if (!entry.is_object()) throw ParseError(at + " must be an object");
    if (int_field(entry, "k") != static_cast<int>(k)) throw ParseError(at + ": k out of sequence");
    const int degree = int_field(entry, "degree");
    if (degree < 0) throw ParseError(at + ": negative degree");
    if (!entry.contains("terms")) throw ParseError(at + ": missing terms");
    h.a.push_back(
        detail::poly_from_json(entry["terms"], n, Role::endomorphism, rank, degree, at + ".terms"));
  }
  return h;
}

const json& field(const json& obj, const char* key) {
  if (!obj.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return obj[key];
}

std::string string_field(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_string()) throw ParseError(std::string("field \"") + key + "\" must be a string");
  return v.get<std::string>();
}

bool bool_field(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_boolean()) throw ParseError(std::string("field \"") + key + "\" must be a boolean");
  return v.get<bool>();
}

}  // namespace

std::string to_json(const ResultDoc& doc) {
  json j;
  j["format"] = "heatjet-result";
  j["version"] = doc.version;
  j["dimension"] = doc.dimension;
  j["rank"] = doc.rank;
  j["max_k"] = doc.max_k;
  j["max_degree"] = doc.max_degree;
  j["input_hash"] = doc.input_hash;
  j["basepoint"] = "origin";
  j["normalization"] = {{"reinstate_4pi", doc.reinstate_4pi}, {"prefactor", doc.prefactor()}};
  j["bounds"] = {{"difference_order", doc.bounds.difference_order},
                 {"operator_degree", doc.bounds.operator_degree},
                 {"metric_degree", doc.bounds.metric_degree},
                 {"first_order_degree", doc.bounds.first_order_degree},
                 {"potential_degree", doc.bounds.potential_degree}};
  j["heat_coefficients"] = jets_to_json(doc.heat);
  if (doc.hat) j["hat_coefficients"] = jets_to_json(*doc.hat);
  if (doc.verification) {
    json checks = json::array();
    for (const auto& c : doc.verification->checks)
      checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    j["verification"] = {{"level", level_name(doc.verification->level)},
                         {"passed", doc.verification->passed()},
                         {"checks", std::move(checks)}};
  }
  return j.dump(2) + "\n";
}

ResultDoc result_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("format") || j["format"] != "heatjet-result")
    throw ParseError("not a heatjet-result document");
  ResultDoc doc;
  doc.version = string_field(j, "version");
  doc.dimension = int_field(j, "dimension");
  doc.rank = int_field(j, "rank");
  if (doc.dimension < 1 || doc.dimension > kMaxDimension || doc.rank < 1)
    throw ParseError("dimension or rank out of range");
  doc.max_k = int_field(j, "max_k");
  doc.max_degree = int_field(j, "max_degree");
  doc.input_hash = string_field(j, "input_hash");
  const json& norm = field(j, "normalization");
  doc.reinstate_4pi = bool_field(norm, "reinstate_4pi");
  if (string_field(norm, "prefactor") != doc.prefactor())
    throw ParseError("normalization prefactor does not match reinstate_4pi");
  const json& b = field(j, "bounds");
  doc.bounds.difference_order = int_field(b, "difference_order");
  doc.bounds.operator_degree = int_field(b, "operator_degree");
  doc.bounds.metric_degree = int_field(b, "metric_degree");
  doc.bounds.first_order_degree = int_field(b, "first_order_degree");
  doc.bounds.potential_degree = int_field(b, "potential_degree");
  doc.heat = jets_from_json(field(j, "heat_coefficients"), doc.dimension, doc.rank,
                            "heat_coefficients");
  if (doc.heat.max_k() != doc.max_k) throw ParseError("heat_coefficients length does not match max_k");
  if (j.contains("hat_coefficients"))
    doc.hat = jets_from_json(j["hat_coefficients"], doc.dimension, doc.rank, "hat_coefficients");
  if (j.contains("verification")) {
    const json& v = j["verification"];
    VerificationReport report;
    report.level = parse_level(string_field(v, "level"));
    const json& checks = field(v, "checks");
    if (!checks.is_array()) throw ParseError("verification.checks must be an array");
    for (const auto& c : checks)
      report.checks.push_back({string_field(c, "name"), bool_field(c, "passed"),
                               string_field(c, "detail")});
    doc.verification = std::move(report);
  }
  return doc;
}

ResultDoc load_result(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return result_from_json(buf.str());
}

}  // namespace heatjet::cli
