#pragma once

#include <string>

#include "heatjet/jet_poly.hpp"
#include "json.hpp"

namespace heatjet::cli::detail {

using nlohmann::json;

/// Polynomial as [{"exponents": [...], "value": ...}] in graded order. The
/// value is a rational string for scalar and rank-1 data, otherwise a
/// row-major array of rational strings.
json poly_to_json(const JetPoly& p);

/// Inverse of poly_to_json. For endomorphism roles a single string means that
/// multiple of the identity. `where` names the field in error messages.
JetPoly poly_from_json(const json& j, int n, Role role, int rank, int degree,
                       const std::string& where);

/// Reads an integer field; throws ParseError if missing or mistyped.
int int_field(const json& obj, const char* key);

}  // namespace heatjet::cli::detail
