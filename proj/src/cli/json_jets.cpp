#include "json_jets.hpp"

#include "heatjet/error.hpp"

namespace heatjet::cli::detail {

namespace {

Rational rational_from(const json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where + ": rational values must be strings like \"-3/2\"");
  try {
    return Rational::parse(v.get<std::string>());
  } catch (const Error& e) {
    throw ParseError(where + ": " + e.what());
  }
}

}  // namespace

json poly_to_json(const JetPoly& p) {
  json terms = json::array();
  for (const auto& [alpha, v] : p.terms()) {
    json entry;
    entry["exponents"] = alpha.exponents();
    if (v.rows() * v.cols() == 1) {
      entry["value"] = v(0, 0).str();
    } else {
      json values = json::array();
      for (int i = 0; i < v.rows(); ++i)
        for (int j = 0; j < v.cols(); ++j) values.push_back(v(i, j).str());
      entry["value"] = std::move(values);
    }
    terms.push_back(std::move(entry));
  }
  return terms;
}

JetPoly poly_from_json(const json& j, int n, Role role, int rank, int degree,
                       const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected a list of terms");
  JetPoly p(n, role, rank, degree);
  for (std::size_t t = 0; t < j.size(); ++t) {
    const json& term = j[t];
    const std::string at = where + "[" + std::to_string(t) + "]";
    if (!term.is_object() || !term.contains("exponents") || !term.contains("value"))
      throw ParseError(at + ": terms need \"exponents\" and \"value\"");
    const json& ex = term["exponents"];
    if (!ex.is_array() || static_cast<int>(ex.size()) != n)
      throw ParseError(at + ": exponents must list " + std::to_string(n) + " integers");
    std::vector<int> exps;
    for (const auto& e : ex) {
      if (!e.is_number_integer() || e.get<int>() < 0 || e.get<int>() > 64)
        throw ParseError(at + ": exponents must be integers in 0..64");
      exps.push_back(e.get<int>());
    }
    const MultiIndex alpha(exps);
    if (alpha.degree() > degree)
      throw ParseError(at + ": monomial " + alpha.str() + " exceeds the declared jet degree " +
                       std::to_string(degree));
    Matrix value = p.zero_value();
    const json& v = term["value"];
    if (v.is_string()) {
      const Rational c = rational_from(v, at);
      if (role == Role::endomorphism) {
        value = Matrix::identity(rank) * c;
      } else if (value.rows() * value.cols() == 1) {
        value(0, 0) = c;
      } else {
        throw ParseError(at + ": expected " + std::to_string(value.rows() * value.cols()) +
                         " values");
      }
    } else if (v.is_array() && static_cast<int>(v.size()) == value.rows() * value.cols()) {
      for (int i = 0; i < value.rows(); ++i)
        for (int c = 0; c < value.cols(); ++c)
          value(i, c) = rational_from(v[static_cast<std::size_t>(i * value.cols() + c)], at);
    } else {
      throw ParseError(at + ": expected a rational string or " +
                       std::to_string(value.rows() * value.cols()) + " row-major values");
    }
    p.add_term(alpha, value);
  }
  return p;
}

int int_field(const json& obj, const char* key) {
  if (!obj.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  const json& v = obj[key];
  if (!v.is_number_integer()) throw ParseError(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

}  // namespace heatjet::cli::detail
