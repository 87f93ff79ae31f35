#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "heatjet/jet_poly.hpp"

namespace heatjet {

/// Jets at the origin of the heat kernel coefficients a_0..a_K (target point
/// y = 0, values in End E). Each a_k carries its own truncation degree; the
/// common guaranteed degree is degree().
struct HeatJets {
  std::vector<JetPoly> a;

  int max_k() const { return static_cast<int>(a.size()) - 1; }
  const JetPoly& operator[](int k) const { return a.at(static_cast<std::size_t>(k)); }
  int degree() const {
    int d = kExactDegree;
    for (const auto& ak : a) d = std::min(d, ak.degree());
    return d;
  }

  friend bool operator==(const HeatJets&, const HeatJets&) = default;
};

}  // namespace heatjet
