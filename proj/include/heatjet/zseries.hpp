#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "heatjet/error.hpp"

namespace heatjet {

/// Formal power series sum_{r=0}^{R} z^r c_r truncated at order R.
template <typename T>
class ZSeries {
 public:
  ZSeries() = default;
  explicit ZSeries(std::vector<T> coefficients) : c_(std::move(coefficients)) {}

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const T& operator[](int r) const { return c_.at(static_cast<std::size_t>(r)); }
  T& operator[](int r) { return c_.at(static_cast<std::size_t>(r)); }
  void push_back(T value) { c_.push_back(std::move(value)); }

  auto begin() const { return c_.begin(); }
  auto end() const { return c_.end(); }
  const std::vector<T>& coefficients() const { return c_; }

 private:
  std::vector<T> c_;
};

}  // namespace heatjet
