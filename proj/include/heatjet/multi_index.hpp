#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "heatjet/rational.hpp"

namespace heatjet {

inline constexpr int kMaxDimension = 6;

/// Exponent vector of a monomial x^alpha or a derivative d^alpha in n
/// variables. Ordered graded-lexicographically: lower total degree first,
/// then larger leading exponents first (x1^2 < x1 x2 < x2^2).
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(int n);
  MultiIndex(std::initializer_list<int> exponents);
  explicit MultiIndex(const std::vector<int>& exponents);

  static MultiIndex unit(int n, int i, int power = 1);

  int dim() const { return n_; }
  int operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }
  void set(int i, int value);

  int degree() const;
  /// alpha! = prod_i alpha_i!
  Rational factorial() const;

  /// Componentwise alpha <= beta.
  bool divides(const MultiIndex& other) const;
  bool all_even() const;

  MultiIndex operator+(const MultiIndex& o) const;
  /// Requires o.divides(*this).
  MultiIndex operator-(const MultiIndex& o) const;

  std::vector<int> exponents() const;
  std::string str() const;

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.n_ == b.n_ && a.e_ == b.e_;
  }
  friend bool operator<(const MultiIndex& a, const MultiIndex& b);

 private:
  std::array<std::uint8_t, kMaxDimension> e_{};
  std::uint8_t n_ = 0;
};

/// All multi-indices of total degree exactly d, in canonical order.
std::vector<MultiIndex> multi_indices_of_degree(int n, int d);
/// All multi-indices of total degree <= d, in canonical order.
std::vector<MultiIndex> multi_indices_up_to(int n, int d);

/// prod_i (alpha_i choose gamma_i); requires gamma <= alpha.
Rational multi_binomial(const MultiIndex& alpha, const MultiIndex& gamma);

/// Sub-multi-indices gamma <= alpha.
std::vector<MultiIndex> divisors(const MultiIndex& alpha);

}  // namespace heatjet
