#include "heatjet/multi_index.hpp"

#include <numeric>

#include "heatjet/error.hpp"

namespace heatjet {

MultiIndex::MultiIndex(int n) {
  if (n < 0 || n > kMaxDimension) {
    throw DimensionError("dimension " + std::to_string(n) + " outside 0.." +
                         std::to_string(kMaxDimension));
  }
  n_ = static_cast<std::uint8_t>(n);
}

MultiIndex::MultiIndex(std::initializer_list<int> exponents)
    : MultiIndex(std::vector<int>(exponents)) {}

MultiIndex::MultiIndex(const std::vector<int>& exponents)
    : MultiIndex(static_cast<int>(exponents.size())) {
  for (std::size_t i = 0; i < exponents.size(); ++i) set(static_cast<int>(i), exponents[i]);
}

MultiIndex MultiIndex::unit(int n, int i, int power) {
  MultiIndex m(n);
  m.set(i, power);
  return m;
}

void MultiIndex::set(int i, int value) {
  if (i < 0 || i >= n_) throw DimensionError("multi-index slot out of range");
  if (value < 0 || value > 255) throw PreconditionError("exponent out of range 0..255");
  e_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(value);
}

int MultiIndex::degree() const {
  int d = 0;
  for (int i = 0; i < n_; ++i) d += e_[static_cast<std::size_t>(i)];
  return d;
}

Rational MultiIndex::factorial() const {
  Rational f(1);
  for (int i = 0; i < n_; ++i) f *= heatjet::factorial((*this)[i]);
  return f;
}

bool MultiIndex::divides(const MultiIndex& other) const {
  for (int i = 0; i < n_; ++i)
    if ((*this)[i] > other[i]) return false;
  return true;
}

bool MultiIndex::all_even() const {
  for (int i = 0; i < n_; ++i)
    if ((*this)[i] % 2 != 0) return false;
  return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
  if (n_ != o.n_) throw DimensionError("multi-index dimension mismatch");
  MultiIndex r(n_);
  for (int i = 0; i < n_; ++i) r.set(i, (*this)[i] + o[i]);
  return r;
}

MultiIndex MultiIndex::operator-(const MultiIndex& o) const {
  if (n_ != o.n_) throw DimensionError("multi-index dimension mismatch");
  MultiIndex r(n_);
  for (int i = 0; i < n_; ++i) r.set(i, (*this)[i] - o[i]);
  return r;
}

std::vector<int> MultiIndex::exponents() const {
  std::vector<int> v(n_);
  for (int i = 0; i < n_; ++i) v[static_cast<std::size_t>(i)] = (*this)[i];
  return v;
}

std::string MultiIndex::str() const {
  std::string s = "(";
  for (int i = 0; i < n_; ++i) {
    if (i) s += ",";
    s += std::to_string((*this)[i]);
  }
  return s + ")";
}

bool operator<(const MultiIndex& a, const MultiIndex& b) {
  if (a.n_ != b.n_) return a.n_ < b.n_;
  const int da = a.degree();
  const int db = b.degree();
  if (da != db) return da < db;
  for (int i = 0; i < a.n_; ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

namespace {

void enumerate(int n, int slot, int remaining, MultiIndex& cur,
               std::vector<MultiIndex>& out) {
  if (slot == n - 1) {
    cur.set(slot, remaining);
    out.push_back(cur);
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    cur.set(slot, v);
    enumerate(n, slot + 1, remaining - v, cur, out);
  }
}

}  // namespace

std::vector<MultiIndex> multi_indices_of_degree(int n, int d) {
  std::vector<MultiIndex> out;
  if (d < 0) return out;
  MultiIndex cur(n);
  if (n == 0) {
    if (d == 0) out.push_back(cur);
    return out;
  }
  enumerate(n, 0, d, cur, out);
  return out;
}

std::vector<MultiIndex> multi_indices_up_to(int n, int d) {
  std::vector<MultiIndex> out;
  for (int k = 0; k <= d; ++k) {
    auto level = multi_indices_of_degree(n, k);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

Rational multi_binomial(const MultiIndex& alpha, const MultiIndex& gamma) {
  Rational r(1);
  for (int i = 0; i < alpha.dim(); ++i)
    r *= rational_binomial(Rational(alpha[i]), gamma[i]);
  return r;
}

std::vector<MultiIndex> divisors(const MultiIndex& alpha) {
  std::vector<MultiIndex> out;
  for (const auto& g : multi_indices_up_to(alpha.dim(), alpha.degree()))
    if (g.divides(alpha)) out.push_back(g);
  return out;
}

}  // namespace heatjet
