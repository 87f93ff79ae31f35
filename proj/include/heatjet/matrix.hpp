#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "heatjet/rational.hpp"

namespace heatjet {

/// Small dense matrix of rationals. Serves as the value type of every jet
/// coefficient: 1x1 for scalars, m x 1 for fiber vectors, m x m for
/// endomorphisms of the fiber.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols);
  Matrix(int rows, int cols, std::vector<Rational> row_major);

  static Matrix identity(int m);
  static Matrix scalar(const Rational& v) { return Matrix(1, 1, {v}); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Rational& operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i * cols_ + j)];
  }
  Rational& operator()(int i, int j) {
    return a_[static_cast<std::size_t>(i * cols_ + j)];
  }
  const std::vector<Rational>& entries() const { return a_; }

  bool is_zero() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(const Rational& s);
  Matrix operator-() const;
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Rational& s) { return a *= s; }
  friend Matrix operator*(const Rational& s, Matrix a) { return a *= s; }
  /// Matrix product; a 1x1 operand acts as a scalar factor.
  friend Matrix operator*(const Matrix& a, const Matrix& b);

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  /// Shape of a * b under the 1x1-is-scalar rule; throws RoleError if the
  /// product is undefined.
  static std::pair<int, int> product_shape(const Matrix& a, const Matrix& b);
  /// acc += a * b, with acc already of product shape.
  static void add_product(Matrix& acc, const Matrix& a, const Matrix& b);

  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    return os << m.str();
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> a_;
};

}  // namespace heatjet
