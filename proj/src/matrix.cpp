#include "heatjet/matrix.hpp"

#include "heatjet/error.hpp"

namespace heatjet {

Matrix::Matrix(int rows, int cols)
    : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows * cols)) {
  if (rows < 0 || cols < 0) throw DimensionError("negative matrix shape");
}

Matrix::Matrix(int rows, int cols, std::vector<Rational> row_major)
    : rows_(rows), cols_(cols), a_(std::move(row_major)) {
  if (a_.size() != static_cast<std::size_t>(rows * cols))
    throw DimensionError("matrix entry count does not match shape");
}

Matrix Matrix::identity(int m) {
  Matrix r(m, m);
  for (int i = 0; i < m; ++i) r(i, i) = Rational(1);
  return r;
}

bool Matrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw RoleError("matrix shape mismatch in sum");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw RoleError("matrix shape mismatch in difference");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

Matrix& Matrix::operator*=(const Rational& s) {
  for (auto& x : a_) x *= s;
  return *this;
}

Matrix Matrix::operator-() const {
  Matrix r = *this;
  for (auto& x : r.a_) x = -x;
  return r;
}

std::pair<int, int> Matrix::product_shape(const Matrix& a, const Matrix& b) {
  if (a.rows_ == 1 && a.cols_ == 1) return {b.rows_, b.cols_};
  if (b.rows_ == 1 && b.cols_ == 1) return {a.rows_, a.cols_};
  if (a.cols_ != b.rows_) throw RoleError("matrix shapes do not compose");
  return {a.rows_, b.cols_};
}

void Matrix::add_product(Matrix& acc, const Matrix& a, const Matrix& b) {
  if (a.rows_ == 1 && a.cols_ == 1) {
    const Rational& s = a.a_[0];
    if (s.is_zero()) return;
    for (std::size_t i = 0; i < b.a_.size(); ++i)
      if (!b.a_[i].is_zero()) Rational::fma(acc.a_[i], s, b.a_[i]);
    return;
  }
  if (b.rows_ == 1 && b.cols_ == 1) {
    const Rational& s = b.a_[0];
    if (s.is_zero()) return;
    for (std::size_t i = 0; i < a.a_.size(); ++i)
      if (!a.a_[i].is_zero()) Rational::fma(acc.a_[i], a.a_[i], s);
    return;
  }
  for (int i = 0; i < a.rows_; ++i) {
    for (int k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j) {
        const Rational& bkj = b(k, j);
        if (!bkj.is_zero()) Rational::fma(acc(i, j), aik, bkj);
      }
    }
  }
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  const auto [r, c] = Matrix::product_shape(a, b);
  Matrix out(r, c);
  Matrix::add_product(out, a, b);
  return out;
}

std::string Matrix::str() const {
  if (rows_ == 1 && cols_ == 1) return a_[0].str();
  std::string s = "[";
  for (int i = 0; i < rows_; ++i) {
    if (i) s += "; ";
    for (int j = 0; j < cols_; ++j) {
      if (j) s += ", ";
      s += (*this)(i, j).str();
    }
  }
  return s + "]";
}

}  // namespace heatjet
