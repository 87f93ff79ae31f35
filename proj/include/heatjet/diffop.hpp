#pragma once

#include <map>
#include <string>

#include "heatjet/jet_poly.hpp"
#include "heatjet/multi_index.hpp"
#include "heatjet/zseries.hpp"

namespace heatjet {

/// Linear differential operator psi -> sum_alpha c_alpha(x) (d^alpha psi)(x)
/// on sections of the trivial bundle V x E, E of rank m. Coefficients are
/// endomorphism-valued jets known exactly up to the operator's coefficient
/// degree.
class DiffOp {
 public:
  DiffOp() = default;
  DiffOp(int n, int rank, int degree);

  static DiffOp identity(int n, int rank, int degree = kExactDegree);
  /// Multiplication by c (scalar jets act as c * id_E).
  static DiffOp multiplication(const JetPoly& c, int rank);

  int dim() const { return n_; }
  int rank() const { return rank_; }
  int degree() const { return degree_; }
  /// Highest |alpha| with a nonzero coefficient; 0 for the zero operator.
  int order() const;

  const std::map<MultiIndex, JetPoly>& terms() const { return terms_; }
  JetPoly coefficient(const MultiIndex& alpha) const;
  JetPoly zero_coefficient() const;

  /// Adds c * d^alpha; scalar c is lifted to c * id_E, and c is truncated to
  /// the operator's coefficient degree.
  void add_term(const MultiIndex& alpha, const JetPoly& c);

  DiffOp truncated(int degree) const;

  DiffOp& operator+=(const DiffOp& o);
  DiffOp& operator-=(const DiffOp& o);
  DiffOp& operator*=(const Rational& s);
  DiffOp operator-() const;
  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  friend DiffOp operator*(DiffOp a, const Rational& s) { return a *= s; }
  friend DiffOp operator*(const Rational& s, DiffOp a) { return a *= s; }

  friend bool operator==(const DiffOp& a, const DiffOp& b);
  /// Same shape and identical coefficients up to jet degree `degree`.
  bool agrees_with(const DiffOp& other, int degree) const;

  std::string str() const;

 private:
  void check_compatible(const DiffOp& o) const;

  int n_ = 0;
  int rank_ = 1;
  int degree_ = 0;
  std::map<MultiIndex, JetPoly> terms_;
};

/// Exact jet of D psi up to `out_degree`. psi may be vector- or
/// endomorphism-valued, or scalar when the rank is 1.
JetPoly apply(const DiffOp& op, const JetPoly& psi, int out_degree);

/// A o B with coefficients exact to `degree`; needs A exact to `degree` and
/// B exact to `degree + order(A)`.
DiffOp compose(const DiffOp& a, const DiffOp& b, int degree);

/// op^p with coefficients exact to `degree`, via left multiplication with
/// per-step degree bookkeeping; needs op exact to degree + order*(p-1).
DiffOp operator_power(const DiffOp& op, int p, int degree);

/// (ev op)^sharp = sum_alpha c_alpha(0) x^alpha, characterized by
/// [op psi](0) = <(ev op)^sharp, psi>.
JetPoly ev_sharp(const DiffOp& op);

/// Flat Laplacian -sum_mu d_mu^2 acting on E-valued sections.
DiffOp flat_laplacian(int n, int rank);
/// -sum_mu d_mu^2 psi for a jet of any role.
JetPoly flat_laplacian_of(const JetPoly& psi);
/// Number operator N = sum_mu x_mu d_mu.
DiffOp euler_operator(int n, int rank);

/// Series with entry r = sign^r op^r / r!, i.e. e^{sign z op}; sign is +-1.
ZSeries<DiffOp> op_exponential_series(const DiffOp& op, int sign, int order, int degree);

/// [op^p psi](0) by repeated application with shrinking output degree.
Matrix power_at_origin(const DiffOp& op, int p, const JetPoly& psi);

}  // namespace heatjet
