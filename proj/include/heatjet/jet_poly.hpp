#pragma once

#include <map>
#include <string>

#include "heatjet/matrix.hpp"
#include "heatjet/multi_index.hpp"
#include "heatjet/rational.hpp"

namespace heatjet {

/// Truncation degree of a polynomial that is known exactly (no truncation).
inline constexpr int kExactDegree = 1 << 20;

enum class Role { scalar, vector, endomorphism };

std::string role_name(Role role);

/// Truncated polynomial in n variables x_1..x_n with matrix coefficients.
///
/// A JetPoly represents the jet at the origin of a section (vector role), an
/// endomorphism field (endomorphism role) or a function (scalar role), known
/// exactly up to and including its truncation degree. Monomials of higher
/// degree are never stored; absent monomials are zero.
class JetPoly {
 public:
  JetPoly() = default;
  JetPoly(int n, Role role, int rank, int degree);

  static JetPoly constant(int n, Role role, int rank, int degree, const Matrix& value);
  static JetPoly monomial(int n, Role role, int rank, int degree,
                          const MultiIndex& alpha, const Matrix& value);
  static JetPoly scalar_monomial(const MultiIndex& alpha, const Rational& c = Rational(1),
                                 int degree = kExactDegree);
  /// id_E * f for a scalar-role f.
  static JetPoly identity_times(const JetPoly& scalar_poly, int rank);

  int dim() const { return n_; }
  Role role() const { return role_; }
  int rank() const { return rank_; }
  int degree() const { return degree_; }
  bool exact() const { return degree_ >= kExactDegree / 2; }
  int value_rows() const;
  int value_cols() const;
  Matrix zero_value() const { return Matrix(value_rows(), value_cols()); }

  const std::map<MultiIndex, Matrix>& terms() const { return terms_; }
  Matrix coefficient(const MultiIndex& alpha) const;
  Matrix at_origin() const;

  /// Adds value * x^alpha; silently dropped if |alpha| exceeds the truncation.
  void add_term(const MultiIndex& alpha, const Matrix& value);
  void add_term(const MultiIndex& alpha, const Rational& value);

  bool is_zero() const { return terms_.empty(); }
  /// Largest total degree actually present (-1 for the zero polynomial).
  int top_degree() const;
  /// Smallest total degree actually present (-1 for the zero polynomial).
  int low_degree() const;

  JetPoly truncated(int degree) const;
  JetPoly homogeneous_part(int s) const;
  /// Partial derivative d^gamma; the truncation degree drops by |gamma|.
  JetPoly derivative(const MultiIndex& gamma) const;
  /// Same polynomial with an explicitly chosen truncation degree.
  JetPoly with_degree(int degree) const;
  /// Scalar-role polynomial as id_E-valued endomorphism polynomial.
  JetPoly as_endomorphism(int rank) const;

  JetPoly& operator+=(const JetPoly& o);
  JetPoly& operator-=(const JetPoly& o);
  JetPoly& operator*=(const Rational& s);
  JetPoly operator-() const;
  friend JetPoly operator+(JetPoly a, const JetPoly& b) { return a += b; }
  friend JetPoly operator-(JetPoly a, const JetPoly& b) { return a -= b; }
  friend JetPoly operator*(JetPoly a, const Rational& s) { return a *= s; }
  friend JetPoly operator*(const Rational& s, JetPoly a) { return a *= s; }

  /// Exact equality including truncation degree.
  friend bool operator==(const JetPoly& a, const JetPoly& b);
  /// Same n, role and rank, and identical terms up to and including `degree`.
  bool agrees_with(const JetPoly& other, int degree) const;

  std::string str() const;

 private:
  void check_compatible(const JetPoly& o, const char* op) const;

  int n_ = 0;
  Role role_ = Role::scalar;
  int rank_ = 1;
  int degree_ = 0;
  std::map<MultiIndex, Matrix> terms_;
};

/// Role of p * q: scalar*any, any*scalar, endo*vector, endo*endo.
Role product_role(const JetPoly& p, const JetPoly& q);

/// Exact product truncated at min(degree, p.degree(), q.degree()).
JetPoly poly_mul(const JetPoly& p, const JetPoly& q, int degree);
inline JetPoly poly_mul(const JetPoly& p, const JetPoly& q) {
  return poly_mul(p, q, kExactDegree);
}

/// acc += scale * p * q, keeping acc's truncation degree.
void accumulate_product(JetPoly& acc, const JetPoly& p, const JetPoly& q,
                        const Rational& scale);

/// |x|^{2l} truncated at `degree` (zero if 2l > degree).
JetPoly radial_power(int n, int l, int degree = kExactDegree);

/// <p, q> = sum_alpha alpha! p_alpha q_alpha, the Sym V* scalar product with
/// coefficient values combined by the role product.
Matrix sym_inner(const JetPoly& p, const JetPoly& q);

/// 1/p as a jet to p's truncation degree; p must be scalar with p(0) != 0.
JetPoly reciprocal(const JetPoly& p);

}  // namespace heatjet
