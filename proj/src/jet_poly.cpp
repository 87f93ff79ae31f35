#include "heatjet/jet_poly.hpp"

#include <algorithm>

#include "heatjet/error.hpp"

namespace heatjet {

std::string role_name(Role role) {
  switch (role) {
    case Role::scalar:
      return "scalar";
    case Role::vector:
      return "vector";
    case Role::endomorphism:
      return "endomorphism";
  }
  return "?";
}

JetPoly::JetPoly(int n, Role role, int rank, int degree)
    : n_(n), role_(role), rank_(role == Role::scalar ? 1 : rank), degree_(degree) {
  if (n < 1 || n > kMaxDimension) throw DimensionError("jet dimension out of range");
  if (rank < 1) throw DimensionError("fiber rank must be positive");
}

JetPoly JetPoly::constant(int n, Role role, int rank, int degree, const Matrix& value) {
  JetPoly p(n, role, rank, degree);
  p.add_term(MultiIndex(n), value);
  return p;
}

JetPoly JetPoly::monomial(int n, Role role, int rank, int degree, const MultiIndex& alpha,
                          const Matrix& value) {
  JetPoly p(n, role, rank, degree);
  p.add_term(alpha, value);
  return p;
}

JetPoly JetPoly::scalar_monomial(const MultiIndex& alpha, const Rational& c, int degree) {
  JetPoly p(alpha.dim(), Role::scalar, 1, degree);
  p.add_term(alpha, c);
  return p;
}

JetPoly JetPoly::identity_times(const JetPoly& scalar_poly, int rank) {
  return scalar_poly.as_endomorphism(rank);
}

int JetPoly::value_rows() const { return role_ == Role::scalar ? 1 : rank_; }
int JetPoly::value_cols() const { return role_ == Role::endomorphism ? rank_ : 1; }

Matrix JetPoly::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? zero_value() : it->second;
}

Matrix JetPoly::at_origin() const { return coefficient(MultiIndex(n_)); }

void JetPoly::add_term(const MultiIndex& alpha, const Matrix& value) {
  if (alpha.dim() != n_) throw DimensionError("monomial dimension does not match jet");
  if (value.rows() != value_rows() || value.cols() != value_cols())
    throw RoleError("coefficient shape does not match role " + role_name(role_));
  if (alpha.degree() > degree_ || value.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(alpha, value);
  if (!inserted) {
    it->second += value;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void JetPoly::add_term(const MultiIndex& alpha, const Rational& value) {
  if (role_ != Role::scalar) throw RoleError("rational term added to non-scalar jet");
  add_term(alpha, Matrix::scalar(value));
}

int JetPoly::top_degree() const {
  return terms_.empty() ? -1 : terms_.rbegin()->first.degree();
}

int JetPoly::low_degree() const {
  return terms_.empty() ? -1 : terms_.begin()->first.degree();
}

JetPoly JetPoly::truncated(int degree) const {
  JetPoly r(n_, role_, rank_, std::min(degree, degree_));
  for (const auto& [a, v] : terms_) {
    if (a.degree() > r.degree_) break;
    r.terms_.emplace_hint(r.terms_.end(), a, v);
  }
  return r;
}

JetPoly JetPoly::homogeneous_part(int s) const {
  JetPoly r(n_, role_, rank_, degree_);
  for (const auto& [a, v] : terms_)
    if (a.degree() == s) r.terms_.emplace_hint(r.terms_.end(), a, v);
  return r;
}

JetPoly JetPoly::derivative(const MultiIndex& gamma) const {
  const int order = gamma.degree();
  JetPoly r(n_, role_, rank_, exact() ? degree_ : degree_ - order);
  for (const auto& [a, v] : terms_) {
    if (!gamma.divides(a)) continue;
    Rational factor = a.factorial() / (a - gamma).factorial();
    r.add_term(a - gamma, v * factor);
  }
  return r;
}

JetPoly JetPoly::with_degree(int degree) const {
  JetPoly r = truncated(degree);
  r.degree_ = degree;
  return r;
}

JetPoly JetPoly::as_endomorphism(int rank) const {
  if (role_ == Role::endomorphism) {
    if (rank != rank_) throw RoleError("endomorphism rank mismatch");
    return *this;
  }
  if (role_ != Role::scalar) throw RoleError("only scalar jets lift to endomorphisms");
  JetPoly r(n_, Role::endomorphism, rank, degree_);
  for (const auto& [a, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), a, Matrix::identity(rank) * v(0, 0));
  return r;
}

void JetPoly::check_compatible(const JetPoly& o, const char* op) const {
  if (n_ != o.n_) throw DimensionError(std::string("dimension mismatch in ") + op);
  if (role_ != o.role_ || rank_ != o.rank_)
    throw RoleError(std::string("role mismatch in ") + op + ": " + role_name(role_) +
                    " vs " + role_name(o.role_));
}

JetPoly& JetPoly::operator+=(const JetPoly& o) {
  check_compatible(o, "sum");
  degree_ = std::min(degree_, o.degree_);
  for (auto it = terms_.begin(); it != terms_.end();) {
    it = it->first.degree() > degree_ ? terms_.erase(it) : std::next(it);
  }
  for (const auto& [a, v] : o.terms_) add_term(a, v);
  return *this;
}

JetPoly& JetPoly::operator-=(const JetPoly& o) { return *this += -o; }

JetPoly& JetPoly::operator*=(const Rational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [a, v] : terms_) v *= s;
  return *this;
}

JetPoly JetPoly::operator-() const {
  JetPoly r = *this;
  for (auto& [a, v] : r.terms_) v = -v;
  return r;
}

bool operator==(const JetPoly& a, const JetPoly& b) {
  return a.n_ == b.n_ && a.role_ == b.role_ && a.rank_ == b.rank_ &&
         a.degree_ == b.degree_ && a.terms_ == b.terms_;
}

bool JetPoly::agrees_with(const JetPoly& other, int degree) const {
  if (n_ != other.n_ || role_ != other.role_ || rank_ != other.rank_) return false;
  return truncated(degree).terms_ == other.truncated(degree).terms_;
}

std::string JetPoly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [a, v] : terms_) {
    if (!s.empty()) s += " + ";
    s += v.str();
    if (a.degree() > 0) {
      for (int i = 0; i < n_; ++i) {
        if (a[i] == 0) continue;
        s += "*x" + std::to_string(i + 1);
        if (a[i] > 1) s += "^" + std::to_string(a[i]);
      }
    }
  }
  return s;
}

Role product_role(const JetPoly& p, const JetPoly& q) {
  if (p.dim() != q.dim()) throw DimensionError("dimension mismatch in product");
  if (p.role() == Role::scalar) return q.role();
  if (q.role() == Role::scalar) return p.role();
  if (p.rank() != q.rank()) throw RoleError("fiber rank mismatch in product");
  if (p.role() == Role::endomorphism) return q.role();
  throw RoleError("undefined product " + role_name(p.role()) + " * " + role_name(q.role()));
}

void accumulate_product(JetPoly& acc, const JetPoly& p, const JetPoly& q,
                        const Rational& scale) {
  if (product_role(p, q) != acc.role() ||
      (acc.role() != Role::scalar && std::max(p.rank(), q.rank()) != acc.rank()))
    throw RoleError("accumulator role does not match product role");
  if (scale.is_zero()) return;
  const int limit = acc.degree();
  // Gather into a local map first so that cancelling sums are erased once.
  std::map<MultiIndex, Matrix> sums;
  const Matrix zero = acc.zero_value();
  for (const auto& [a, u] : p.terms()) {
    const int da = a.degree();
    if (da > limit) break;
    for (const auto& [b, v] : q.terms()) {
      if (da + b.degree() > limit) break;
      auto [it, inserted] = sums.try_emplace(a + b, zero);
      Matrix::add_product(it->second, u, v);
    }
  }
  for (auto& [m, v] : sums) {
    if (scale != Rational(1)) v *= scale;
    acc.add_term(m, v);
  }
}

JetPoly poly_mul(const JetPoly& p, const JetPoly& q, int degree) {
  const Role role = product_role(p, q);
  const int rank = std::max(p.rank(), q.rank());
  JetPoly out(p.dim(), role, rank, std::min({degree, p.degree(), q.degree()}));
  accumulate_product(out, p, q, Rational(1));
  return out;
}

JetPoly radial_power(int n, int l, int degree) {
  if (l < 0) throw PreconditionError("radial power with negative exponent");
  JetPoly square(n, Role::scalar, 1, degree);
  for (int i = 0; i < n; ++i) square.add_term(MultiIndex::unit(n, i, 2), Rational(1));
  JetPoly result = JetPoly::constant(n, Role::scalar, 1, degree, Matrix::scalar(1));
  for (int i = 0; i < l; ++i) result = poly_mul(result, square, degree);
  return result;
}

Matrix sym_inner(const JetPoly& p, const JetPoly& q) {
  if (p.dim() != q.dim()) throw DimensionError("dimension mismatch in scalar product");
  const Matrix pz = p.zero_value();
  const Matrix qz = q.zero_value();
  if (p.role() == Role::vector && q.role() != Role::scalar)
    throw RoleError("undefined pairing " + role_name(p.role()) + " x " + role_name(q.role()));
  if (p.role() != Role::scalar && q.role() != Role::scalar && p.rank() != q.rank())
    throw RoleError("fiber rank mismatch in scalar product");
  if (p.top_degree() > q.degree())
    throw TruncationError("scalar product needs the right factor to the left factor's degree",
                          p.top_degree(), q.degree());
  if (q.top_degree() > p.degree())
    throw TruncationError("scalar product needs the left factor to the right factor's degree",
                          q.top_degree(), p.degree());
  const auto [r, c] = Matrix::product_shape(pz, qz);
  Matrix out(r, c);
  for (const auto& [a, u] : p.terms()) {
    auto it = q.terms().find(a);
    if (it == q.terms().end()) continue;
    Matrix prod(r, c);
    Matrix::add_product(prod, u, it->second);
    out += prod * a.factorial();
  }
  return out;
}

JetPoly reciprocal(const JetPoly& p) {
  if (p.role() != Role::scalar) throw RoleError("reciprocal of a non-scalar jet");
  const Rational c0 = p.at_origin()(0, 0);
  if (c0.is_zero()) throw PreconditionError("reciprocal of a jet vanishing at the origin");
  // 1/(c0 (1 + u)) = (1/c0) sum_k (-u)^k with u(0) = 0, so the series stops at the degree.
  JetPoly u = p * (Rational(1) / c0);
  u.add_term(MultiIndex(p.dim()), Rational(-1));
  const JetPoly minus_u = -u;
  const int degree = p.degree();
  JetPoly term = JetPoly::constant(p.dim(), Role::scalar, 1, degree, Matrix::scalar(1));
  JetPoly sum = term;
  const int steps = p.exact() ? -1 : degree;
  if (steps < 0 && !u.is_zero()) {
    throw PreconditionError("reciprocal of a non-constant exact polynomial is not a polynomial");
  }
  for (int k = 1; k <= steps; ++k) {
    term = poly_mul(term, minus_u, degree);
    if (term.is_zero()) break;
    sum += term;
  }
  return sum * (Rational(1) / c0);
}

}  // namespace heatjet
