#include "heatjet/diffop.hpp"

#include <algorithm>

#include "heatjet/error.hpp"

namespace heatjet {

namespace {

// Rank-1 endomorphism jet viewed as a scalar jet.
JetPoly as_scalar(const JetPoly& c) {
  JetPoly r(c.dim(), Role::scalar, 1, c.degree());
  for (const auto& [a, v] : c.terms()) r.add_term(a, v(0, 0));
  return r;
}

}  // namespace

DiffOp::DiffOp(int n, int rank, int degree) : n_(n), rank_(rank), degree_(degree) {
  if (n < 1 || n > kMaxDimension) throw DimensionError("operator dimension out of range");
  if (rank < 1) throw DimensionError("fiber rank must be positive");
}

DiffOp DiffOp::identity(int n, int rank, int degree) {
  DiffOp op(n, rank, degree);
  op.add_term(MultiIndex(n),
              JetPoly::constant(n, Role::endomorphism, rank, degree, Matrix::identity(rank)));
  return op;
}

DiffOp DiffOp::multiplication(const JetPoly& c, int rank) {
  DiffOp op(c.dim(), rank, c.degree());
  op.add_term(MultiIndex(c.dim()), c);
  return op;
}

int DiffOp::order() const {
  return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
}

JetPoly DiffOp::zero_coefficient() const {
  return JetPoly(n_, Role::endomorphism, rank_, degree_);
}

JetPoly DiffOp::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? zero_coefficient() : it->second;
}

void DiffOp::add_term(const MultiIndex& alpha, const JetPoly& c) {
  if (alpha.dim() != n_ || c.dim() != n_) throw DimensionError("operator term dimension mismatch");
  JetPoly lifted = c.role() == Role::scalar ? c.as_endomorphism(rank_) : c;
  if (lifted.role() != Role::endomorphism || lifted.rank() != rank_)
    throw RoleError("operator coefficients must be endomorphisms of the fiber");
  if (lifted.degree() < degree_) {
    throw TruncationError("operator coefficient is truncated below the operator degree",
                          degree_, lifted.degree());
  }
  lifted = lifted.truncated(degree_);
  auto it = terms_.find(alpha);
  if (it == terms_.end()) {
    if (!lifted.is_zero()) terms_.emplace(alpha, std::move(lifted));
    return;
  }
  it->second += lifted;
  if (it->second.is_zero()) terms_.erase(it);
}

DiffOp DiffOp::truncated(int degree) const {
  DiffOp r(n_, rank_, std::min(degree, degree_));
  for (const auto& [a, c] : terms_) r.add_term(a, c.truncated(r.degree_));
  return r;
}

void DiffOp::check_compatible(const DiffOp& o) const {
  if (n_ != o.n_) throw DimensionError("operator dimension mismatch");
  if (rank_ != o.rank_) throw RoleError("operator fiber rank mismatch");
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
  check_compatible(o);
  if (o.degree_ < degree_) *this = truncated(o.degree_);
  for (const auto& [a, c] : o.terms_) add_term(a, c);
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o) { return *this += -o; }

DiffOp& DiffOp::operator*=(const Rational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [a, c] : terms_) c *= s;
  return *this;
}

DiffOp DiffOp::operator-() const {
  DiffOp r = *this;
  for (auto& [a, c] : r.terms_) c = -c;
  return r;
}

bool operator==(const DiffOp& a, const DiffOp& b) {
  return a.n_ == b.n_ && a.rank_ == b.rank_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
}

bool DiffOp::agrees_with(const DiffOp& other, int degree) const {
  if (n_ != other.n_ || rank_ != other.rank_) return false;
  const DiffOp x = truncated(degree);
  const DiffOp y = other.truncated(degree);
  if (x.terms_.size() != y.terms_.size()) return false;
  for (const auto& [a, c] : x.terms_) {
    auto it = y.terms_.find(a);
    if (it == y.terms_.end() || it->second.terms() != c.terms()) return false;
  }
  return true;
}

std::string DiffOp::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [a, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ")";
    if (a.degree() > 0) s += "*d" + a.str();
  }
  return s;
}

JetPoly apply(const DiffOp& op, const JetPoly& psi, int out_degree) {
  if (psi.dim() != op.dim()) throw DimensionError("section dimension does not match operator");
  const bool scalar_section = psi.role() == Role::scalar;
  if (scalar_section && op.rank() != 1)
    throw RoleError("scalar sections need a rank-1 operator");
  if (!scalar_section && psi.rank() != op.rank())
    throw RoleError("section rank does not match operator rank");
  const int ord = op.order();
  if (!psi.exact() && psi.degree() < out_degree + ord) {
    throw TruncationError("section jet too short for exact application", out_degree + ord,
                          psi.degree());
  }
  if (op.degree() < out_degree) {
    throw TruncationError("operator coefficients too short for exact application",
                          out_degree, op.degree());
  }
  JetPoly out(psi.dim(), psi.role(), psi.rank(), out_degree);
  for (const auto& [alpha, c] : op.terms()) {
    const JetPoly d = psi.derivative(alpha);
    if (d.is_zero()) continue;
    if (scalar_section) {
      accumulate_product(out, as_scalar(c), d, Rational(1));
    } else {
      accumulate_product(out, c, d, Rational(1));
    }
  }
  return out;
}

DiffOp compose(const DiffOp& a, const DiffOp& b, int degree) {
  if (a.dim() != b.dim()) throw DimensionError("operator dimension mismatch in composition");
  if (a.rank() != b.rank()) throw RoleError("operator rank mismatch in composition");
  if (a.degree() < degree)
    throw TruncationError("left factor coefficients too short for exact composition", degree,
                          a.degree());
  const int needed = degree + a.order();
  if (b.degree() < needed && b.degree() < kExactDegree / 2)
    throw TruncationError("right factor coefficients too short for exact composition", needed,
                          b.degree());

  std::map<MultiIndex, JetPoly> sums;
  std::map<std::pair<MultiIndex, MultiIndex>, JetPoly> derivative_cache;
  const JetPoly zero(a.dim(), Role::endomorphism, a.rank(), degree);
  for (const auto& [alpha, ca] : a.terms()) {
    for (const auto& gamma : divisors(alpha)) {
      const Rational weight = multi_binomial(alpha, gamma);
      const MultiIndex shift = alpha - gamma;
      for (const auto& [beta, cb] : b.terms()) {
        auto key = std::make_pair(gamma, beta);
        auto it = derivative_cache.find(key);
        if (it == derivative_cache.end())
          it = derivative_cache.emplace(key, cb.derivative(gamma)).first;
        if (it->second.is_zero()) continue;
        auto [acc, inserted] = sums.try_emplace(shift + beta, zero);
        accumulate_product(acc->second, ca, it->second, weight);
      }
    }
  }
  DiffOp out(a.dim(), a.rank(), degree);
  for (auto& [m, c] : sums)
    if (!c.is_zero()) out.add_term(m, c);
  return out;
}

DiffOp operator_power(const DiffOp& op, int p, int degree) {
  if (p < 0) throw PreconditionError("negative operator power");
  if (p == 0) return DiffOp::identity(op.dim(), op.rank());
  const int ord = op.order();
  // Exact coefficients with an exact request: no headroom to track.
  const bool exact = op.degree() >= kExactDegree / 2 && degree >= kExactDegree / 2;
  auto degree_after = [&](int q) { return exact ? kExactDegree : degree + ord * (p - q); };
  const int needed = degree_after(1);
  if (op.degree() < needed)
    throw TruncationError("operator coefficients too short for the requested power", needed,
                          op.degree());
  DiffOp power = op.truncated(needed);
  for (int q = 2; q <= p; ++q) power = compose(op, power, degree_after(q));
  return power.truncated(degree);
}

JetPoly ev_sharp(const DiffOp& op) {
  if (op.degree() < 0)
    throw TruncationError("operator value at the origin is unknown", 0, op.degree());
  JetPoly out(op.dim(), Role::endomorphism, op.rank(), kExactDegree);
  for (const auto& [alpha, c] : op.terms()) out.add_term(alpha, c.at_origin());
  return out;
}

DiffOp flat_laplacian(int n, int rank) {
  DiffOp op(n, rank, kExactDegree);
  const JetPoly minus_id =
      JetPoly::constant(n, Role::endomorphism, rank, kExactDegree, -Matrix::identity(rank));
  for (int mu = 0; mu < n; ++mu) op.add_term(MultiIndex::unit(n, mu, 2), minus_id);
  return op;
}

JetPoly flat_laplacian_of(const JetPoly& psi) {
  const int n = psi.dim();
  JetPoly out(n, psi.role(), psi.rank(), psi.exact() ? psi.degree() : psi.degree() - 2);
  for (int mu = 0; mu < n; ++mu) out -= psi.derivative(MultiIndex::unit(n, mu, 2));
  return out;
}

DiffOp euler_operator(int n, int rank) {
  DiffOp op(n, rank, kExactDegree);
  for (int mu = 0; mu < n; ++mu) {
    JetPoly x(n, Role::scalar, 1, kExactDegree);
    x.add_term(MultiIndex::unit(n, mu), Rational(1));
    op.add_term(MultiIndex::unit(n, mu), x);
  }
  return op;
}

ZSeries<DiffOp> op_exponential_series(const DiffOp& op, int sign, int order, int degree) {
  if (sign != 1 && sign != -1) throw PreconditionError("exponential series sign must be +-1");
  if (order < 0) throw PreconditionError("negative series order");
  const int ord = op.order();
  const int needed = degree + ord * std::max(order - 1, 0);
  if (op.degree() < needed)
    throw TruncationError("operator coefficients too short for the exponential series", needed,
                          op.degree());
  ZSeries<DiffOp> series;
  series.push_back(DiffOp::identity(op.dim(), op.rank()).truncated(degree));
  DiffOp power = DiffOp::identity(op.dim(), op.rank());
  for (int r = 1; r <= order; ++r) {
    // power = op^r, exact to degree + ord * (order - r)
    power = r == 1 ? op.truncated(degree + ord * (order - 1))
                   : compose(op, power, degree + ord * (order - r));
    Rational weight = pow(Rational(sign), r) / factorial(r);
    series.push_back(power.truncated(degree) * weight);
  }
  return series;
}

Matrix power_at_origin(const DiffOp& op, int p, const JetPoly& psi) {
  if (p < 0) throw PreconditionError("negative operator power");
  const int ord = op.order();
  if (!psi.exact() && psi.degree() < ord * p)
    throw TruncationError("section jet too short for the operator power", ord * p,
                          psi.degree());
  if (p > 0 && op.degree() < ord * (p - 1))
    throw TruncationError("operator coefficients too short for the operator power",
                          ord * (p - 1), op.degree());
  JetPoly current = psi.exact() ? psi : psi.truncated(ord * p);
  for (int i = 1; i <= p; ++i) current = apply(op, current, ord * (p - i));
  return current.at_origin();
}

}  // namespace heatjet
