#include "heatjet/heatcoeff.hpp"

#include <algorithm>

#include "heatjet/error.hpp"

namespace heatjet {

namespace {

void require_second_order(const DiffOp& laplacian) {
  if (laplacian.order() > 2)
    throw PreconditionError("expected a second-order operator, got order " +
                            std::to_string(laplacian.order()));
}

// Delta^t psi with the flat Laplacian, any role.
JetPoly flat_laplacian_power(JetPoly psi, int t) {
  for (int i = 0; i < t; ++i) psi = flat_laplacian_of(psi);
  return psi;
}

// psi * |x|^{2l} * scale, exact to psi's degree + 2l.
JetPoly times_radial_power(const JetPoly& psi, int l, const Rational& scale) {
  const int degree = psi.exact() ? kExactDegree : psi.degree() + 2 * l;
  JetPoly out(psi.dim(), psi.role(), psi.rank(), degree);
  accumulate_product(out, radial_power(psi.dim(), l), psi, scale);
  return out;
}

Rational minus_one_power(int e) { return Rational(e % 2 == 0 ? 1 : -1); }

}  // namespace

EvSharpTable::EvSharpTable(int n, int rank, int order) : n_(n), rank_(rank), order_(order) {
  for (int r = 0; r <= order; ++r) {
    pieces_.emplace_back();
    for (int s = 0; s <= r; ++s)
      pieces_.back().emplace_back(n, Role::endomorphism, rank, kExactDegree);
  }
}

JetPoly EvSharpTable::piece(int r, int s) const {
  if (r < 0 || r > order_ || s < 0) throw PreconditionError("table index out of range");
  if (s > r) return JetPoly(n_, Role::endomorphism, rank_, kExactDegree);
  return pieces_[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)];
}

void EvSharpTable::set_piece(int r, int s, JetPoly p) {
  if (r < 0 || r > order_ || s < 0 || s > r) throw PreconditionError("table index out of range");
  pieces_[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)] = std::move(p);
}

int required_operator_degree(int order, int degree) {
  return degree + 2 * std::max(order - 1, 0);
}

DifferenceOp difference_operator(const DiffOp& laplacian, int order, int degree) {
  if (order < 0) throw PreconditionError("negative difference-operator order");
  require_second_order(laplacian);
  const int needed = required_operator_degree(order, degree);
  if (laplacian.degree() < needed)
    throw TruncationError("operator jets too short for the difference operator", needed,
                          laplacian.degree());
  const int n = laplacian.dim();
  const int m = laplacian.rank();
  const DiffOp delta = flat_laplacian(n, m);

  DifferenceOp d;
  d.degree = degree;
  d.terms.push_back(DiffOp::identity(n, m).truncated(degree + 2 * order));
  for (int r = 1; r <= order; ++r) {
    const int target = degree + 2 * (order - r);
    const DiffOp& prev = d.terms[r - 1];
    DiffOp next = compose(prev, delta, target) - compose(laplacian, prev, target);
    d.terms.push_back(next * (Rational(1) / Rational(r)));
  }
  return d;
}

std::string OrderBoundWitness::str() const {
  return "D_" + std::to_string(r) + " has a degree-" + std::to_string(s) + " term at " +
         monomial.str() + " with value " + value.str();
}

std::optional<OrderBoundWitness> find_order_bound_violation(const DifferenceOp& d) {
  for (int r = 0; r <= d.order(); ++r) {
    const JetPoly value = ev_sharp(d[r]);
    for (const auto& [alpha, v] : value.terms())
      if (alpha.degree() > r) return OrderBoundWitness{r, alpha.degree(), alpha, v};
  }
  return std::nullopt;
}

EvSharpTable ev_sharp_table(const DifferenceOp& d) {
  if (auto w = find_order_bound_violation(d)) throw OrderBoundViolation(w->r, w->s, w->str());
  const DiffOp& d0 = d[0];
  EvSharpTable table(d0.dim(), d0.rank(), d.order());
  for (int r = 0; r <= d.order(); ++r) {
    const JetPoly value = ev_sharp(d[r]);
    for (int s = 0; s <= r; ++s) table.set_piece(r, s, value.homogeneous_part(s));
  }
  return table;
}

std::vector<JetPoly> power_values(const DiffOp& laplacian, int order) {
  if (order < 0) throw PreconditionError("negative power order");
  require_second_order(laplacian);
  const int needed = required_operator_degree(order);
  if (laplacian.degree() < needed)
    throw TruncationError("operator jets too short for values of its powers", needed,
                          laplacian.degree());
  const int n = laplacian.dim();
  const int m = laplacian.rank();
  std::vector<JetPoly> values;
  values.push_back(JetPoly::constant(n, Role::endomorphism, m, kExactDegree, Matrix::identity(m)));
  for (int p = 1; p <= order; ++p) {
    const JetPoly& previous = values.back();
    JetPoly current(n, Role::endomorphism, m, kExactDegree);
    for (const auto& beta : multi_indices_up_to(n, 2 * p)) {
      const JetPoly monomial =
          JetPoly::monomial(n, Role::endomorphism, m, kExactDegree, beta, Matrix::identity(m));
      const JetPoly image = apply(laplacian, monomial, 2 * (p - 1));
      const Matrix value = sym_inner(previous, image);
      if (!value.is_zero()) current.add_term(beta, value * (Rational(1) / beta.factorial()));
    }
    values.push_back(std::move(current));
  }
  return values;
}

EvSharpTable ev_sharp_from_powers(const DiffOp& laplacian, int order) {
  const std::vector<JetPoly> values = power_values(laplacian, order);
  const int n = laplacian.dim();
  const int m = laplacian.rank();
  EvSharpTable table(n, m, order);
  for (int r = 0; r <= order; ++r) {
    JetPoly total(n, Role::endomorphism, m, kExactDegree);
    for (int mu = 0; mu <= r; ++mu) {
      const Rational weight =
          minus_one_power(r) / (factorial(mu) * factorial(r - mu));
      total += times_radial_power(values[static_cast<std::size_t>(r - mu)], mu, weight);
    }
    for (const auto& [alpha, v] : total.terms()) {
      if (alpha.degree() > r) {
        OrderBoundWitness w{r, alpha.degree(), alpha, v};
        throw OrderBoundViolation(w.r, w.s, w.str());
      }
    }
    for (int s = 0; s <= r; ++s) table.set_piece(r, s, total.homogeneous_part(s));
  }
  return table;
}

int difference_order_for(const std::vector<int>& degrees) {
  int order = 0;
  for (std::size_t k = 0; k < degrees.size(); ++k) {
    if (degrees[k] < 0) throw PreconditionError("negative target degree");
    order = std::max(order, 2 * static_cast<int>(k) + degrees[k]);
  }
  return order;
}

HeatJets heat_jets_from_table(const EvSharpTable& table, const std::vector<int>& degrees) {
  const int order = difference_order_for(degrees);
  if (table.order() < order)
    throw TruncationError("difference operator order too low for the requested jets", order,
                          table.order());
  const int n = table.dim();
  const int m = table.rank();
  const int max_k = static_cast<int>(degrees.size()) - 1;
  // (2z)^{-N}: the degree-s piece at z^r goes to z^{r-s} scaled by 2^{-s}.
  std::vector<JetPoly> preimage;
  for (int p = 0; p <= max_k; ++p) {
    JetPoly b(n, Role::endomorphism, m, kExactDegree);
    for (int s = 0; p + s <= table.order(); ++s)
      b += table.piece(p + s, s) * (Rational(1) / pow(Rational(2), s));
    preimage.push_back(std::move(b));
  }
  // e^{z Delta}: a_k = sum_t Delta^t b_{k-t} / t!.
  HeatJets out;
  for (int k = 0; k <= max_k; ++k) {
    const int degree = degrees[static_cast<std::size_t>(k)];
    JetPoly ak(n, Role::endomorphism, m, degree);
    for (int t = 0; t <= k; ++t) {
      const JetPoly& b = preimage[static_cast<std::size_t>(k - t)];
      ak += flat_laplacian_power(b.truncated(degree + 2 * t), t) * (Rational(1) / factorial(t));
    }
    out.a.push_back(ak.with_degree(degree));
  }
  return out;
}

HeatJets heat_jets_profile(const DiffOp& laplacian, const std::vector<int>& degrees,
                           DifferencePath path) {
  if (degrees.empty()) throw PreconditionError("no heat coefficients requested");
  const int order = difference_order_for(degrees);
  const EvSharpTable table = path == DifferencePath::recursion
                                 ? ev_sharp_table(difference_operator(laplacian, order))
                                 : ev_sharp_from_powers(laplacian, order);
  return heat_jets_from_table(table, degrees);
}

HeatJets heat_jets(const DiffOp& laplacian, int max_k, int max_degree, DifferencePath path) {
  if (max_k < 0 || max_degree < 0) throw PreconditionError("negative heat-jet targets");
  return heat_jets_profile(laplacian, std::vector<int>(static_cast<std::size_t>(max_k + 1), max_degree),
                           path);
}

Matrix polterovich_ak(const DiffOp& laplacian, int k, int r, const JetPoly& psi) {
  if (k < 0 || r < k) throw PreconditionError("inversion formula needs r >= k >= 0");
  require_second_order(laplacian);
  if (psi.dim() != laplacian.dim()) throw DimensionError("section dimension mismatch");
  const int n = laplacian.dim();
  const Rational shifted = Rational(r) + Rational(n, 2);
  Matrix sum;
  for (int l = 0; l <= r; ++l) {
    const JetPoly weighted = times_radial_power(psi, l, Rational(1) / factorial(l));
    Matrix term = power_at_origin(laplacian, k + l, weighted);
    const Rational coefficient = pow(Rational(-1, 4), l) * rational_binomial(shifted, r - l) *
                                 minus_one_power(k + l) / factorial(k + l);
    term *= coefficient;
    sum = l == 0 ? term : sum + term;
  }
  return sum;
}

bool IntertwineReport::passed() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const IntertwineEntry& e) { return e.equal(); });
}

std::optional<IntertwineEntry> IntertwineReport::first_failure() const {
  for (const auto& e : entries)
    if (!e.equal()) return e;
  return std::nullopt;
}

namespace {

void require_intertwine_degrees(const HeatJets& a, int max_mu, const JetPoly& psi) {
  if (max_mu < 0) throw PreconditionError("negative intertwining order");
  if (a.max_k() < max_mu)
    throw TruncationError("not enough heat coefficients for the intertwining order", max_mu,
                          a.max_k());
  for (int j = 0; j <= max_mu; ++j) {
    const JetPoly& aj = a[j];
    if (!aj.exact() && aj.degree() < 2 * (max_mu - j))
      throw TruncationError("heat coefficient a_" + std::to_string(j) + " jet too short",
                            2 * (max_mu - j), aj.degree());
  }
  if (!psi.exact() && psi.degree() < 2 * max_mu)
    throw TruncationError("section jet too short for intertwining", 2 * max_mu, psi.degree());
}

}  // namespace

std::vector<Matrix> intertwine_lhs(const DiffOp& laplacian, int max_mu, const JetPoly& psi) {
  if (max_mu < 0) throw PreconditionError("negative intertwining order");
  std::vector<Matrix> out;
  for (int mu = 0; mu <= max_mu; ++mu)
    out.push_back(power_at_origin(laplacian, mu, psi) * (minus_one_power(mu) / factorial(mu)));
  return out;
}

std::vector<Matrix> intertwine_rhs(const HeatJets& a, int max_mu, const JetPoly& psi) {
  require_intertwine_degrees(a, max_mu, psi);
  std::vector<Matrix> out;
  for (int mu = 0; mu <= max_mu; ++mu) {
    Matrix rhs;
    for (int nu = 0; nu <= mu; ++nu) {
      const JetPoly product = poly_mul(a[mu - nu], psi, 2 * nu);
      Matrix term = flat_laplacian_power(product, nu).at_origin() *
                    (minus_one_power(nu) / factorial(nu));
      rhs = nu == 0 ? term : rhs + term;
    }
    out.push_back(std::move(rhs));
  }
  return out;
}

IntertwineReport intertwine_check(const DiffOp& laplacian, const HeatJets& a, int max_mu,
                                  const JetPoly& psi) {
  std::vector<Matrix> rhs = intertwine_rhs(a, max_mu, psi);
  std::vector<Matrix> lhs = intertwine_lhs(laplacian, max_mu, psi);
  IntertwineReport report;
  for (int mu = 0; mu <= max_mu; ++mu) {
    const auto i = static_cast<std::size_t>(mu);
    report.entries.push_back({mu, std::move(lhs[i]), std::move(rhs[i])});
  }
  return report;
}

Matrix lemma_mi_rhs(int n, int k, int l, const JetPoly& psi) {
  if (k < 0 || l < 0) throw PreconditionError("negative index");
  if (psi.dim() != n) throw DimensionError("section dimension mismatch");
  if (!psi.exact() && psi.degree() < 2 * l)
    throw TruncationError("section jet too short", 2 * l, psi.degree());
  const Rational factor = pow(Rational(-4), k) *
                          rational_binomial(-Rational(n, 2) - Rational(l), k) *
                          minus_one_power(l) / factorial(l);
  return flat_laplacian_power(psi.truncated(2 * l), l).at_origin() * factor;
}

Matrix lemma_mi_lhs(int k, int l, const JetPoly& psi) {
  if (k < 0 || l < 0) throw PreconditionError("negative index");
  if (!psi.exact() && psi.degree() < 2 * l)
    throw TruncationError("section jet too short", 2 * l, psi.degree());
  const JetPoly weighted = times_radial_power(psi.truncated(2 * l), k, Rational(1) / factorial(k));
  return flat_laplacian_power(weighted, k + l).at_origin() *
         (minus_one_power(k + l) / factorial(k + l));
}

LinkReport link_check(const DiffOp& laplacian, const HeatJets& a, int order) {
  if (order < 0) throw PreconditionError("negative link order");
  if (a.max_k() < order)
    throw TruncationError("not enough heat coefficients for the link order", order, a.max_k());
  for (int k = 0; k <= order; ++k) {
    if (!a[k].exact() && a[k].degree() < 2 * (order - k))
      throw TruncationError("heat coefficient a_" + std::to_string(k) + " jet too short",
                            2 * (order - k), a[k].degree());
  }
  const int n = laplacian.dim();
  const int m = laplacian.rank();
  const std::vector<JetPoly> values = power_values(laplacian, order);

  // W_p = sum_{k+t=p} (-1)^t/t! Delta^t a_k, exact to degree 2 (order - p).
  std::vector<JetPoly> w;
  for (int p = 0; p <= order; ++p) {
    const int degree = 2 * (order - p);
    JetPoly wp(n, Role::endomorphism, m, degree);
    for (int t = 0; t <= p; ++t) {
      wp += flat_laplacian_power(a[p - t].truncated(degree + 2 * t), t) *
            (minus_one_power(t) / factorial(t));
    }
    w.push_back(std::move(wp));
  }

  LinkReport report;
  report.order = order;
  for (int r = 0; r <= order; ++r) {
    const JetPoly lhs = values[static_cast<std::size_t>(r)] *
                        (minus_one_power(r) / factorial(r));
    JetPoly rhs(n, Role::endomorphism, m, kExactDegree);
    for (int p = 0; p <= r; ++p) {
      for (int s = 0; p + s <= r; ++s) {
        const int u = r - p - s;
        const JetPoly piece = w[static_cast<std::size_t>(p)].homogeneous_part(s).with_degree(kExactDegree);
        rhs += times_radial_power(piece, u, pow(Rational(2), s) / factorial(u));
      }
    }
    const JetPoly diff = lhs - rhs;
    if (!diff.is_zero()) {
      const MultiIndex& alpha = diff.terms().begin()->first;
      report.mismatches.push_back({r, alpha, lhs.coefficient(alpha), rhs.coefficient(alpha)});
    }
  }
  return report;
}

}  // namespace heatjet
