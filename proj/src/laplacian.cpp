#include "heatjet/laplacian.hpp"

#include <algorithm>

#include "heatjet/error.hpp"

namespace heatjet {

namespace {

using JetMatrix = std::vector<JetPoly>;

JetMatrix multiply(const JetMatrix& a, const JetMatrix& b, int n, int degree) {
  JetMatrix out;
  out.reserve(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      JetPoly acc(n, Role::scalar, 1, degree);
      for (int k = 0; k < n; ++k) {
        accumulate_product(acc, a[static_cast<std::size_t>(i * n + k)],
                           b[static_cast<std::size_t>(k * n + j)], Rational(1));
      }
      out.push_back(std::move(acc));
    }
  }
  return out;
}

void require_unit_at_origin(const MetricJets& g) {
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < g.dim(); ++j)
      if (g(i, j).at_origin()(0, 0) != Rational(i == j ? 1 : 0))
        throw ValidationError("metric is not the identity at the origin");
}

JetPoly determinant(const std::vector<const JetPoly*>& m, int size, int n, int degree) {
  if (size == 1) return m[0]->truncated(degree);
  JetPoly det(n, Role::scalar, 1, degree);
  for (int col = 0; col < size; ++col) {
    std::vector<const JetPoly*> minor;
    for (int i = 1; i < size; ++i)
      for (int j = 0; j < size; ++j)
        if (j != col) minor.push_back(m[static_cast<std::size_t>(i * size + j)]);
    const JetPoly sub = determinant(minor, size - 1, n, degree);
    accumulate_product(det, *m[static_cast<std::size_t>(col)], sub,
                       Rational(col % 2 == 0 ? 1 : -1));
  }
  return det;
}

}  // namespace

MetricJets::MetricJets(int n, int degree, std::vector<JetPoly> row_major)
    : n_(n), degree_(degree) {
  if (row_major.size() != static_cast<std::size_t>(n * n))
    throw DimensionError("metric needs n*n entries");
  g_.reserve(row_major.size());
  for (auto& e : row_major) {
    if (e.dim() != n) throw DimensionError("metric entry dimension mismatch");
    if (e.role() != Role::scalar) throw RoleError("metric entries must be scalar jets");
    if (e.degree() < degree)
      throw TruncationError("metric entry truncated below the metric degree", degree, e.degree());
    g_.push_back(e.with_degree(degree));
  }
}

MetricJets MetricJets::flat(int n, int degree) {
  std::vector<JetPoly> e;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      e.push_back(JetPoly::constant(n, Role::scalar, 1, degree, Matrix::scalar(i == j ? 1 : 0)));
    }
  }
  return MetricJets(n, degree, std::move(e));
}

GaugeReport validate_normal_gauge(const MetricJets& g) {
  GaugeReport report;
  const int n = g.dim();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!(g(i, j) == g(j, i))) {
        report.symmetric = false;
        report.violations.push_back("g_" + std::to_string(i + 1) + std::to_string(j + 1) +
                                    " != g_" + std::to_string(j + 1) + std::to_string(i + 1));
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Rational v = g(i, j).at_origin()(0, 0);
      if (v != Rational(i == j ? 1 : 0)) {
        report.unit_at_origin = false;
        report.violations.push_back("g_" + std::to_string(i + 1) + std::to_string(j + 1) +
                                    "(0) = " + v.str());
      }
    }
  }
  // sum_j g_ij x_j - x_i is known to degree J+1 because x_j has no constant term.
  for (int i = 0; i < n; ++i) {
    JetPoly row(n, Role::scalar, 1, g.degree() + 1);
    for (int j = 0; j < n; ++j) {
      const JetPoly xj = JetPoly::scalar_monomial(MultiIndex::unit(n, j));
      accumulate_product(row, g(i, j), xj, Rational(1));
    }
    row.add_term(MultiIndex::unit(n, i), Rational(-1));
    for (const auto& [alpha, v] : row.terms()) {
      report.radial_gauge = false;
      report.violations.push_back("radial gauge row " + std::to_string(i + 1) + ": monomial " +
                                  alpha.str() + " has coefficient " + v.str());
    }
  }
  return report;
}

MetricJets inverse_metric_jets(const MetricJets& g) {
  require_unit_at_origin(g);
  const int n = g.dim();
  const int degree = g.degree();
  JetMatrix minus_h;
  JetMatrix identity;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      JetPoly h = g(i, j);
      if (i == j) h.add_term(MultiIndex(n), Rational(-1));
      minus_h.push_back(-h);
      identity.push_back(
          JetPoly::constant(n, Role::scalar, 1, degree, Matrix::scalar(i == j ? 1 : 0)));
    }
  }
  // (I + h)^{-1} = sum_k (-h)^k; (-h)^k starts in degree k.
  JetMatrix sum = identity;
  JetMatrix term = identity;
  for (int k = 1; k <= degree; ++k) {
    term = multiply(term, minus_h, n, degree);
    if (std::all_of(term.begin(), term.end(), [](const JetPoly& p) { return p.is_zero(); }))
      break;
    for (std::size_t e = 0; e < sum.size(); ++e) sum[e] += term[e];
  }
  return MetricJets(n, degree, std::move(sum));
}

JetPoly metric_determinant(const MetricJets& g) {
  std::vector<const JetPoly*> m;
  for (const auto& e : g.entries()) m.push_back(&e);
  return determinant(m, g.dim(), g.dim(), g.degree());
}

JetPoly sqrt_det_jets(const MetricJets& g) {
  require_unit_at_origin(g);
  const int n = g.dim();
  const int degree = g.degree();
  JetPoly u = metric_determinant(g);
  u.add_term(MultiIndex(n), Rational(-1));
  // sqrt(1 + u) = sum_k (1/2 choose k) u^k with u(0) = 0.
  JetPoly power = JetPoly::constant(n, Role::scalar, 1, degree, Matrix::scalar(1));
  JetPoly sum = power;
  for (int k = 1; k <= degree; ++k) {
    power = poly_mul(power, u, degree);
    if (power.is_zero()) break;
    sum += power * rational_binomial(Rational(1, 2), k);
  }
  return sum;
}

DiffOp laplace_beltrami(const MetricJets& g, int rank) {
  const GaugeReport report = validate_normal_gauge(g);
  if (!report.valid()) {
    std::string msg = "metric is not in normal gauge";
    for (const auto& v : report.violations) msg += "; " + v;
    throw ValidationError(msg);
  }
  const int n = g.dim();
  const int degree = g.degree() - 1;
  const MetricJets inverse = inverse_metric_jets(g);
  const JetPoly j = sqrt_det_jets(g);
  const JetPoly j_inv = reciprocal(j);

  DiffOp op(n, rank, degree);
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      const Rational weight = a == b ? Rational(-1) : Rational(-2);
      op.add_term(MultiIndex::unit(n, a) + MultiIndex::unit(n, b),
                  (inverse(a, b) * weight).truncated(degree));
    }
  }
  for (int b = 0; b < n; ++b) {
    JetPoly divergence(n, Role::scalar, 1, degree);
    for (int a = 0; a < n; ++a) {
      const JetPoly weighted = poly_mul(j, inverse(a, b), g.degree());
      divergence += weighted.derivative(MultiIndex::unit(n, a));
    }
    op.add_term(MultiIndex::unit(n, b), -poly_mul(j_inv, divergence, degree));
  }
  return op;
}

DiffOp generalized_laplacian(const LaplacianSpec& spec) {
  const int n = spec.metric.dim();
  DiffOp op = laplace_beltrami(spec.metric, spec.rank);
  if (!spec.first_order.empty()) {
    if (static_cast<int>(spec.first_order.size()) != n)
      throw DimensionError("first-order term needs one coefficient per coordinate");
    int degree = kExactDegree;
    for (const auto& b : spec.first_order) degree = std::min(degree, b.degree());
    DiffOp first(n, spec.rank, degree);
    for (int i = 0; i < n; ++i) {
      const JetPoly& b = spec.first_order[static_cast<std::size_t>(i)];
      if (b.dim() != n) throw DimensionError("first-order coefficient dimension mismatch");
      first.add_term(MultiIndex::unit(n, i), b);
    }
    op += first;
  }
  if (spec.potential.dim() != 0) {
    if (spec.potential.dim() != n) throw DimensionError("potential dimension mismatch");
    op += DiffOp::multiplication(spec.potential, spec.rank);
  }
  return op;
}

InputDegrees input_degrees_for(int operator_degree) {
  return {operator_degree + 1, operator_degree, operator_degree};
}

HeatJets hat_coefficients(const HeatJets& a, const MetricJets& g) {
  const JetPoly j_inv = reciprocal(sqrt_det_jets(g));
  HeatJets out;
  for (const auto& ak : a.a) {
    if (ak.dim() != g.dim()) throw DimensionError("heat coefficient dimension mismatch");
    if (!ak.exact() && ak.degree() > g.degree())
      throw TruncationError("metric jet too short to divide out the Jacobian", ak.degree(),
                            g.degree());
    out.a.push_back(poly_mul(j_inv.as_endomorphism(ak.rank()), ak, ak.degree()));
  }
  return out;
}

}  // namespace heatjet
