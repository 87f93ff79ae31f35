#pragma once

#include <string>
#include <vector>

#include "heatjet/diffop.hpp"
#include "heatjet/heat_jets.hpp"
#include "heatjet/jet_poly.hpp"

namespace heatjet {

/// Jets of a Riemannian metric g_ij in coordinates around the origin, known
/// exactly up to `degree`. Entries are scalar jets stored row-major.
class MetricJets {
 public:
  MetricJets() = default;
  /// Entries are truncated to `degree`; throws if any is known to less.
  MetricJets(int n, int degree, std::vector<JetPoly> row_major);

  static MetricJets flat(int n, int degree);

  int dim() const { return n_; }
  int degree() const { return degree_; }
  const JetPoly& operator()(int i, int j) const {
    return g_[static_cast<std::size_t>(i * n_ + j)];
  }
  const std::vector<JetPoly>& entries() const { return g_; }

  friend bool operator==(const MetricJets&, const MetricJets&) = default;

 private:
  int n_ = 0;
  int degree_ = 0;
  std::vector<JetPoly> g_;
};

/// Outcome of the normal-coordinate checks on a metric jet.
struct GaugeReport {
  bool symmetric = true;
  bool unit_at_origin = true;
  bool radial_gauge = true;
  std::vector<std::string> violations;

  bool valid() const { return symmetric && unit_at_origin && radial_gauge; }
};

/// Checks g_ij = g_ji, g(0) = id and the Gauss-lemma form
/// sum_j g_ij(x) x_j = x_i (up to degree J+1), which holds exactly when the
/// identity map is the exponential map at the origin.
GaugeReport validate_normal_gauge(const MetricJets& g);

/// Jets of g^{-1} to the metric's degree; requires g(0) = id.
MetricJets inverse_metric_jets(const MetricJets& g);

/// det g by cofactor expansion on jets.
JetPoly metric_determinant(const MetricJets& g);

/// j(x) = sqrt(det g(x)), via the binomial series of sqrt(1 + u).
JetPoly sqrt_det_jets(const MetricJets& g);

/// psi -> -(1/j) sum_ij d_i (j g^ij d_j psi), tensored with id_E; the
/// coefficients are exact to degree J-1. Throws ValidationError unless the
/// metric is in normal gauge.
DiffOp laplace_beltrami(const MetricJets& g, int rank);

/// Data of a generalized Laplacian laplace_beltrami(g) + b^i d_i + F.
struct LaplacianSpec {
  MetricJets metric;
  int rank = 1;
  /// n endomorphism (or scalar) jets b^1..b^n; empty means no first-order term.
  std::vector<JetPoly> first_order;
  /// Endomorphism (or scalar) potential; default-constructed means zero.
  JetPoly potential;
};

DiffOp generalized_laplacian(const LaplacianSpec& spec);

/// Minimal jet degrees of the inputs of generalized_laplacian so that the
/// operator's coefficients are exact to `operator_degree`.
struct InputDegrees {
  int metric;
  int first_order;
  int potential;
};
InputDegrees input_degrees_for(int operator_degree);

/// a_k / j for every k, i.e. the coefficients hat a_k of the expansion with the
/// Jacobian divided out.
HeatJets hat_coefficients(const HeatJets& a, const MetricJets& g);

}  // namespace heatjet
