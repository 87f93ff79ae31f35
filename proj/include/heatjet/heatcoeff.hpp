#pragma once

#include <optional>
#include <string>
#include <vector>

#include "heatjet/diffop.hpp"
#include "heatjet/heat_jets.hpp"
#include "heatjet/jet_poly.hpp"
#include "heatjet/zseries.hpp"

namespace heatjet {

enum class DifferencePath { recursion, from_powers };

/// Truncated series D(z) = e^{-zL} e^{z Delta} = sum_r z^r D_r of
/// differential operators. Entry r is exact to coefficient degree
/// degree + 2 (order - r), which is what the next recursion step consumes.
struct DifferenceOp {
  ZSeries<DiffOp> terms;
  DifferencePath provenance = DifferencePath::recursion;
  int degree = 0;

  int order() const { return terms.order(); }
  const DiffOp& operator[](int r) const { return terms[r]; }
};

/// Homogeneous pieces D#_{r,s} (degree s) of (ev D_r)^sharp for s <= r <= R.
class EvSharpTable {
 public:
  EvSharpTable() = default;
  EvSharpTable(int n, int rank, int order);

  int dim() const { return n_; }
  int rank() const { return rank_; }
  int order() const { return order_; }
  /// Zero for s > r.
  JetPoly piece(int r, int s) const;
  void set_piece(int r, int s, JetPoly p);

  friend bool operator==(const EvSharpTable&, const EvSharpTable&) = default;

 private:
  int n_ = 0;
  int rank_ = 1;
  int order_ = 0;
  std::vector<std::vector<JetPoly>> pieces_;
};

/// Coefficient degree of L needed for exact D_0..D_R at degree `degree`.
int required_operator_degree(int order, int degree = 0);

/// D_0 = 1 and r D_r = D_{r-1} Delta - L D_{r-1}.
DifferenceOp difference_operator(const DiffOp& laplacian, int order, int degree = 0);

struct OrderBoundWitness {
  int r;
  int s;
  MultiIndex monomial;
  Matrix value;
  std::string str() const;
};
/// First monomial of degree s > r in some (ev D_r)^sharp, if any.
std::optional<OrderBoundWitness> find_order_bound_violation(const DifferenceOp& d);

/// Splits (ev D_r)^sharp into homogeneous pieces; throws OrderBoundViolation
/// when a piece of degree s > r is nonzero.
EvSharpTable ev_sharp_table(const DifferenceOp& d);

/// (ev L^p)^sharp for p = 0..order, from the functionals ev o L^p computed by
/// ev o L^p (x^beta) = ev o L^{p-1} (L x^beta). Needs only values at the
/// origin of powers of L, never the full operators.
std::vector<JetPoly> power_values(const DiffOp& laplacian, int order);

/// D#_{r,s} = (-1)^r sum_mu |x|^{2mu}/mu! (ev L^{r-mu})^sharp_{s-2mu} / (r-mu)!.
EvSharpTable ev_sharp_from_powers(const DiffOp& laplacian, int order);

/// Order R = max_k (2k + degrees[k]) of the difference operator needed to get
/// a_k exact to degrees[k].
int difference_order_for(const std::vector<int>& degrees);

/// a(z) = e^{z Delta} (2z)^{-N} (ev D(z))^sharp; a_k is truncated at degrees[k].
HeatJets heat_jets_from_table(const EvSharpTable& table, const std::vector<int>& degrees);

/// a_0..a_K with a_k exact to degrees[k].
HeatJets heat_jets_profile(const DiffOp& laplacian, const std::vector<int>& degrees,
                           DifferencePath path = DifferencePath::recursion);
/// a_0..a_K all exact to max_degree.
HeatJets heat_jets(const DiffOp& laplacian, int max_k, int max_degree,
                   DifferencePath path = DifferencePath::recursion);

/// [a_k psi](0) via the inversion formula
/// sum_l (-1/4)^l (r + n/2 choose r - l) [(-1)^{k+l}/(k+l)! L^{k+l} (|x|^{2l}/l! psi)](0),
/// valid for every r >= k.
Matrix polterovich_ak(const DiffOp& laplacian, int k, int r, const JetPoly& psi);

struct IntertwineEntry {
  int mu;
  Matrix lhs;
  Matrix rhs;
  bool equal() const { return lhs == rhs; }
};

struct IntertwineReport {
  std::vector<IntertwineEntry> entries;
  bool passed() const;
  std::optional<IntertwineEntry> first_failure() const;
};

/// Compares (-1)^mu/mu! [L^mu psi](0) with
/// sum_nu (-1)^nu/nu! [Delta^nu (a_{mu-nu} psi)](0) for mu = 0..max_mu.
/// Needs a_j exact to degree 2 (max_mu - j) and psi to degree 2 max_mu.
IntertwineReport intertwine_check(const DiffOp& laplacian, const HeatJets& a, int max_mu,
                                  const JetPoly& psi);
/// The two sides of intertwine_check separately, indexed by mu; the left side
/// does not depend on the heat coefficients and can be reused across them.
std::vector<Matrix> intertwine_lhs(const DiffOp& laplacian, int max_mu, const JetPoly& psi);
std::vector<Matrix> intertwine_rhs(const HeatJets& a, int max_mu, const JetPoly& psi);

/// (-4)^k (-n/2 - l choose k) [(-1)^l/l! Delta^l psi](0).
Matrix lemma_mi_rhs(int n, int k, int l, const JetPoly& psi);
/// [(-1)^{k+l}/(k+l)! Delta^{k+l} (|x|^{2k}/k! psi)](0), computed directly.
Matrix lemma_mi_lhs(int k, int l, const JetPoly& psi);

struct LinkMismatch {
  int r;
  MultiIndex monomial;
  Matrix lhs;
  Matrix rhs;
};

struct LinkReport {
  int order = 0;
  std::vector<LinkMismatch> mismatches;
  bool passed() const { return mismatches.empty(); }
};

/// Checks (ev e^{-zL})^sharp = e^{z|x|^2} (2z)^N (e^{-z Delta} a(z)) order by
/// order in z up to `order`, in every polynomial degree. Needs a_k exact to
/// degree 2 (order - k).
LinkReport link_check(const DiffOp& laplacian, const HeatJets& a, int order);

}  // namespace heatjet
