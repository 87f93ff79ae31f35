#include "heatjet/cli/verification.hpp"

#include <random>
#include <sstream>

#include "heatjet/error.hpp"
#include "heatjet/heatcoeff.hpp"

namespace heatjet::cli {

namespace {

JetPoly basis_section(int n, int rank, const MultiIndex& beta) {
  return JetPoly::monomial(n, Role::endomorphism, rank, kExactDegree, beta, Matrix::identity(rank));
}

std::string section_name(const MultiIndex& beta) { return "x^" + beta.str() + " id"; }

CheckResult pass(std::string name, std::string detail = {}) {
  return {std::move(name), true, std::move(detail)};
}

CheckResult fail(std::string name, std::string detail) {
  return {std::move(name), false, std::move(detail)};
}

// Degree profile max(Dmax, 2(K - k)): enough for intertwining up to mu = K
// and for the reported degree, at the same difference-operator order.
std::vector<int> verification_profile(int max_k, int max_degree) {
  std::vector<int> d;
  for (int k = 0; k <= max_k; ++k) d.push_back(std::max(max_degree, 2 * (max_k - k)));
  return d;
}

// Reported jets up to their degree, completed above it by the fresh jets.
HeatJets extend(const HeatJets& reported, const HeatJets& fresh) {
  HeatJets out;
  for (int k = 0; k <= fresh.max_k(); ++k) {
    const JetPoly& r = reported[k];
    const JetPoly& f = fresh[k];
    JetPoly ext(f.dim(), Role::endomorphism, f.rank(), f.degree());
    for (const auto& [alpha, v] : r.terms())
      if (alpha.degree() <= f.degree()) ext.add_term(alpha, v);
    for (const auto& [alpha, v] : f.terms())
      if (alpha.degree() > r.degree()) ext.add_term(alpha, v);
    out.a.push_back(std::move(ext));
  }
  return out;
}

CheckResult check_agreement(const HeatJets& reported, const HeatJets& fresh) {
  if (reported.max_k() != fresh.max_k())
    return fail("recomputation", "result has " + std::to_string(reported.max_k() + 1) +
                                     " coefficients, expected " + std::to_string(fresh.max_k() + 1));
  for (int k = 0; k <= fresh.max_k(); ++k) {
    const int d = std::min(reported[k].degree(), fresh[k].degree());
    const JetPoly diff = reported[k].truncated(d) - fresh[k].truncated(d);
    if (!diff.is_zero()) {
      const MultiIndex& alpha = diff.terms().begin()->first;
      return fail("recomputation", "a_" + std::to_string(k) + " at x^" + alpha.str() + ": result " +
                                       reported[k].coefficient(alpha).str() + ", recomputed " +
                                       fresh[k].coefficient(alpha).str());
    }
  }
  return pass("recomputation");
}

struct IntertwineSweep {
  std::vector<MultiIndex> betas;
  std::vector<JetPoly> sections;
  std::vector<std::vector<Matrix>> lhs;
};

IntertwineSweep prepare_sweep(const DiffOp& op, int max_mu) {
  IntertwineSweep s;
  for (const auto& beta : multi_indices_up_to(op.dim(), 2 * max_mu)) {
    s.betas.push_back(beta);
    s.sections.push_back(basis_section(op.dim(), op.rank(), beta));
    s.lhs.push_back(intertwine_lhs(op, max_mu, s.sections.back()));
  }
  return s;
}

// First (mu, psi) where the two sides differ, as a witness string.
std::optional<std::string> intertwine_witness(const IntertwineSweep& s, const HeatJets& a,
                                              int max_mu) {
  for (std::size_t i = 0; i < s.sections.size(); ++i) {
    const std::vector<Matrix> rhs = intertwine_rhs(a, max_mu, s.sections[i]);
    for (int mu = 0; mu <= max_mu; ++mu) {
      const Matrix& lhs = s.lhs[i][static_cast<std::size_t>(mu)];
      if (lhs != rhs[static_cast<std::size_t>(mu)]) {
        return "mu=" + std::to_string(mu) + " psi=" + section_name(s.betas[i]) +
               " lhs=" + lhs.str() + " rhs=" + rhs[static_cast<std::size_t>(mu)].str();
      }
    }
  }
  return std::nullopt;
}

CheckResult check_excess_vanishing(const DiffOp& op) {
  const int n = op.dim();
  if (n < 2) return pass("excess_vanishing", "skipped: no harmonic polynomials of degree >= 2 in one variable");
  auto mono = [n](int a, int b) {
    MultiIndex m(n);
    m.set(0, a);
    m.set(1, b);
    return m;
  };
  const std::vector<std::pair<std::string, std::vector<std::pair<MultiIndex, Rational>>>> harmonics{
      {"x1 x2", {{mono(1, 1), 1}}},
      {"x1^2 - x2^2", {{mono(2, 0), 1}, {mono(0, 2), -1}}},
      {"x1^3 - 3 x1 x2^2", {{mono(3, 0), 1}, {mono(1, 2), -3}}},
      {"3 x1^2 x2 - x2^3", {{mono(2, 1), 3}, {mono(0, 3), -1}}}};
  int checked = 0;
  for (const auto& [name, terms] : harmonics) {
    JetPoly psi(n, Role::endomorphism, op.rank(), kExactDegree);
    int degree = 0;
    for (const auto& [alpha, c] : terms) {
      psi.add_term(alpha, Matrix::identity(op.rank()) * c);
      degree = alpha.degree();
    }
    for (int mu = 0; mu < degree; ++mu) {
      Matrix v;
      try {
        v = power_at_origin(op, mu, psi);
      } catch (const TruncationError&) {
        continue;
      }
      ++checked;
      if (!v.is_zero())
        return fail("excess_vanishing", "psi=" + name + " mu=" + std::to_string(mu) +
                                            " gives " + v.str());
    }
  }
  return pass("excess_vanishing", std::to_string(checked) + " (psi, mu) pairs vanish");
}

CheckResult check_falsifiability(const IntertwineSweep& sweep, const HeatJets& a, int max_k) {
  int caught = 0;
  for (int k = 0; k <= max_k; ++k) {
    for (const auto& alpha : multi_indices_up_to(a[k].dim(), 2 * (max_k - k))) {
      MultiIndex parity(alpha.dim());
      for (int i = 0; i < alpha.dim(); ++i) parity.set(i, alpha[i] % 2);
      if (alpha.degree() + parity.degree() > 2 * (max_k - k)) continue;
      HeatJets corrupted = a;
      corrupted.a[static_cast<std::size_t>(k)].add_term(
          alpha, Matrix::identity(a[k].rank()) * Rational(1, 7));
      if (!intertwine_witness(sweep, corrupted, max_k))
        return fail("falsifiability", "adding 1/7 at x^" + alpha.str() + " in a_" +
                                          std::to_string(k) + " went unnoticed");
      ++caught;
    }
  }
  return pass("falsifiability", std::to_string(caught) + " single-coefficient corruptions detected");
}

}  // namespace

VerificationReport run_verification(const ProblemSpec& spec, const DiffOp& op,
                                    const HeatJets& reported, VerifyLevel level) {
  VerificationReport report;
  report.level = level;
  if (level == VerifyLevel::none) return report;
  const int max_k = spec.max_k;
  const DegreeRequirements req = degree_requirements(spec.max_k, spec.max_degree);
  const std::vector<int> profile = verification_profile(max_k, spec.max_degree);
  const int order = difference_order_for(profile);

  report.checks.push_back(pass("normal_gauge", "metric validated to degree " +
                                                   std::to_string(req.metric_degree)));

  const DifferenceOp d = difference_operator(op, order);
  if (auto w = find_order_bound_violation(d)) {
    report.checks.push_back(fail("order_bound", w->str()));
    return report;
  }
  report.checks.push_back(pass("order_bound", "D_0..D_" + std::to_string(order)));
  const EvSharpTable table = ev_sharp_table(d);
  const HeatJets fresh = heat_jets_from_table(table, profile);

  if (reported.max_k() < 0 || reported[0].at_origin() != Matrix::identity(op.rank())) {
    report.checks.push_back(fail("a0_identity", reported.max_k() < 0 ? "no coefficients"
                                                                     : "a_0(0) = " + reported[0].at_origin().str()));
  } else {
    report.checks.push_back(pass("a0_identity"));
  }
  if (reported.max_k() != max_k) {
    report.checks.push_back(check_agreement(reported, fresh));
    return report;
  }
  const HeatJets jets = extend(reported, fresh);

  const IntertwineSweep sweep = prepare_sweep(op, max_k);
  if (auto w = intertwine_witness(sweep, jets, max_k)) {
    report.checks.push_back(fail("intertwining", *w));
  } else {
    report.checks.push_back(pass("intertwining", "mu <= " + std::to_string(max_k) + " on " +
                                                     std::to_string(sweep.sections.size()) +
                                                     " monomial sections"));
  }

  const JetPoly one = basis_section(op.dim(), op.rank(), MultiIndex(op.dim()));
  {
    CheckResult c = pass("inversion_degree0");
    for (int k = 0; k <= max_k && c.passed; ++k) {
      const Matrix v = polterovich_ak(op, k, k, one);
      if (v != jets[k].at_origin())
        c = fail("inversion_degree0", "k=" + std::to_string(k) + " a_k(0)=" +
                                          jets[k].at_origin().str() + " formula=" + v.str());
    }
    report.checks.push_back(c);
  }

  const LinkReport link = link_check(op, jets, max_k);
  if (link.passed()) {
    report.checks.push_back(pass("link", "z^0..z^" + std::to_string(max_k)));
  } else {
    const LinkMismatch& m = link.mismatches.front();
    report.checks.push_back(fail("link", "z^" + std::to_string(m.r) + " at x^" + m.monomial.str() +
                                             ": lhs " + m.lhs.str() + " rhs " + m.rhs.str()));
  }
  report.checks.push_back(check_agreement(reported, fresh));
  if (level == VerifyLevel::fast) return report;

  if (ev_sharp_from_powers(op, order) == table) {
    report.checks.push_back(pass("dual_path", "R = " + std::to_string(order)));
  } else {
    report.checks.push_back(fail("dual_path", "recursion and powers tables differ"));
  }

  {
    CheckResult c = pass("inversion_stability");
    std::ostringstream ranges;
    for (int k = 0; k <= max_k && c.passed; ++k) {
      const int r_max = std::min(k + 3, op.degree() / 2 + 1 - k);
      const Matrix base = polterovich_ak(op, k, k, one);
      for (int r = k + 1; r <= r_max; ++r) {
        const Matrix v = polterovich_ak(op, k, r, one);
        if (v != base) {
          c = fail("inversion_stability", "k=" + std::to_string(k) + " r=" + std::to_string(r) +
                                              " gives " + v.str() + " instead of " + base.str());
          break;
        }
      }
      ranges << (k ? ", " : "") << "k=" << k << ": r<=" << std::max(k, r_max);
    }
    if (c.passed) c.detail = ranges.str();
    report.checks.push_back(c);
  }

  report.checks.push_back(check_excess_vanishing(op));
  report.checks.push_back(check_falsifiability(sweep, jets, max_k));
  return report;
}

namespace {

JetPoly seeded_poly(std::mt19937_64& rng, int n, int degree) {
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);
  JetPoly p(n, Role::scalar, 1, kExactDegree);
  for (const auto& alpha : multi_indices_up_to(n, degree)) p.add_term(alpha, Rational(num(rng), den(rng)));
  return p;
}

CheckResult selftest_classical_formula() {
  for (int n = 1; n <= 4; ++n) {
    for (int r = 0; r <= 4; ++r) {
      const Rational expected =
          pow(Rational(4), r) * factorial(r) * falling_factorial(Rational(-n, 2), r);
      const Matrix v = power_at_origin(flat_laplacian(n, 1), r, radial_power(n, r));
      if (v(0, 0) != expected)
        return fail("classical_formula", "n=" + std::to_string(n) + " r=" + std::to_string(r) +
                                             " gives " + v.str() + ", expected " + expected.str());
    }
  }
  return pass("classical_formula", "r <= 4, n <= 4");
}

CheckResult selftest_binomial_inversion() {
  for (int n = 1; n <= 4; ++n)
    for (int r = 0; r <= 6; ++r)
      for (int mu = 0; mu <= r; ++mu)
        if (binomial_inversion_sum(n, r, mu) != Rational(mu == 0 ? 1 : 0))
          return fail("binomial_inversion", "n=" + std::to_string(n) + " r=" + std::to_string(r) +
                                                " mu=" + std::to_string(mu));
  return pass("binomial_inversion", "0 <= mu <= r <= 6, n <= 4");
}

CheckResult selftest_green(std::mt19937_64& rng) {
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 1 + trial % 3;
    const JetPoly psi = seeded_poly(rng, n, 5);
    const JetPoly phi = seeded_poly(rng, n, 5);
    JetPoly rhs = poly_mul(flat_laplacian_of(psi), phi) + poly_mul(psi, flat_laplacian_of(phi));
    for (int mu = 0; mu < n; ++mu) {
      const MultiIndex e = MultiIndex::unit(n, mu);
      rhs -= poly_mul(psi.derivative(e), phi.derivative(e)) * Rational(2);
    }
    if (!(flat_laplacian_of(poly_mul(psi, phi)) == rhs))
      return fail("greens_identity", "trial " + std::to_string(trial) + " in n=" + std::to_string(n));
  }
  return pass("greens_identity", "12 random pairs of degree 5");
}

CheckResult selftest_lemma_mi(std::mt19937_64& rng) {
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 1 + trial % 3;
    const JetPoly psi = seeded_poly(rng, n, 6);
    for (int k = 0; k <= 4; ++k)
      for (int l = 0; k + l <= 4; ++l)
        if (lemma_mi_lhs(k, l, psi) != lemma_mi_rhs(n, k, l, psi))
          return fail("lemma_mi", "n=" + std::to_string(n) + " k=" + std::to_string(k) +
                                      " l=" + std::to_string(l));
  }
  return pass("lemma_mi", "12 random sections, k + l <= 4");
}

CheckResult selftest_sl2(std::mt19937_64& rng) {
  for (int n = 1; n <= 3; ++n) {
    const JetPoly psi = seeded_poly(rng, n, 6);
    const JetPoly r2 = radial_power(n, 1);
    const JetPoly lhs = flat_laplacian_of(poly_mul(r2, psi)) - poly_mul(r2, flat_laplacian_of(psi));
    JetPoly rhs = psi * Rational(n, 2);
    for (int s = 0; s <= 6; ++s) rhs += psi.homogeneous_part(s) * Rational(s);
    if (!(lhs == rhs * Rational(-4))) return fail("sl2_commutator", "n=" + std::to_string(n));
  }
  return pass("sl2_commutator", "[Delta, |x|^2] = -4 (N + n/2), n <= 3");
}

}  // namespace

VerificationReport run_selftest() {
  std::mt19937_64 rng(20240611);
  VerificationReport report;
  report.level = VerifyLevel::full;
  report.checks.push_back(selftest_classical_formula());
  report.checks.push_back(selftest_binomial_inversion());
  report.checks.push_back(selftest_green(rng));
  report.checks.push_back(selftest_lemma_mi(rng));
  report.checks.push_back(selftest_sl2(rng));
  return report;
}

}  // namespace heatjet::cli
