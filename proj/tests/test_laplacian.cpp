#include "doctest.h"
#include "heatjet/error.hpp"
#include "heatjet/laplacian.hpp"
#include "support/random_jets.hpp"

using namespace heatjet;
using heatjet::testing::random_poly;

namespace {

JetPoly x_poly(int n, std::initializer_list<std::pair<MultiIndex, Rational>> terms) {
  JetPoly p(n, Role::scalar, 1, kExactDegree);
  for (const auto& [a, v] : terms) p.add_term(a, v);
  return p;
}

JetPoly one(int n) { return radial_power(n, 0); }

// g = I + s(x) (|x|^2 I - x x^T): always in normal gauge.
MetricJets radial_family(const JetPoly& s, int degree) {
  const int n = s.dim();
  std::vector<JetPoly> e;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      JetPoly h = i == j ? radial_power(n, 1) : JetPoly(n, Role::scalar, 1, kExactDegree);
      h -= poly_mul(JetPoly::scalar_monomial(MultiIndex::unit(n, i)),
                    JetPoly::scalar_monomial(MultiIndex::unit(n, j)));
      JetPoly entry = poly_mul(s, h);
      if (i == j) entry += one(n);
      e.push_back(entry);
    }
  }
  return MetricJets(n, degree, std::move(e));
}

MetricJets curvature_model(const Rational& t, int degree) {
  return radial_family(one(2) * t, degree);
}

MetricJets one_dim(const JetPoly& g11, int degree) { return MetricJets(1, degree, {g11}); }

}  // namespace

TEST_CASE("normal gauge validation") {
  CHECK(validate_normal_gauge(MetricJets::flat(3, 4)).valid());
  CHECK(validate_normal_gauge(curvature_model(Rational(-1, 3), 4)).valid());

  const GaugeReport bad = validate_normal_gauge(one_dim(x_poly(1, {{{0}, 1}, {{1}, 1}}), 3));
  CHECK_FALSE(bad.valid());
  CHECK_FALSE(bad.radial_gauge);
  CHECK(bad.symmetric);
  CHECK(bad.unit_at_origin);
  REQUIRE(bad.violations.size() == 1);
  CHECK(bad.violations[0].find("(2)") != std::string::npos);

  std::vector<JetPoly> asym = MetricJets::flat(2, 2).entries();
  asym[1] = x_poly(2, {{{1, 0}, 1}});
  const GaugeReport r = validate_normal_gauge(MetricJets(2, 2, asym));
  CHECK_FALSE(r.symmetric);
  CHECK_FALSE(r.radial_gauge);

  std::vector<JetPoly> scaled = MetricJets::flat(2, 2).entries();
  scaled[0] = one(2) * Rational(2);
  CHECK_FALSE(validate_normal_gauge(MetricJets(2, 2, scaled)).unit_at_origin);
}

TEST_CASE("metric entries must be known to the metric degree") {
  CHECK_THROWS_AS(MetricJets(1, 4, {radial_power(1, 0, 3)}), TruncationError);
  CHECK_THROWS_AS(MetricJets(2, 4, {one(2)}), DimensionError);
}

TEST_CASE("inverse metric jets") {
  CHECK(inverse_metric_jets(MetricJets::flat(2, 5)) == MetricJets::flat(2, 5));

  const MetricJets g = one_dim(x_poly(1, {{{0}, 1}, {{2}, 1}}), 4);
  const MetricJets inv = inverse_metric_jets(g);
  CHECK(inv(0, 0) == x_poly(1, {{{0}, 1}, {{2}, -1}, {{4}, 1}}).truncated(4));

  // h = |x|^2 I - x x^T satisfies h^2 = |x|^2 h.
  const Rational t(-1, 3);
  const MetricJets cm = curvature_model(t, 4);
  const MetricJets cinv = inverse_metric_jets(cm);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const JetPoly h = (cm(i, j) - (i == j ? one(2) : JetPoly(2, Role::scalar, 1, 4))) * (Rational(1) / t);
      JetPoly expected = (i == j ? one(2) : JetPoly(2, Role::scalar, 1, kExactDegree)) - h * t +
                         poly_mul(radial_power(2, 1), h) * (t * t);
      CHECK(cinv(i, j) == expected.truncated(4));
    }
  }

  std::vector<JetPoly> off = MetricJets::flat(1, 2).entries();
  off[0] = one(1) * Rational(3);
  CHECK_THROWS_AS(inverse_metric_jets(MetricJets(1, 2, off)), ValidationError);
}

TEST_CASE("sqrt det jets") {
  CHECK(sqrt_det_jets(MetricJets::flat(3, 4)) == one(3).truncated(4));
  const MetricJets g = one_dim(x_poly(1, {{{0}, 1}, {{2}, 1}}), 4);
  CHECK(sqrt_det_jets(g) ==
        x_poly(1, {{{0}, 1}, {{2}, Rational(1, 2)}, {{4}, Rational(-1, 8)}}).truncated(4));

  const JetPoly d1 = x_poly(2, {{{0, 0}, 1}, {{1, 1}, 2}});
  const JetPoly d2 = x_poly(2, {{{0, 0}, 1}, {{0, 2}, -1}, {{3, 0}, 1}});
  const JetPoly z(2, Role::scalar, 1, kExactDegree);
  const MetricJets diag(2, 5, {d1, z, z, d2});
  CHECK(metric_determinant(diag) == poly_mul(d1, d2, 5));
}

TEST_CASE("inverse and determinant identities on random gauge-valid metrics") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 1 + trial % 3;
    const int degree = 5;
    const MetricJets g = radial_family(random_poly(rng, n, 3), degree);
    REQUIRE(validate_normal_gauge(g).valid());
    const MetricJets inv = inverse_metric_jets(g);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        JetPoly prod(n, Role::scalar, 1, degree);
        for (int k = 0; k < n; ++k) accumulate_product(prod, inv(i, k), g(k, j), Rational(1));
        REQUIRE(prod == (i == j ? one(n) : JetPoly(n, Role::scalar, 1, kExactDegree)).truncated(degree));
      }
    }
    const JetPoly j = sqrt_det_jets(g);
    REQUIRE(poly_mul(j, j, degree) == metric_determinant(g));
  }
}

TEST_CASE("Laplace-Beltrami operator") {
  for (int n = 1; n <= 3; ++n) {
    const DiffOp lb = laplace_beltrami(MetricJets::flat(n, 4), 2);
    CHECK(lb.degree() == 3);
    CHECK(lb.agrees_with(flat_laplacian(n, 2), 3));
  }
  const DiffOp lb1 = laplace_beltrami(one_dim(one(1), 3), 1);
  CHECK(lb1.terms().size() == 1);
  CHECK(lb1.coefficient({2}) == JetPoly::constant(1, Role::endomorphism, 1, 2, Matrix::scalar(-1)));

  CHECK_THROWS_AS(laplace_beltrami(one_dim(x_poly(1, {{{0}, 1}, {{1}, 1}}), 3), 1),
                  ValidationError);

  const MetricJets cm = curvature_model(Rational(-1, 3), 5);
  const DiffOp lb = laplace_beltrami(cm, 1);
  const MetricJets inv = inverse_metric_jets(cm);
  CHECK(lb.coefficient({2, 0}) == (inv(0, 0) * Rational(-1)).truncated(4).as_endomorphism(1));
  CHECK(lb.coefficient({1, 1}) == (inv(0, 1) * Rational(-2)).truncated(4).as_endomorphism(1));
  CHECK(lb.coefficient({0, 2}) == (inv(1, 1) * Rational(-1)).truncated(4).as_endomorphism(1));
}

TEST_CASE("Laplace-Beltrami agrees with the divergence form applied to a function") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 1 + trial % 3;
    const int degree = 5;
    const MetricJets g = radial_family(random_poly(rng, n, 2), degree);
    const JetPoly f = random_poly(rng, n, 6);
    const JetPoly j = sqrt_det_jets(g);
    const MetricJets inv = inverse_metric_jets(g);
    // -(1/j) sum_ab d_a (j g^ab d_b f), each step truncated to what is known.
    JetPoly div(n, Role::scalar, 1, degree - 1);
    for (int a = 0; a < n; ++a) {
      JetPoly flux(n, Role::scalar, 1, degree);
      for (int b = 0; b < n; ++b) {
        accumulate_product(flux, poly_mul(j, inv(a, b), degree),
                           f.derivative(MultiIndex::unit(n, b)), Rational(1));
      }
      div += flux.derivative(MultiIndex::unit(n, a));
    }
    const JetPoly expected = -poly_mul(reciprocal(j), div, degree - 1);
    const DiffOp lb = laplace_beltrami(g, 1);
    const JetPoly got = apply(lb, f, degree - 1);
    REQUIRE(got == expected.truncated(degree - 1));
  }
}

TEST_CASE("generalized Laplacian assembly") {
  const Rational c(5, 2);
  LaplacianSpec s1{MetricJets::flat(2, 3), 2, {}, one(2) * c};
  CHECK(generalized_laplacian(s1).agrees_with(flat_laplacian(2, 2) + DiffOp::identity(2, 2) * c, 2));

  LaplacianSpec s2{MetricJets::flat(1, 5), 1, {}, radial_power(1, 1)};
  const DiffOp ho = generalized_laplacian(s2);
  CHECK(ho.agrees_with(flat_laplacian(1, 1) + DiffOp::multiplication(radial_power(1, 1), 1), 4));

  LaplacianSpec s3{MetricJets::flat(1, 5), 1, {x_poly(1, {{{1}, 1}})}, JetPoly()};
  DiffOp expected = flat_laplacian(1, 1);
  DiffOp drift(1, 1, kExactDegree);
  drift.add_term({1}, x_poly(1, {{{1}, 1}}));
  CHECK(generalized_laplacian(s3).agrees_with(expected + drift, 4));

  LaplacianSpec bad{MetricJets::flat(2, 3), 1, {one(2)}, JetPoly()};
  CHECK_THROWS_AS(generalized_laplacian(bad), DimensionError);
  LaplacianSpec bad_rank{MetricJets::flat(2, 3), 2, {}, JetPoly::identity_times(one(2), 3)};
  CHECK_THROWS_AS(generalized_laplacian(bad_rank), RoleError);
}

TEST_CASE("generalized Laplacians have scalar symbol") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 1 + trial % 3;
    const int rank = 2;
    const MetricJets g = radial_family(random_poly(rng, n, 2), 4);
    LaplacianSpec spec{g, rank, {}, random_poly(rng, n, 3, Role::endomorphism, rank)};
    for (int i = 0; i < n; ++i)
      spec.first_order.push_back(random_poly(rng, n, 3, Role::endomorphism, rank));
    const DiffOp op = generalized_laplacian(spec);
    for (const auto& [alpha, c] : op.terms()) {
      if (alpha.degree() != 2) continue;
      for (const auto& [beta, v] : c.terms()) {
        REQUIRE(v(0, 1) == Rational(0));
        REQUIRE(v(1, 0) == Rational(0));
        REQUIRE(v(0, 0) == v(1, 1));
      }
    }
  }
}

TEST_CASE("input degrees for a target operator degree") {
  const InputDegrees d = input_degrees_for(6);
  CHECK(d.metric == 7);
  CHECK(d.first_order == 6);
  CHECK(d.potential == 6);
  std::mt19937_64 rng(24);
  const MetricJets g = radial_family(random_poly(rng, 2, 3), d.metric);
  LaplacianSpec spec{g, 1, {random_poly(rng, 2, 8).truncated(6), random_poly(rng, 2, 8).truncated(6)},
                     random_poly(rng, 2, 8).truncated(6)};
  CHECK(generalized_laplacian(spec).degree() == 6);
}

TEST_CASE("hat coefficients") {
  std::mt19937_64 rng(25);
  HeatJets a;
  for (int k = 0; k < 3; ++k) a.a.push_back(random_poly(rng, 2, 4, Role::endomorphism, 2).truncated(4));
  CHECK(hat_coefficients(a, MetricJets::flat(2, 4)) == a);

  const MetricJets g = curvature_model(Rational(-1, 3), 4);
  const HeatJets hat = hat_coefficients(a, g);
  const JetPoly j = sqrt_det_jets(g).as_endomorphism(2);
  for (int k = 0; k < 3; ++k) {
    CHECK(hat[k].at_origin() == a[k].at_origin());
    CHECK(poly_mul(j, hat[k], 4) == a[k]);
  }

  const MetricJets g1 = one_dim(x_poly(1, {{{0}, 1}, {{2}, 1}}), 4);
  HeatJets a1;
  a1.a.push_back(JetPoly::constant(1, Role::endomorphism, 1, 4, Matrix::scalar(1)));
  CHECK(hat_coefficients(a1, g1)[0] ==
        x_poly(1, {{{0}, 1}, {{2}, Rational(-1, 2)}, {{4}, Rational(3, 8)}}).truncated(4).as_endomorphism(1));

  HeatJets deep;
  deep.a.push_back(JetPoly::constant(1, Role::endomorphism, 1, 6, Matrix::scalar(1)));
  CHECK_THROWS_AS(hat_coefficients(deep, g1), TruncationError);
}
