#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include "json.hpp"

#include <entroflow/entropy.hpp>
#include <entroflow/errors.hpp>
#include <entroflow/field.hpp>
#include <entroflow/inequality.hpp>
#include <entroflow/quadrature.hpp>

using namespace entroflow;

TEST_SUITE("inequality") {

TEST_CASE("projection zeroes the forbidden band and renormalizes mass") {
  SpectralField f = SpectralField::constant_one(1, 3);
  f.set_coeff_of({1}, 0.1);
  f.set_coeff_of({3}, 0.005);
  const DenseGridSpec grid = DenseGridSpec::default_for(1, 3);
  const ProjectionResult res = project_orthogonal(f, 3, grid);
  CHECK(res.field.coeff_of({0}) == 1.0);
  CHECK(res.field.coeff_of({1}) == 0.0);
  CHECK(res.field.coeff_of({2}) == 0.0);
  CHECK(res.field.coeff_of({3}) == 0.005);
  CHECK(res.admissible);
  CHECK(res.margin > 0.0);
}

TEST_CASE("projection flags positivity loss") {
  SpectralField f = SpectralField::constant_one(1, 3);
  f.set_coeff_of({3}, 0.5);  // 0.5 sup|h_3| >> 1 on the lattice
  const DenseGridSpec grid = DenseGridSpec::default_for(1, 3);
  CHECK(!project_orthogonal(f, 2, grid).admissible);
  CHECK_THROWS_AS(require_admissible_projection(f, 2, grid), non_admissible_error);
}

TEST_CASE("certification lattice covers the quadrature carrier") {
  for (int N : {4, 8, 16}) {
    const int order = 2 * N + 4;
    const DenseGridSpec grid = certification_grid(1, N, order);
    const QuadratureRule rule = gauss_hermite_rule(order, 1);
    CHECK(grid.half_width >= rule.axis_nodes().back());
    const std::vector<double> axis = grid.axis_coords();
    CHECK(axis.back() >= rule.axis_nodes().back());
  }
}

TEST_CASE("random admissible fields satisfy every class constraint") {
  const double eps = 0.3;
  const AdmissibleField af = random_admissible(1, 2, eps, 8, 5);
  CHECK(af.field.coeff_of({0}) == 1.0);
  CHECK(af.field.coeff_of({1}) == 0.0);  // band below n stays empty
  CHECK(af.band == 2);
  CHECK(af.eps == eps);
  // The lattice range touches 1 +- eps exactly after the rescale.
  const double dev = std::max(af.bounds.sup_w - 1.0, 1.0 - af.bounds.inf_w);
  CHECK(dev == doctest::Approx(eps).epsilon(1e-12));
  CHECK(af.bounds.inf_w >= 1.0 - eps - 1e-12);
  CHECK(af.bounds.sup_w <= 1.0 + eps + 1e-12);
  CHECK(!af.recipe.empty());
}

TEST_CASE("random admissible draws are deterministic per seed") {
  const AdmissibleField a = random_admissible(1, 2, 0.3, 6, 42);
  const AdmissibleField b = random_admissible(1, 2, 0.3, 6, 42);
  const AdmissibleField c = random_admissible(1, 2, 0.3, 6, 43);
  CHECK(a.field.coefficients() == b.field.coefficients());
  CHECK(a.field.coefficients() != c.field.coefficients());
}

TEST_CASE("random admissible in two dimensions") {
  const AdmissibleField af = random_admissible(2, 2, 0.2, 4, 9);
  CHECK(af.field.dimension() == 2);
  for (int pos = 0; pos < af.field.size(); ++pos) {
    const int deg = af.field.basis().at(pos).total_degree();
    if (deg > 0 && deg < 2) CHECK(af.field.coeff(pos) == 0.0);
  }
  const double dev = std::max(af.bounds.sup_w - 1.0, 1.0 - af.bounds.inf_w);
  CHECK(dev == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("eps = 0 degenerates to the constant field") {
  const AdmissibleField af = random_admissible(1, 2, 0.0, 6, 1);
  CHECK(af.field.coefficients() == SpectralField::constant_one(1, 6).coefficients());
  CHECK(af.bounds.inf_w == 1.0);
  CHECK(af.bounds.sup_w == 1.0);
}

TEST_CASE("random admissible rejects bad arguments") {
  CHECK_THROWS_AS(random_admissible(1, 2, 1.0, 6, 1), usage_error);
  CHECK_THROWS_AS(random_admissible(1, 2, -0.1, 6, 1), usage_error);
  CHECK_THROWS_AS(random_admissible(1, 0, 0.3, 6, 1), usage_error);
  CHECK_THROWS_AS(random_admissible(77, 2, 0.3, 6, 1), usage_error);
  CHECK_THROWS_AS(random_admissible(1, 7, 0.3, 6, 1), usage_error);  // empty band range
}

TEST_CASE("bump test function: positive, unit mass, saturating band") {
  TestFunctionFamily family;
  family.k = MultiIndex({2});
  family.eps = 0.1;
  family.grid = DenseGridSpec::default_for(1, 2);
  const TestFunction tf = build_test_function(family);
  CHECK(tf.amplitude > 0.0);
  CHECK(tf.band == 2);
  double mass = 0.0, lo = 1e300;
  for (std::size_t i = 0; i < tf.w.values.size(); ++i) lo = std::min(lo, tf.w.values[i]);
  mass = integrate_mu(tf.w.values, tf.w.rule);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lo > 0.0);
  CHECK(!tf.recipe.empty());
  // Every inequality must hold on it.
  const FieldSample s = sample_test_function(tf);
  CHECK(check_improved_lsi(s, 2).pass);
  for (double p : {1.0, 1.5, 2.0}) {
    CHECK(check_beckner(s, 2, p).pass);
    CHECK(check_pversion(s, 2, p).pass);
    CHECK(check_ck(s, p).pass);
  }
}

TEST_CASE("Poincare check is exact by Parseval") {
  SpectralField f = SpectralField::constant_one(1, 6);
  f.set_coeff_of({3}, 0.1);
  f.set_coeff_of({5}, 0.02);
  const InequalityReport rep = check_poincare(f, 3);
  CHECK(rep.pass);
  CHECK(rep.slack >= 0.0);
  CHECK(rep.quad_order == 0);  // exact route
  // Single-band field: equality within roundoff.
  SpectralField g = SpectralField::constant_one(1, 4);
  g.set_coeff_of({4}, 0.2);
  const InequalityReport eq = check_poincare(g, 4);
  CHECK(eq.pass);
  CHECK(std::abs(eq.slack) < 1e-12);
  // Forbidden band occupied: usage error.
  SpectralField bad = SpectralField::constant_one(1, 4);
  bad.set_coeff_of({1}, 0.1);
  bad.set_coeff_of({4}, 0.1);
  CHECK_THROWS_AS(check_poincare(bad, 4), usage_error);
}

TEST_CASE("all quadrature inequalities pass on the random ensemble") {
  const QuadratureRule rule = gauss_hermite_rule(20, 1);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    for (int n : {2, 3}) {
      const AdmissibleField af = random_admissible(1, n, 0.3, 8, seed);
      const FieldSample s = sample_admissible(af, rule);
      CHECK(check_poincare(af.field, n).pass);
      const InequalityReport lsi = check_improved_lsi(s, n);
      CHECK(lsi.pass);
      CHECK(lsi.constant == doctest::Approx(H_p(af.bounds, 1.0) / n).epsilon(1e-12));
      for (double p : {1.0, 1.5, 2.0}) {
        CHECK(check_beckner(s, n, p).pass);
        CHECK(check_pversion(s, n, p).pass);
        CHECK(check_ck(s, p).pass);
      }
    }
  }
}

TEST_CASE("reports serialize to a JSON array with stable keys") {
  const AdmissibleField af = random_admissible(1, 2, 0.3, 6, 4);
  const QuadratureRule rule = gauss_hermite_rule(16, 1);
  const FieldSample s = sample_admissible(af, rule);
  std::vector<InequalityReport> reps = {check_poincare(af.field, 2), check_ck(s, 2.0)};
  const std::string text = reports_json(reps);
  const nlohmann::json j = nlohmann::json::parse(text);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  for (const auto& item : j) {
    CHECK(item.contains("id"));
    CHECK(item.contains("lhs"));
    CHECK(item.contains("rhs"));
    CHECK(item.contains("slack"));
    CHECK(item.contains("pass"));
    CHECK(item.at("pass").get<bool>());
  }
}

TEST_CASE("least squares line fit recovers an exact line") {
  const std::vector<double> x = {0.0, 1.0, 2.0, 3.0};
  const std::vector<double> y = {3.0, 1.0, -1.0, -3.0};
  const LineFit fit = fit_line(x, y);
  CHECK(fit.slope == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(fit.intercept == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(fit.residual_rms < 1e-14);
  CHECK(fit.count == 4);
  CHECK_THROWS_AS(fit_line(std::vector<double>{1.0}, std::vector<double>{1.0}), usage_error);
}

TEST_CASE("decay experiment on a single band matches the spectral rate") {
  AdmissibleField af = random_admissible(1, 2, 0.2, 2, 7);  // only c_2 alive
  const QuadratureRule rule = gauss_hermite_rule(8, 1);
  const DecayFit fit = decay_experiment(af, 2.0, TimeGrid{}, rule);
  // E_2 = c^2 e^{-2 n t}: the fit is exact up to quadrature roundoff.
  CHECK(fit.fitted_rate == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(fit.rate_spectral == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(fit.envelope_2lambda_ok);
  CHECK(fit.envelope_k_ok);
  CHECK(fit.envelope_hp_ok);
  CHECK(fit.residual_rms < 1e-9);
  CHECK(fit.samples_used > 2);
  CHECK(fit.entropy0 > 0.0);
}

TEST_CASE("decay envelopes hold for mixed-band data at every exponent") {
  const AdmissibleField af = random_admissible(1, 2, 0.3, 6, 11);
  const QuadratureRule rule = gauss_hermite_rule(16, 1);
  for (double p : {1.0, 1.5, 2.0}) {
    const DecayFit fit = decay_experiment(af, p, TimeGrid{}, rule);
    CHECK(fit.envelope_2lambda_ok);
    CHECK(fit.envelope_k_ok);
    CHECK(fit.envelope_hp_ok);
    // The fitted rate can only beat the guaranteed band rate bound from
    // below within fit noise.
    CHECK(fit.fitted_rate > 0.0);
  }
}

TEST_CASE("sharpness ladder approaches the Gaussian-measure constants") {
  const std::vector<double> amps = {0.2, 0.1, 0.05, 0.02, 0.01};
  const SharpnessScan scan = sharpness_scan(MultiIndex({2}), amps);
  REQUIRE(scan.rows.size() == amps.size());
  for (std::size_t i = 0; i < scan.rows.size(); ++i) {
    const SharpnessRow& row = scan.rows[i];
    CHECK(row.admissible);
    CHECK(row.quotient <= row.bound_const * (1.0 + 1e-9));  // the inequality itself
    CHECK(row.tightness > 0.0);
    CHECK(row.tightness <= 1.0 + 1e-9);
    if (i > 0) CHECK(row.tightness > scan.rows[i - 1].tightness);
  }
  CHECK(scan.rows.back().tightness >= 0.95);
  CHECK(std::abs(scan.rows.back().rate_proxy - 4.0) <= 0.2);
}

TEST_CASE("sharpness flags amplitudes that lose positivity") {
  const std::vector<double> amps = {1.0, 0.05};
  const SharpnessScan scan = sharpness_scan(MultiIndex({1}), amps);
  CHECK(!scan.rows[0].admissible);  // 1 + h_1 vanishes inside the lattice
  CHECK(scan.rows[1].admissible);
}

TEST_CASE("sharpness CSV schema") {
  const std::vector<double> amps = {0.1, 0.05};
  const SharpnessScan scan = sharpness_scan(MultiIndex({2}), amps);
  const std::string csv = sharpness_csv(scan);
  CHECK(csv.rfind("amplitude,admissible,E_1,fisher,quotient,H_1,bound_const,tightness,"
                  "rate_proxy,inf_w,sup_w\n",
                  0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
}

}  // TEST_SUITE
