#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include <entroflow/entropy.hpp>
#include <entroflow/errors.hpp>
#include <entroflow/evolution.hpp>
#include <entroflow/field.hpp>
#include <entroflow/hermite.hpp>
#include <entroflow/inequality.hpp>
#include <entroflow/potential.hpp>

using namespace entroflow;

namespace {

// Grid samples of 1 + a h_deg on the interior axis of a 1-d operator.
std::vector<double> one_plus_grid_mode(const DiscretizedOperator& op, int deg, double a) {
  std::vector<double> w(static_cast<std::size_t>(op.interior_count()));
  for (std::size_t i = 0; i < w.size(); ++i)
    w[i] = 1.0 + a * hermite_eval_all(deg, op.interior_axis[i])[static_cast<std::size_t>(deg)];
  return w;
}

}  // namespace

TEST_SUITE("potential") {

TEST_CASE("harmonic presets and lookup") {
  const PotentialSpec h1 = harmonic_potential(1);
  CHECK(h1.dimension == 1);
  CHECK(h1.half_width == 10.0);
  const PotentialSpec dw = potential_by_name("double-well", 1);
  CHECK(dw.name == "double-well");
  CHECK(potential_by_name("double_well", 1).name == "double-well");
  CHECK(potential_by_name("harmonic", 2).dimension == 2);
  CHECK_THROWS_AS(potential_by_name("unknown", 1), usage_error);
}

TEST_CASE("harmonic spectrum is 0,1,2,... within 1e-3") {
  const DiscretizedOperator op = discretize(harmonic_potential(1), 2001);
  CHECK(op.boundary_ok);
  const OperatorSpectrum sp = spectrum(op, 6);
  REQUIRE(sp.size() == 6);
  for (int k = 0; k < 6; ++k)
    CHECK(std::abs(sp.eigenvalues[static_cast<std::size_t>(k)] - double(k)) < 1e-3);
  // All gaps ~1: every eigenvalue gets its own degeneracy group.
  CHECK(sp.group_values.size() == 6);
  for (double r : sp.residuals) CHECK(r < 1e-6);
}

TEST_CASE("discrete measure sums to exactly one") {
  const DiscretizedOperator op = discretize(harmonic_potential(1), 801);
  double mass = 0.0;
  for (double m : op.mu) mass += m;
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("two-dimensional harmonic degeneracy groups 1,2,3") {
  const DiscretizedOperator op = discretize(harmonic_potential(2), 52);
  const OperatorSpectrum sp = spectrum(op, 6, 0.05);
  REQUIRE(sp.size() == 6);
  // Eigenvalues 0, 1, 1, 2, 2, 2 with O(h^2) splitting.
  const double expected[] = {0.0, 1.0, 1.0, 2.0, 2.0, 2.0};
  for (int k = 0; k < 6; ++k)
    CHECK(std::abs(sp.eigenvalues[static_cast<std::size_t>(k)] - expected[k]) < 0.05);
  const std::vector<int> groups(sp.group_of.begin(), sp.group_of.end());
  CHECK(groups == std::vector<int>{0, 1, 1, 2, 2, 2});
  CHECK(sp.group_values.size() == 3);
}

TEST_CASE("double-well gap against a fine-grid frozen value") {
  const DiscretizedOperator op = discretize(double_well_potential(), 2001);
  const OperatorSpectrum sp = spectrum(op, 3);
  CHECK(std::abs(sp.eigenvalues[0]) < 1e-4);
  CHECK(sp.eigenvalues[1] == doctest::Approx(0.79207615).epsilon(2e-5));
  CHECK(sp.eigenvalues[2] == doctest::Approx(3.54885).epsilon(1e-4));
}

TEST_CASE("eigenvalue convergence is second order in the mesh") {
  const double ref = spectrum(discretize(double_well_potential(), 4001), 2).eigenvalues[1];
  const double c = spectrum(discretize(double_well_potential(), 501), 2).eigenvalues[1];
  const double f = spectrum(discretize(double_well_potential(), 1001), 2).eigenvalues[1];
  const double ec = std::abs(c - ref), ef = std::abs(f - ref);
  CHECK(ef < ec / 3.0);  // halving h divides the error by ~4
}

TEST_CASE("eigenvectors are orthonormal in the box inner product") {
  const DiscretizedOperator op = discretize(harmonic_potential(1), 1201);
  const OperatorSpectrum sp = spectrum(op, 5);
  const auto count = op.interior_count();
  for (int a = 0; a < 5; ++a)
    for (int b = a; b < 5; ++b) {
      const std::span<const double> ga = sp.mode(a, count);
      const std::span<const double> gb = sp.mode(b, count);
      double dot = 0.0;
      for (std::int64_t i = 0; i < count; ++i)
        dot += ga[static_cast<std::size_t>(i)] * gb[static_cast<std::size_t>(i)];
      dot *= op.h;
      CHECK(std::abs(dot - (a == b ? 1.0 : 0.0)) < 1e-8);
    }
}

TEST_CASE("ground state in w space is the constant 1") {
  const DiscretizedOperator op = discretize(harmonic_potential(1), 1201);
  const OperatorSpectrum sp = spectrum(op, 1);
  const std::vector<double> w0 = w_mode(op, sp, 0);
  double lo = 1e300, hi = -1e300;
  for (std::size_t i = 0; i < w0.size(); ++i) {
    if (!op.effective[i]) continue;
    lo = std::min(lo, std::abs(w0[i]));
    hi = std::max(hi, std::abs(w0[i]));
  }
  CHECK(lo > 1.0 - 5e-3);
  CHECK(hi < 1.0 + 5e-3);
}

TEST_CASE("general evolution reproduces the spectral Ornstein-Uhlenbeck flow") {
  const DiscretizedOperator op = discretize(harmonic_potential(1), 2001);
  const OperatorSpectrum sp = spectrum(op, 10);
  const std::vector<double> w0 = one_plus_grid_mode(op, 2, 0.1);
  SpectralField f = SpectralField::constant_one(1, 2);
  f.set_coeff_of({2}, 0.1);
  for (double t : {0.25, 0.5, 1.0}) {
    const GeneralEvolution ev = evolve_general(op, sp, w0, t);
    CHECK(!ev.truncated);
    const SpectralField ft = evolve_ou(f, t);
    // Compare on the bulk |x| <= 6: toward the effective-region edge the
    // w-space reconstruction amplifies the O(h^2) eigenmode error by e^{V/2}.
    double sup = 0.0;
    for (std::size_t i = 0; i < ev.values.size(); ++i) {
      if (!op.effective[i] || std::abs(op.interior_axis[i]) > 6.0) continue;
      const double x[] = {op.interior_axis[i]};
      sup = std::max(sup, std::abs(ev.values[i] - evaluate_point(ft, x)));
    }
    CHECK(sup < 2e-4);
  }
}

TEST_CASE("general evolution conserves mass") {
  const DiscretizedOperator op = discretize(harmonic_potential(1), 1201);
  const OperatorSpectrum sp = spectrum(op, 8);
  const std::vector<double> w0 = one_plus_grid_mode(op, 3, 0.05);
  for (double t : {0.0, 0.5, 2.0}) {
    const GeneralEvolution ev = evolve_general(op, sp, w0, t);
    double mass = 0.0;
    for (std::size_t i = 0; i < ev.values.size(); ++i) mass += ev.values[i] * op.mu[i];
    CHECK(std::abs(mass - 1.0) < 1e-5);
  }
}

TEST_CASE("grid entropy matches the quadratic closed form") {
  const DiscretizedOperator op = discretize(harmonic_potential(1), 2001);
  const std::vector<double> w = one_plus_grid_mode(op, 2, 0.1);
  // E_2 = ||w - 1||^2 = a^2 for an orthonormal mode.
  CHECK(grid_entropy_p(op, w, 2.0) == doctest::Approx(0.01).epsilon(1e-3));
}

TEST_CASE("harmonic decay of ||w - 1||_2 proceeds at the mode eigenvalue") {
  const DiscretizedOperator op = discretize(harmonic_potential(1), 1601);
  const OperatorSpectrum sp = spectrum(op, 8);
  const std::vector<double> w0 = one_plus_grid_mode(op, 2, 0.1);
  std::vector<double> ts, logs;
  for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    GeneralEvolution ev = evolve_general(op, sp, w0, t);
    // Truncated reconstruction drifts in mass by O(h^2).
    double mass = 0.0;
    for (std::size_t i = 0; i < ev.values.size(); ++i) mass += ev.values[i] * op.mu[i];
    for (double& v : ev.values) v /= mass;
    ts.push_back(t);
    logs.push_back(0.5 * std::log(grid_entropy_p(op, ev.values, 2.0)));
  }
  const LineFit fit = fit_line(ts, logs);
  CHECK(-fit.slope == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("general decay check: harmonic band 3") {
  const DiscretizedOperator op = discretize(harmonic_potential(1), 1601);
  const OperatorSpectrum sp = spectrum(op, 10);
  // h_3 reaches ~156 at the effective-region edge; 0.005 keeps w0 > 0.
  const std::vector<double> w0 = one_plus_grid_mode(op, 3, 0.005);
  const GeneralDecay gd = check_general_decay(op, sp, w0, 3, 1.0, TimeGrid{0.0, 1.5, 16});
  CHECK(gd.lambda_n == doctest::Approx(3.0).epsilon(1e-3));
  CHECK(gd.positivity_margin > 0.0);
  CHECK(gd.fit.envelope_hp_ok);
  CHECK(gd.report.pass);
  CHECK(gd.report.id == "general_decay");
  // Single surviving band: the fit equals twice the eigenvalue.
  CHECK(gd.fit.fitted_rate == doctest::Approx(6.0).epsilon(0.01));
}

TEST_CASE("non-confining potentials are rejected") {
  CHECK_THROWS_AS(discretize(polynomial_potential(1, {0.0, 0.0, -1.0}, 5.0), 301),
                  domain_error);
  CHECK_THROWS_AS(discretize(polynomial_potential(1, {0.0, 0.0, 0.0, 1.0}, 5.0), 301),
                  domain_error);
}

TEST_CASE("discretization contract violations") {
  CHECK_THROWS_AS(discretize(harmonic_potential(1), 8), usage_error);
  CHECK_THROWS_AS(discretize(harmonic_potential(2), 53), usage_error);
  PotentialSpec bad = harmonic_potential(1);
  bad.dimension = 3;
  CHECK_THROWS_AS(discretize(bad, 101), usage_error);
}

TEST_CASE("spectrum CSV schema") {
  const DiscretizedOperator op = discretize(harmonic_potential(1), 401);
  const OperatorSpectrum sp = spectrum(op, 4);
  const std::string csv = spectrum_csv(sp);
  CHECK(csv.rfind("index,eigenvalue,group\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
  CHECK(csv.find('\r') == std::string::npos);
}

}  // TEST_SUITE
