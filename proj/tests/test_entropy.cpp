#include "doctest.h"

#include <cmath>
#include <vector>

#include <entroflow/entropy.hpp>
#include <entroflow/errors.hpp>
#include <entroflow/field.hpp>
#include <entroflow/quadrature.hpp>

using namespace entroflow;

namespace {

SpectralField one_plus_mode(int degree, double amplitude) {
  SpectralField f = SpectralField::constant_one(1, degree);
  f.set_coeff_of({degree}, amplitude);
  return f;
}

}  // namespace

TEST_SUITE("entropy") {

TEST_CASE("h_p closed-form anchors") {
  for (double p : {1.0, 1.3, 1.5, 1.8, 2.0}) {
    CHECK(h_p(0.0, p) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(h_p(1.0, p) == doctest::Approx(p / 2.0).epsilon(1e-13));
  }
  // h_1(s) = [s log s - (s-1)] / (s-1)^2.
  CHECK(h_p(2.0, 1.0) == doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-13));
  CHECK(h_p(0.5, 1.0) ==
        doctest::Approx((0.5 * std::log(0.5) + 0.5) / 0.25).epsilon(1e-13));
  // p = 2 collapses to the constant 1.
  for (double s : {0.0, 0.2, 0.9999, 1.0, 1.3, 7.0})
    CHECK(h_p(s, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("h_p near s = 1 matches an independent Taylor expansion") {
  // Both the Taylor branch (|s-1| < 1e-4) and the cancellation-prone
  // direct formula just outside it must agree with
  // p/2 + p(p-2)e/6 + p(p-2)(p-3)e^2/24.
  for (double p : {1.0, 1.4, 1.9}) {
    for (double e : {9.9e-5, -9.9e-5, 1.01e-4, -1.01e-4}) {
      const double taylor =
          p / 2.0 + p * (p - 2.0) * e / 6.0 + p * (p - 2.0) * (p - 3.0) * e * e / 24.0;
      CHECK(std::abs(h_p(1.0 + e, p) - taylor) < 5e-8);
    }
  }
}

TEST_CASE("H_p bounds functional") {
  // H_2 = 1 regardless of the bounds.
  CHECK(H_p(0.3, 5.0, 2.0) == doctest::Approx(1.0).epsilon(1e-13));
  // At w = 1: H_1 = h_1(1) = 1/2, the global minimum.
  CHECK(H_p(1.0, 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(H_p(0.7, 1.3, 1.0) == doctest::Approx(1.3 * h_p(0.7, 1.0)).epsilon(1e-13));
  CHECK(H_p(0.7, 1.3, 1.0) > 0.5);
  CHECK(H_p(0.9, 1.1, 1.5) ==
        doctest::Approx(std::pow(1.1, 0.5) * h_p(0.9, 1.5)).epsilon(1e-13));
}

TEST_CASE("Csiszar-Kullback envelope A_p") {
  for (double s : {1e-6, 0.01, 0.5, 2.0})
    CHECK(A_p(s, 2.0) == doctest::Approx(std::sqrt(s)).epsilon(1e-14));
  CHECK(A_p(0.25, 1.0) == doctest::Approx(2.0 * 0.5).epsilon(1e-13));
  // General formula spot value, p = 1.5, s = 0.4.
  const double expected =
      std::pow(2.0, 1.0 / 1.5) / std::sqrt(1.5) * std::pow(1.2, 0.25) * std::sqrt(0.4);
  CHECK(A_p(0.4, 1.5) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("Beckner constants and interpolation") {
  for (double p : {1.0, 1.1, 1.5, 1.9, 2.0})
    CHECK(B_np(1, p) == doctest::Approx(2.0 / p).epsilon(1e-13));
  CHECK(B_np(2, 2.0) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(B_np(3, 2.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(B_np(2, 1.5) == doctest::Approx(8.0 / 9.0).epsilon(1e-13));
  CHECK(B_np(2, 1.0) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(B_np(3, 1.0) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(beckner_interp(2.0, 1.0, 1.5) == doctest::Approx(B_np(1, 1.5)).epsilon(1e-13));
}

TEST_CASE("decay rate lambda(n,p)") {
  for (double p : {1.0, 1.2, 1.7, 2.0})
    CHECK(lambda_np(1, p) == doctest::Approx(1.0).epsilon(1e-12));
  for (int n = 1; n <= 10; ++n)
    CHECK(lambda_np(n, 2.0) == doctest::Approx(double(n)).epsilon(1e-12));
  CHECK(lambda_np(2, 1.5) == doctest::Approx(1.5).epsilon(1e-13));
  CHECK(lambda_np(3, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  // Monotone in n for fixed p > 1.
  for (int n = 1; n < 6; ++n) CHECK(lambda_np(n + 1, 1.5) > lambda_np(n, 1.5));
}

TEST_CASE("coupling constant K[n,p,w]") {
  CHECK(K_np(1, 1.5, 0.5) == doctest::Approx(4.0 / 3.0).epsilon(1e-13));
  CHECK(K_np(2, 1.5, 0.5) == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  CHECK_THROWS_AS(K_np(2, 1.0, 0.5), usage_error);
  CHECK_THROWS_AS(K_np(2, 2.0, 0.5), usage_error);
}

TEST_CASE("quadratic entropy is the squared L2 distance to one") {
  const SpectralField f = one_plus_mode(2, 0.15);
  const QuadratureRule rule = gauss_hermite_rule(8, 1);
  const GridField grid = synthesize(f, rule);
  const double d = l2_distance_to_one(f);
  CHECK(entropy_p(grid, 2.0) == doctest::Approx(d * d).epsilon(1e-10));
}

TEST_CASE("log entropy of a small perturbation is ~ amplitude^2 / 2") {
  const SpectralField f = one_plus_mode(2, 0.1);
  const QuadratureRule rule = gauss_hermite_rule(8, 1);
  CHECK(std::abs(entropy_p(f, 1.0, rule) - 0.005) < 5e-4);
}

TEST_CASE("Fisher information of 1 + 0.1 h_1 is ~ 0.01") {
  const SpectralField f = one_plus_mode(1, 0.1);
  const QuadratureRule rule = gauss_hermite_rule(8, 1);
  CHECK(std::abs(fisher_info(f, rule) - 0.01) < 5e-4);
}

TEST_CASE("entropy production identities") {
  const SpectralField f = one_plus_mode(2, 0.1);
  const QuadratureRule rule = gauss_hermite_rule(10, 1);
  // p = 2: production is twice the gradient energy.
  CHECK(production_p(f, 2.0, rule) ==
        doctest::Approx(2.0 * gradient_sq_norm(f)).epsilon(1e-8));
  // p = 1: production is the Fisher information.
  CHECK(production_p(f, 1.0, rule) == doctest::Approx(fisher_info(f, rule)).epsilon(1e-10));
  // Chain rule: p integral w^{p-2}|grad w|^2 = (4/p) integral |grad w^{p/2}|^2.
  const double p = 1.5;
  const GridField w = synthesize(f, rule);
  const std::vector<GridField> grad = synthesize_gradient(f, rule);
  std::vector<double> integrand(w.values.size(), 0.0);
  for (std::size_t i = 0; i < integrand.size(); ++i) {
    const double gp = 0.5 * p * std::pow(w.values[i], 0.5 * p - 1.0) * grad[0].values[i];
    integrand[i] = (4.0 / p) * gp * gp;
  }
  CHECK(production_p(f, p, rule) == doctest::Approx(integrate_mu(integrand, rule)).epsilon(1e-12));
}

TEST_CASE("entropy is nonnegative and matches the p-norm identity") {
  // Amplitude small enough that w > 0 at the outermost order-12 nodes.
  const SpectralField f = one_plus_mode(3, 0.01);
  const QuadratureRule rule = gauss_hermite_rule(12, 1);
  for (double p : {1.0, 1.25, 1.5, 1.75, 2.0}) {
    const double e = entropy_p(f, p, rule);
    CHECK(e >= -1e-10);  // Jensen
    if (p > 1.0) {
      const double norm = lp_norm_mu(f, p, rule);
      CHECK(1.0 + (p - 1.0) * e == doctest::Approx(std::pow(norm, p)).epsilon(1e-10));
    }
  }
}

TEST_CASE("entropy preconditions: mass and positivity") {
  const QuadratureRule rule = gauss_hermite_rule(6, 1);
  GridField grid = synthesize(SpectralField::constant_one(1, 2), rule);
  for (double& v : grid.values) v *= 2.0;  // mass 2
  CHECK_THROWS_AS(entropy_p(grid, 1.5), domain_error);
  GridField neg = synthesize(one_plus_mode(1, 2.0), rule);  // 1 + 2y < 0 at y < -1/2
  CHECK_THROWS_AS(entropy_p(neg, 1.0), domain_error);
  CHECK_THROWS_AS(entropy_p(synthesize(SpectralField::constant_one(1, 2), rule), 2.5),
                  usage_error);
}

}  // TEST_SUITE
