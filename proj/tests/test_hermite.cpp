#include "doctest.h"

#include <cmath>
#include <vector>

#include <entroflow/hermite.hpp>
#include <entroflow/multi_index.hpp>

using namespace entroflow;

TEST_SUITE("hermite") {

// Closed forms of the first orthonormal polynomials.
static double h0(double) { return 1.0; }
static double h1(double y) { return y; }
static double h2(double y) { return (y * y - 1.0) / std::sqrt(2.0); }
static double h3(double y) { return (y * y * y - 3.0 * y) / std::sqrt(6.0); }
static double h4(double y) { return (y * y * y * y - 6.0 * y * y + 3.0) / std::sqrt(24.0); }

TEST_CASE("low-degree closed forms") {
  for (double y : {-2.0, -0.5, 0.0, 1.0, 2.5, 4.0}) {
    const std::vector<double> h = hermite_eval_all(4, y);
    CHECK(h[0] == doctest::Approx(h0(y)).epsilon(1e-14));
    CHECK(h[1] == doctest::Approx(h1(y)).epsilon(1e-14));
    CHECK(h[2] == doctest::Approx(h2(y)).epsilon(1e-14));
    CHECK(h[3] == doctest::Approx(h3(y)).epsilon(1e-14));
    CHECK(h[4] == doctest::Approx(h4(y)).epsilon(1e-14));
  }
  CHECK(hermite_eval_all(2, 0.0)[2] == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("evaluation table matches pointwise evaluation") {
  const std::vector<double> pts = {-3.0, -1.0, 0.0, 0.5, 2.0};
  const int N = 12;
  const std::vector<double> table = hermite_eval_table(N, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::vector<double> col = hermite_eval_all(N, pts[i]);
    for (int deg = 0; deg <= N; ++deg)
      CHECK(table[static_cast<std::size_t>(deg) * pts.size() + i] == col[static_cast<std::size_t>(deg)]);
  }
}

TEST_CASE("derivative coefficient is sqrt(n)") {
  CHECK(hermite_deriv_coeff(0) == 0.0);
  for (int n = 1; n <= 30; ++n)
    CHECK(hermite_deriv_coeff(n) == doctest::Approx(std::sqrt(double(n))).epsilon(1e-15));
}

TEST_CASE("Ornstein-Uhlenbeck eigenrelation h_n'' - y h_n' = -n h_n") {
  // With h_n' = sqrt(n) h_{n-1} this is an exact cancellation of the
  // three-term recurrence, so it must hold to roundoff.
  for (double y : {-2.7, -1.0, 0.3, 1.9, 3.4}) {
    const std::vector<double> h = hermite_eval_all(12, y);
    for (int n = 2; n <= 12; ++n) {
      const double d1 = hermite_deriv_coeff(n) * h[static_cast<std::size_t>(n - 1)];
      const double d2 = hermite_deriv_coeff(n) * hermite_deriv_coeff(n - 1) *
                        h[static_cast<std::size_t>(n - 2)];
      const double scale = std::abs(n * h[static_cast<std::size_t>(n)]) + 1.0;
      CHECK(std::abs(d2 - y * d1 + n * h[static_cast<std::size_t>(n)]) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("tensor evaluation is the product of axis factors") {
  MultiIndex k({2, 3});
  const double x[] = {0.7, -1.2};
  CHECK(tensor_eval(k, x) == doctest::Approx(h2(0.7) * h3(-1.2)).epsilon(1e-14));
  MultiIndex k3({1, 0, 4});
  const double y[] = {0.5, 9.0, -0.3};
  CHECK(tensor_eval(k3, y) == doctest::Approx(h1(0.5) * h4(-0.3)).epsilon(1e-14));
}

TEST_CASE("three-term recurrence stays finite and accurate at degree 64") {
  const std::vector<double> h = hermite_eval_all(64, 1.5);
  for (double v : h) CHECK(std::isfinite(v));
  // Cross-check degree 10 against an independent summation of the
  // monomial expansion evaluated in long double.
  long double y = 1.5L, acc = 0.0L;
  // He_10(y) = y^10 - 45 y^8 + 630 y^6 - 3150 y^4 + 4725 y^2 - 945
  acc = ((((y * y - 45.0L) * y * y + 630.0L) * y * y - 3150.0L) * y * y + 4725.0L) * y * y - 945.0L;
  long double norm = std::sqrt(3628800.0L);  // sqrt(10!)
  CHECK(h[10] == doctest::Approx(double(acc / norm)).epsilon(1e-13));
}

}  // TEST_SUITE
