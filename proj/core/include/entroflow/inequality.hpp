#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "entroflow/field.hpp"
#include "entroflow/multi_index.hpp"
#include "entroflow/quadrature.hpp"

namespace entroflow {

// Admissibility for the improved inequalities: positive density ratio,
// unit mass, spectral support in bands |k| >= n only, uniform bounds
// within [1-eps, 1+eps] on the dense lattice.

inline constexpr double kPositivityTol = 1e-10;

struct AdmissibleField {
  SpectralField field;
  int band = 1;         // n: lowest band allowed to carry coefficients
  double eps = 0.0;     // uniform deviation bound on the dense lattice
  std::uint64_t seed = 0;
  std::string recipe;   // construction provenance for reports
  BoundsEstimate bounds;
};

struct ProjectionResult {
  SpectralField field;
  BoundsEstimate bounds;
  bool admissible = false;  // lattice minimum >= positivity tolerance
  double margin = 0.0;      // lattice minimum minus tolerance
};

// Zeroes every coefficient with 0 < |k| < n, resets c_0 = 1, and
// re-checks positivity on the dense lattice.
ProjectionResult project_orthogonal(const SpectralField& w, int n, const DenseGridSpec& grid);

// Same, but throws non_admissible_error when positivity fails.
SpectralField require_admissible_projection(const SpectralField& w, int n,
                                            const DenseGridSpec& grid);

// Lattice wide enough to certify bounds wherever an order-`quad_order`
// Gauss-Hermite rule places nodes; entropy preconditions demand
// positivity at every node, so admissibility is certified there too.
DenseGridSpec certification_grid(int dimension, int max_degree, int quad_order);

// Random member of the admissible class: w = 1 + sum_{n <= |k| <= N}
// c_k H_k with a seeded uniform draw, globally rescaled so the dense-
// lattice range lies inside [1-eps, 1+eps].  Deterministic per seed.
// The overload without a grid certifies on the order-(2N+4) carrier,
// matching the default quadrature for nonlinear functionals.
AdmissibleField random_admissible(int dimension, int n, double eps, int max_degree,
                                  std::uint64_t seed, const DenseGridSpec& grid);
AdmissibleField random_admissible(int dimension, int n, double eps, int max_degree,
                                  std::uint64_t seed);

// --- near-optimal bump family ---------------------------------------------

// Smooth radial cutoff: 1 on [0,1], 0 on [2,inf),
// exp(1 - 1/(1 - (r-1)^2)) in between.
double bump_chi(double r);
double bump_chi_prime(double r);

struct TestFunctionFamily {
  MultiIndex k;         // |k| = n, the band the construction saturates
  double eps = 0.1;     // bump width parameter: support radius 2 eps^{-1/(2n)}
  int quad_order = 0;   // points per axis; 0 -> default for the degree
  DenseGridSpec grid;   // positivity/bounds lattice
};

// w = a H_k(x) chi(|x| eps^{1/(2n)}) + C with C fixed by unit
// quadrature mass and a the largest amplitude in {1, 1/2, 1/4, ...}
// keeping the lattice minimum >= the positivity tolerance.
struct TestFunction {
  GridField w;                   // sampled on the family quadrature rule
  std::vector<GridField> grad;   // analytic gradient on the same rule
  double amplitude = 0.0;
  double shift = 0.0;            // the mass-fixing constant C
  BoundsEstimate bounds;
  MultiIndex k;
  int band = 1;
  double eps = 0.0;
  std::string recipe;
};

TestFunction build_test_function(const TestFunctionFamily& family);

// --- inequality checkers ---------------------------------------------------

// Grid-side bundle every quadrature-based checker consumes.
struct FieldSample {
  GridField w;
  std::vector<GridField> grad;
  BoundsEstimate bounds;
  std::string recipe;
  std::uint64_t seed = 0;
};

FieldSample sample_admissible(const AdmissibleField& field, const QuadratureRule& rule);
FieldSample sample_test_function(TestFunction function);

struct InequalityReport {
  std::string id;
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 0.0;  // the multiplicative constant inside rhs
  double slack = 0.0;     // rhs - lhs
  bool pass = false;      // slack >= -1e-9 * max(1, rhs)
  std::string recipe;
  std::uint64_t seed = 0;
  int quad_order = 0;     // 0 when the check is exact (Parseval)
};

// sum_{k!=0} c_k^2 <= (1/n) sum |k| c_k^2, exact by Parseval.  Usage
// error if a band 0 < |k| < n carries a coefficient above 1e-10.
InequalityReport check_poincare(const SpectralField& w, int n);

// E_1[w] <= (H_1[w]/n) * fisher_info[w].
InequalityReport check_improved_lsi(const FieldSample& s, int n);

// E_p[w] <= B_np * integral |grad w^{p/2}|^2 dmu.
InequalityReport check_beckner(const FieldSample& s, int n, double p);

// E_p[w] <= (4/p^2) (H_p[w]/n) * integral |grad w^{p/2}|^2 dmu.
InequalityReport check_pversion(const FieldSample& s, int n, double p);

// ||w - 1||_{L^p(mu)} <= A_p(E_p[w]).
InequalityReport check_ck(const FieldSample& s, double p);

// JSON array of reports, stable key order, 17-digit floats.
std::string reports_json(std::span<const InequalityReport> reports);

// --- decay fitting ----------------------------------------------------------

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
  int count = 0;
};

// Ordinary least squares y ~ intercept + slope * x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

struct TimeGrid {
  double t0 = 0.0;
  double t1 = 2.0;
  int steps = 21;
};

struct FitWindow {
  double t0 = 0.1;
  double t1 = 1.0;
};

struct DecayFit {
  double window_t0 = 0.0, window_t1 = 0.0;
  double fitted_rate = 0.0;   // decay rate: E ~ e^{-rate t}
  double intercept = 0.0;     // log E at t = 0 from the fit
  double residual_rms = 0.0;
  int samples_used = 0;
  double entropy0 = 0.0;
  // Predicted rates; NaN where the constant is undefined for this p.
  double rate_2lambda = 0.0;
  double rate_4_over_pK = 0.0;
  double rate_np_over_Hp = 0.0;
  double rate_spectral = 0.0;  // 2n, the ||.||_2^2 band rate
  // Pointwise envelope checks E_p(t) <= E_p(0) e^{-rate t}.
  bool envelope_2lambda_ok = false;
  bool envelope_k_ok = false;   // vacuously true when the rate is NaN
  bool envelope_hp_ok = false;
  bool window_shrunk = false;   // entropy hit the 1e-12 floor inside the grid
};

// Evolves field0 exactly, fits the log-entropy slope over the window,
// and checks every predicted envelope pointwise on the full grid.
DecayFit decay_experiment(const AdmissibleField& field0, double p, const TimeGrid& t_grid,
                          const QuadratureRule& rule, const FitWindow& window = {});

// --- sharpness scan ----------------------------------------------------------

struct SharpnessRow {
  double amplitude = 0.0;
  bool admissible = false;  // positivity on the scan lattice
  double entropy1 = 0.0;
  double fisher = 0.0;
  double quotient = 0.0;      // E_1 / fisher
  double h1_functional = 0.0; // H_1[w]
  double bound_const = 0.0;   // H_1 / n
  double tightness = 0.0;     // quotient * n / H_1
  double rate_proxy = 0.0;    // n / H_1, approaches 2n as a -> 0
  double inf_w = 0.0;
  double sup_w = 0.0;
};

struct SharpnessScan {
  MultiIndex k;
  int band = 1;
  int quad_order = 0;
  double lattice_half_width = 0.0;
  std::vector<SharpnessRow> rows;
};

// Probes w = 1 + a H_k along a decreasing amplitude ladder.  Bounds are
// measured on the oscillation-region lattice of half-width
// sqrt(2|k|+4): the carrier where mass actually sits, so the scan can
// exhibit the sharp constant instead of polynomial-tail artifacts.
SharpnessScan sharpness_scan(const MultiIndex& k, std::span<const double> amplitudes,
                             int quad_order = 0);

std::string sharpness_csv(const SharpnessScan& scan);

}  // namespace entroflow
