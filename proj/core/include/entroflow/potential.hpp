#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "entroflow/inequality.hpp"

namespace entroflow {

// Generalized drift-diffusion generator N = -laplacian + grad V . grad
// for confining polynomial potentials, discretized in Schroedinger form
// on a Dirichlet box and diagonalized for evolution and decay checks.

struct PotentialSpec {
  int dimension = 1;  // 1 or 2
  // Univariate polynomial P (ascending coefficients); V(x) = sum_j P(x_j).
  std::vector<double> axis_poly;
  double half_width = 10.0;
  std::string name = "custom";
  double shift = 0.0;  // s0 with integral e^{-(V+s0)} dx = 1; set by discretize
};

// V = |x|^2/2 + (d/2) log(2 pi): the Gaussian case, eigenvalues 0,1,2,...
PotentialSpec harmonic_potential(int dimension);
// V = x^4/4 - x^2/2 on [-5,5]: two wells, strictly positive spectral gap.
PotentialSpec double_well_potential();
PotentialSpec polynomial_potential(int dimension, std::vector<double> axis_poly,
                                   double half_width);
// Preset lookup for the CLI: "harmonic" or "double-well".
PotentialSpec potential_by_name(const std::string& name, int dimension);

// V(x) + shift.
double potential_value(const PotentialSpec& pot, std::span<const double> x);

struct DiscretizedOperator {
  PotentialSpec pot;        // shift filled in
  int points_per_axis = 0;  // full grid including the Dirichlet boundary
  double h = 0.0;
  std::vector<double> interior_axis;
  // Schroedinger-form matrix -lap_h + W, W = |grad V|^2/4 - lap V/2,
  // on interior points.  d=1 keeps the tridiagonal bands, d=2 a dense
  // row-major symmetric matrix.
  std::vector<double> diag;
  std::vector<double> offdiag;
  std::vector<double> dense;
  std::vector<double> v_eff;  // V + shift at interior points, axis 0 slowest
  std::vector<double> mu;     // e^{-v_eff} h^d, sums to exactly 1
  // Points where mu >= 1e-12 * max(mu): the region where w-space values
  // are numerically meaningful.
  std::vector<unsigned char> effective;
  bool boundary_ok = true;  // e^{-V} at the box edge below 1e-14 * max

  std::int64_t interior_count() const {
    std::int64_t n = 1;
    for (int j = 0; j < pot.dimension; ++j)
      n *= static_cast<std::int64_t>(interior_axis.size());
    return n;
  }
};

// Centered second-order differences after the similarity transform
// g = e^{-V/2} w; Dirichlet walls.  Rejects non-confining potentials by
// a mass-ratio probe on a doubled box.
DiscretizedOperator discretize(PotentialSpec pot, int points_per_axis);

struct OperatorSpectrum {
  std::vector<double> eigenvalues;  // ascending, size m
  // Row-major m x interior_count, normalized so sum g_a g_b h^d = delta.
  std::vector<double> modes_g;
  std::vector<int> group_of;          // degeneracy group per eigenpair
  std::vector<double> group_values;   // representative eigenvalue per group
  std::vector<double> residuals;      // ||A g - lambda g||_2 per pair

  int size() const { return static_cast<int>(eigenvalues.size()); }
  std::span<const double> mode(int i, std::int64_t interior_count) const;
};

// Lowest m eigenpairs (LAPACK selected-range solvers).  Eigenvalues
// within group_tol of each other share a degeneracy group.
OperatorSpectrum spectrum(const DiscretizedOperator& op, int m, double group_tol = 1e-6);

// w-space eigenvector g e^{V/2}, zeroed outside the effective region
// where the reconstruction would be noise amplified by e^{V/2}.
std::vector<double> w_mode(const DiscretizedOperator& op, const OperatorSpectrum& sp, int i);

// Weighted inner product <a, b> = sum a b e^{-v_eff} h^d.
double weighted_dot(const DiscretizedOperator& op, std::span<const double> a,
                    std::span<const double> b);

// Entropy E_p of grid data against the discrete measure; positivity and
// unit mass enforced on the effective region.
double grid_entropy_p(const DiscretizedOperator& op, std::span<const double> w, double p);

// inf/sup of grid data over the effective region.
BoundsEstimate grid_bounds(const DiscretizedOperator& op, std::span<const double> w);

struct GeneralEvolution {
  std::vector<double> values;  // interior grid; stationary value outside effective
  double truncation_residual = 0.0;  // share of ||w0||^2 outside the first m modes
  bool truncated = false;            // residual above 1e-4
};

// Eigen-expansion propagation through the first m computed modes.
GeneralEvolution evolve_general(const DiscretizedOperator& op, const OperatorSpectrum& sp,
                                std::span<const double> w0, double t);

struct GeneralDecay {
  DecayFit fit;
  InequalityReport report;  // worst pointwise envelope slack
  double lambda_n = 0.0;
  double positivity_margin = 0.0;
  std::vector<double> projected_w0;
};

// Projects w0 orthogonal to eigenvalue groups 1..n-1, evolves, and
// checks E_p(t) <= E_p(0) e^{-lambda_n p t / H_p[w0]} pointwise.
GeneralDecay check_general_decay(const DiscretizedOperator& op, const OperatorSpectrum& sp,
                                 std::span<const double> w0, int n, double p,
                                 const TimeGrid& t_grid);

// CSV: index,eigenvalue,group with LF endings.
std::string spectrum_csv(const OperatorSpectrum& sp);

}  // namespace entroflow
