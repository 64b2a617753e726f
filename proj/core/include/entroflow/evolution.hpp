#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "entroflow/field.hpp"
#include "entroflow/quadrature.hpp"

namespace entroflow {

// Ornstein-Uhlenbeck flow in spectral form and its change of variables
// to the free heat equation.  The OU semigroup acts diagonally on the
// tensor Hermite basis: a degree-|k| mode decays like e^{-|k| t}.

// c_k(t) = c_k(0) e^{-|k| t}; exact propagation, t >= 0.
SpectralField evolve_ou(const SpectralField& w0, double t);

// Stationary Gaussian v_inf(x) = (2 pi)^{-d/2} e^{-|x|^2/2}.
double stationary_gaussian(std::span<const double> x);

// Heat kernel G(t,x,y) = (4 pi t)^{-d/2} e^{-|x-y|^2/(4t)}, t > 0.
double heat_kernel(double t, std::span<const double> x, std::span<const double> y);

// Self-similar variables: u(t,x) = R^{-d} v(log R, x/R) with
// R(t) = sqrt(1+2t) maps the heat flow to the OU flow.
double scale_radius(double t);
// OU time reached at heat time t: log R = (1/2) log(1+2t).
double selfsimilar_time(double t);

// Uniform physical-space lattice [-L, L]^d with the same axis on every
// dimension; row-major tensor indexing, axis 0 slowest.
struct UniformLattice {
  int dimension = 1;
  double half_width = 10.0;
  int points_per_axis = 801;

  double spacing() const;
  std::vector<double> axis_coords() const;
  std::int64_t point_count() const;
  void point(std::int64_t index, std::span<double> out) const;
  // Trapezoid quadrature weight (spacing^d with halved boundary axes).
  double trapezoid_weight(std::int64_t index) const;
};

// Heat solution at time t >= 0 on a lattice, reconstructed from the
// spectral initial ratio w0: u(t,x) = R^{-d} (w v_inf)(log R, x/R).
std::vector<double> heat_from_selfsimilar(const SpectralField& w0, double t,
                                          const UniformLattice& lattice);

// Gaussian attractor u_inf(t,x) = G(t + 1/2, x, 0) on the lattice.
std::vector<double> gaussian_profile(double t, const UniformLattice& lattice);

// Trapezoid discretization of (G(t) * u0)(x) at each lattice point of
// `target`, with u0 sampled on `source`.  Oracle route for the heat
// flow, independent of the spectral representation.
std::vector<double> convolve_green(std::span<const double> u0, const UniformLattice& source,
                                   double t, const UniformLattice& target);

// ||u - u_inf(t)||_{L^p(R^d)} by lattice trapezoid rule, p >= 1.
double lp_distance_to_gaussian(std::span<const double> u, const UniformLattice& lattice,
                               double t, double p);

// --- entropy trajectories -------------------------------------------------

struct TrajectorySample {
  double t = 0.0;
  std::vector<double> entropy;  // one per requested exponent
  double fisher = 0.0;
  double l2_distance = 0.0;
  double inf_w = 0.0;
  double sup_w = 0.0;
  double h1 = 0.0;  // H_1 bounds functional at this time
};

struct Trajectory {
  std::vector<double> exponents;
  std::vector<TrajectorySample> samples;
};

// Exact OU evolution sampled on an equispaced time grid; entropies and
// production evaluated by quadrature, bounds on the dense lattice.
Trajectory sample_trajectory(const SpectralField& w0, std::span<const double> exponents,
                             double t0, double t1, int steps, const QuadratureRule& rule,
                             const DenseGridSpec& grid);

// CSV: t,E_<p>...,production,l2_dist,inf_w,sup_w,H_1 with LF endings.
std::string trajectory_csv(const Trajectory& trajectory);

}  // namespace entroflow
