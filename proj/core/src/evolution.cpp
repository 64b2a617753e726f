#include "entroflow/evolution.hpp"

#include <cmath>
#include <numbers>

#include "entroflow/entropy.hpp"
#include "entroflow/errors.hpp"
#include "entroflow/text_io.hpp"

namespace entroflow {

SpectralField evolve_ou(const SpectralField& w0, double t) {
  if (!(t >= 0.0)) throw usage_error("evolution time must be >= 0");
  SpectralField out = w0;
  for (int pos = 0; pos < out.size(); ++pos)
    out.set_coeff(pos, out.coeff(pos) * std::exp(-out.basis().at(pos).total_degree() * t));
  return out;
}

double stationary_gaussian(std::span<const double> x) {
  double q = 0.0;
  for (double xi : x) q += xi * xi;
  const double d = static_cast<double>(x.size());
  return std::pow(2.0 * std::numbers::pi, -d / 2.0) * std::exp(-q / 2.0);
}

double heat_kernel(double t, std::span<const double> x, std::span<const double> y) {
  if (!(t > 0.0)) throw usage_error("heat kernel needs t > 0");
  if (x.size() != y.size()) throw usage_error("heat kernel point dimension mismatch");
  double q = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) q += (x[j] - y[j]) * (x[j] - y[j]);
  const double d = static_cast<double>(x.size());
  return std::pow(4.0 * std::numbers::pi * t, -d / 2.0) * std::exp(-q / (4.0 * t));
}

double scale_radius(double t) {
  if (!(t >= 0.0)) throw usage_error("heat time must be >= 0");
  return std::sqrt(1.0 + 2.0 * t);
}

double selfsimilar_time(double t) {
  if (!(t >= 0.0)) throw usage_error("heat time must be >= 0");
  return 0.5 * std::log1p(2.0 * t);
}

double UniformLattice::spacing() const {
  if (points_per_axis < 2) throw usage_error("lattice needs >= 2 points per axis");
  return 2.0 * half_width / (points_per_axis - 1);
}

std::vector<double> UniformLattice::axis_coords() const {
  if (dimension < 1 || dimension > 3) throw usage_error("lattice dimension must be 1..3");
  if (!(half_width > 0.0)) throw usage_error("lattice half-width must be positive");
  const double h = spacing();
  std::vector<double> coords(static_cast<std::size_t>(points_per_axis));
  for (int i = 0; i < points_per_axis; ++i)
    coords[static_cast<std::size_t>(i)] = -half_width + h * i;
  return coords;
}

std::int64_t UniformLattice::point_count() const {
  std::int64_t n = 1;
  for (int j = 0; j < dimension; ++j) n *= points_per_axis;
  return n;
}

void UniformLattice::point(std::int64_t index, std::span<double> out) const {
  if (index < 0 || index >= point_count()) throw usage_error("lattice index out of range");
  if (static_cast<int>(out.size()) != dimension) throw usage_error("point buffer size mismatch");
  const double h = spacing();
  for (int j = dimension - 1; j >= 0; --j) {
    const auto i = index % points_per_axis;
    out[static_cast<std::size_t>(j)] = -half_width + h * static_cast<double>(i);
    index /= points_per_axis;
  }
}

double UniformLattice::trapezoid_weight(std::int64_t index) const {
  const double h = spacing();
  double w = 1.0;
  for (int j = 0; j < dimension; ++j) {
    const auto i = index % points_per_axis;
    w *= (i == 0 || i == points_per_axis - 1) ? h / 2.0 : h;
    index /= points_per_axis;
  }
  return w;
}

std::vector<double> heat_from_selfsimilar(const SpectralField& w0, double t,
                                          const UniformLattice& lattice) {
  if (lattice.dimension != w0.dimension()) throw usage_error("lattice dimension mismatch");
  const double R = scale_radius(t);
  const SpectralField w = evolve_ou(w0, selfsimilar_time(t));

  std::vector<double> scaled = lattice.axis_coords();
  for (double& c : scaled) c /= R;
  std::vector<double> values = evaluate_lattice(w, scaled);

  const int d = lattice.dimension;
  const double rd = std::pow(R, -static_cast<double>(d));
  std::vector<double> y(static_cast<std::size_t>(d));
  const auto m = static_cast<std::int64_t>(scaled.size());
  for (std::int64_t idx = 0; idx < lattice.point_count(); ++idx) {
    std::int64_t rest = idx;
    for (int j = d - 1; j >= 0; --j) {
      y[static_cast<std::size_t>(j)] = scaled[static_cast<std::size_t>(rest % m)];
      rest /= m;
    }
    values[static_cast<std::size_t>(idx)] *= rd * stationary_gaussian(y);
  }
  return values;
}

std::vector<double> gaussian_profile(double t, const UniformLattice& lattice) {
  const double R = scale_radius(t);
  const int d = lattice.dimension;
  const double rd = std::pow(R, -static_cast<double>(d));
  std::vector<double> values(static_cast<std::size_t>(lattice.point_count()));
  std::vector<double> x(static_cast<std::size_t>(d));
  for (std::int64_t idx = 0; idx < lattice.point_count(); ++idx) {
    lattice.point(idx, x);
    for (double& xi : x) xi /= R;
    values[static_cast<std::size_t>(idx)] = rd * stationary_gaussian(x);
  }
  return values;
}

std::vector<double> convolve_green(std::span<const double> u0, const UniformLattice& source,
                                   double t, const UniformLattice& target) {
  if (static_cast<std::int64_t>(u0.size()) != source.point_count())
    throw usage_error("initial data does not match source lattice");
  if (target.dimension != source.dimension) throw usage_error("lattice dimension mismatch");
  if (!(t > 0.0)) throw usage_error("convolution needs t > 0");

  const int d = source.dimension;
  std::vector<double> out(static_cast<std::size_t>(target.point_count()), 0.0);
  std::vector<double> x(static_cast<std::size_t>(d));
  std::vector<double> y(static_cast<std::size_t>(d));
  for (std::int64_t ti = 0; ti < target.point_count(); ++ti) {
    target.point(ti, x);
    double sum = 0.0;
    for (std::int64_t si = 0; si < source.point_count(); ++si) {
      source.point(si, y);
      sum += source.trapezoid_weight(si) * heat_kernel(t, x, y) *
             u0[static_cast<std::size_t>(si)];
    }
    out[static_cast<std::size_t>(ti)] = sum;
  }
  return out;
}

double lp_distance_to_gaussian(std::span<const double> u, const UniformLattice& lattice,
                               double t, double p) {
  if (!(p >= 1.0)) throw usage_error("lp distance needs p >= 1");
  if (static_cast<std::int64_t>(u.size()) != lattice.point_count())
    throw usage_error("values do not match lattice");
  const std::vector<double> ref = gaussian_profile(t, lattice);
  double sum = 0.0;
  for (std::int64_t idx = 0; idx < lattice.point_count(); ++idx) {
    const auto i = static_cast<std::size_t>(idx);
    sum += lattice.trapezoid_weight(idx) * std::pow(std::abs(u[i] - ref[i]), p);
  }
  return std::pow(sum, 1.0 / p);
}

Trajectory sample_trajectory(const SpectralField& w0, std::span<const double> exponents,
                             double t0, double t1, int steps, const QuadratureRule& rule,
                             const DenseGridSpec& grid) {
  if (!(t0 >= 0.0) || !(t1 >= t0)) throw usage_error("need 0 <= t0 <= t1");
  if (steps < 1) throw usage_error("need at least one time sample");
  if (exponents.empty()) throw usage_error("need at least one entropy exponent");

  Trajectory traj;
  traj.exponents.assign(exponents.begin(), exponents.end());
  traj.samples.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double t = steps == 1 ? t0 : t0 + (t1 - t0) * i / (steps - 1);
    const SpectralField w = evolve_ou(w0, t);
    const GridField wg = synthesize(w, rule);
    const std::vector<GridField> grad = synthesize_gradient(w, rule);

    TrajectorySample s;
    s.t = t;
    for (double p : exponents) s.entropy.push_back(entropy_p(wg, p));
    s.fisher = fisher_info(wg, grad);
    s.l2_distance = l2_distance_to_one(w);
    const BoundsEstimate b = estimate_bounds(w, grid);
    s.inf_w = b.inf_w;
    s.sup_w = b.sup_w;
    s.h1 = H_p(b, 1.0);
    traj.samples.push_back(std::move(s));
  }
  return traj;
}

std::string trajectory_csv(const Trajectory& trajectory) {
  std::vector<std::string> cells;
  cells.emplace_back("t");
  for (double p : trajectory.exponents) cells.push_back("E_" + format_g17(p));
  cells.emplace_back("production");
  cells.emplace_back("l2_dist");
  cells.emplace_back("inf_w");
  cells.emplace_back("sup_w");
  cells.emplace_back("H_1");
  std::string out = csv_line(cells);
  for (const TrajectorySample& s : trajectory.samples) {
    cells.clear();
    cells.push_back(format_g17(s.t));
    for (double e : s.entropy) cells.push_back(format_g17(e));
    cells.push_back(format_g17(s.fisher));
    cells.push_back(format_g17(s.l2_distance));
    cells.push_back(format_g17(s.inf_w));
    cells.push_back(format_g17(s.sup_w));
    cells.push_back(format_g17(s.h1));
    out += csv_line(cells);
  }
  return out;
}

}  // namespace entroflow
