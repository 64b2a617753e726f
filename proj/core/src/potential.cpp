#include "entroflow/potential.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include <lapacke.h>

#include "entroflow/entropy.hpp"
#include "entroflow/errors.hpp"
#include "entroflow/text_io.hpp"

namespace entroflow {

namespace {

constexpr double kMassTol = 1e-8;
constexpr double kEffectiveCut = 1e-12;   // mu threshold relative to max(mu)
constexpr double kBoundaryCut = 1e-14;    // density at the box edge vs. peak
constexpr double kTruncationWarn = 1e-4;  // share of ||w0||^2 beyond the basis
constexpr double kEntropyFloor = 1e-12;

double poly_eval(const std::vector<double>& c, double y) {
  double v = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * y + c[i];
  return v;
}

double poly_deriv1(const std::vector<double>& c, double y) {
  double v = 0.0;
  for (std::size_t i = c.size(); i-- > 1;) v = v * y + static_cast<double>(i) * c[i];
  return v;
}

double poly_deriv2(const std::vector<double>& c, double y) {
  double v = 0.0;
  for (std::size_t i = c.size(); i-- > 2;)
    v = v * y + static_cast<double>(i) * static_cast<double>(i - 1) * c[i];
  return v;
}

// Schroedinger-form zero-order term per axis: P'^2/4 - P''/2.
double axis_w(const std::vector<double>& c, double y) {
  const double d1 = poly_deriv1(c, y);
  return 0.25 * d1 * d1 - 0.5 * poly_deriv2(c, y);
}

double axis_trapezoid_mass(const std::vector<double>& c, double lo, double hi, int pts) {
  const double h = (hi - lo) / (pts - 1);
  double acc = 0.0;
  for (int i = 0; i < pts; ++i) {
    const double y = lo + i * h;
    const double f = std::exp(-poly_eval(c, y));
    acc += (i == 0 || i == pts - 1) ? 0.5 * f : f;
  }
  return acc * h;
}

void require_confining(const PotentialSpec& pot) {
  const double m1 = axis_trapezoid_mass(pot.axis_poly, -pot.half_width, pot.half_width, 2049);
  const double m2 =
      axis_trapezoid_mass(pot.axis_poly, -2.0 * pot.half_width, 2.0 * pot.half_width, 4097);
  if (!std::isfinite(m1) || !std::isfinite(m2) || m1 <= 0.0 ||
      m2 > m1 * (1.0 + 1e-8)) {
    throw domain_error("potential is not confining on the requested box (mass escapes "
                       "when the box is doubled)");
  }
}

// Bregman integrand: zero at w = 1, first-order insensitive to mass error.
double phi_p(double w, double p) {
  if (p == 1.0) return w > 0.0 ? w * std::log(w) - w + 1.0 : 1.0;
  return (std::pow(w, p) - p * w + p - 1.0) / (p - 1.0);
}

// A g for the discretized operator, Euclidean convention.
void apply_operator(const DiscretizedOperator& op, std::span<const double> g,
                    std::span<double> out) {
  const auto n = static_cast<std::size_t>(op.interior_count());
  if (op.pot.dimension == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      double v = op.diag[i] * g[i];
      if (i > 0) v += op.offdiag[i - 1] * g[i - 1];
      if (i + 1 < n) v += op.offdiag[i] * g[i + 1];
      out[i] = v;
    }
    return;
  }
  for (std::size_t r = 0; r < n; ++r) {
    const double* row = op.dense.data() + r * n;
    double v = 0.0;
    for (std::size_t cidx = 0; cidx < n; ++cidx) v += row[cidx] * g[cidx];
    out[r] = v;
  }
}

struct EnvelopePoint {
  double t = 0.0;
  double value = 0.0;
  double bound = 0.0;
};

}  // namespace

PotentialSpec harmonic_potential(int dimension) {
  PotentialSpec pot;
  pot.dimension = dimension;
  pot.axis_poly = {0.5 * std::log(2.0 * std::acos(-1.0)), 0.0, 0.5};
  pot.half_width = 10.0;
  pot.name = "harmonic";
  return pot;
}

PotentialSpec double_well_potential() {
  PotentialSpec pot;
  pot.dimension = 1;
  pot.axis_poly = {0.0, 0.0, -0.5, 0.0, 0.25};
  pot.half_width = 5.0;
  pot.name = "double-well";
  return pot;
}

PotentialSpec polynomial_potential(int dimension, std::vector<double> axis_poly,
                                   double half_width) {
  PotentialSpec pot;
  pot.dimension = dimension;
  pot.axis_poly = std::move(axis_poly);
  pot.half_width = half_width;
  return pot;
}

PotentialSpec potential_by_name(const std::string& name, int dimension) {
  if (name == "harmonic") return harmonic_potential(dimension);
  if (name == "double-well" || name == "double_well") {
    PotentialSpec pot = double_well_potential();
    pot.dimension = dimension;
    return pot;
  }
  throw usage_error("unknown potential '" + name + "' (expected harmonic or double-well)");
}

double potential_value(const PotentialSpec& pot, std::span<const double> x) {
  if (static_cast<int>(x.size()) != pot.dimension)
    throw usage_error("potential_value: point dimension mismatch");
  double v = pot.shift;
  for (double y : x) v += poly_eval(pot.axis_poly, y);
  return v;
}

DiscretizedOperator discretize(PotentialSpec pot, int points_per_axis) {
  if (pot.dimension < 1 || pot.dimension > 2)
    throw usage_error("discretize: dimension must be 1 or 2");
  if (points_per_axis < 16) throw usage_error("discretize: need at least 16 points per axis");
  if (pot.dimension == 2 && points_per_axis > 52)
    throw usage_error("discretize: 2-D dense eigensolve needs points per axis <= 52");
  if (pot.axis_poly.empty()) throw usage_error("discretize: empty potential polynomial");
  if (!(pot.half_width > 0.0)) throw usage_error("discretize: half_width must be positive");
  require_confining(pot);

  DiscretizedOperator op;
  op.points_per_axis = points_per_axis;
  op.h = 2.0 * pot.half_width / (points_per_axis - 1);
  const int ni = points_per_axis - 2;
  op.interior_axis.resize(ni);
  for (int i = 0; i < ni; ++i) op.interior_axis[i] = -pot.half_width + (i + 1) * op.h;

  const int d = pot.dimension;
  const double hd = std::pow(op.h, d);

  // Raw V on the interior grid, then shift so the discrete mass is exactly 1.
  const auto n = static_cast<std::size_t>(d == 1 ? ni : ni * static_cast<std::int64_t>(ni));
  op.v_eff.resize(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    double v = 0.0;
    if (d == 1) {
      v = poly_eval(pot.axis_poly, op.interior_axis[idx]);
    } else {
      v = poly_eval(pot.axis_poly, op.interior_axis[idx / ni]) +
          poly_eval(pot.axis_poly, op.interior_axis[idx % ni]);
    }
    op.v_eff[idx] = v;
  }
  const double vmin = *std::min_element(op.v_eff.begin(), op.v_eff.end());
  double mass = 0.0;
  for (double v : op.v_eff) mass += std::exp(-(v - vmin));
  mass *= hd;
  pot.shift = std::log(mass) - vmin;
  for (double& v : op.v_eff) v += pot.shift;

  op.mu.resize(n);
  op.effective.resize(n);
  double mu_max = 0.0;
  for (std::size_t idx = 0; idx < n; ++idx) {
    op.mu[idx] = std::exp(-op.v_eff[idx]) * hd;
    mu_max = std::max(mu_max, op.mu[idx]);
  }
  for (std::size_t idx = 0; idx < n; ++idx)
    op.effective[idx] = op.mu[idx] >= kEffectiveCut * mu_max ? 1 : 0;

  const double edge_density =
      std::exp(-(d * poly_eval(pot.axis_poly, pot.half_width) + pot.shift)) * hd;
  op.boundary_ok = edge_density <= kBoundaryCut * mu_max;

  const double inv_h2 = 1.0 / (op.h * op.h);
  if (d == 1) {
    op.diag.resize(n);
    op.offdiag.assign(n > 0 ? n - 1 : 0, -inv_h2);
    for (std::size_t i = 0; i < n; ++i)
      op.diag[i] = 2.0 * inv_h2 + axis_w(pot.axis_poly, op.interior_axis[i]);
  } else {
    std::vector<double> w1(ni);
    for (int i = 0; i < ni; ++i) w1[i] = axis_w(pot.axis_poly, op.interior_axis[i]);
    op.dense.assign(n * n, 0.0);
    for (int a = 0; a < ni; ++a) {
      for (int b = 0; b < ni; ++b) {
        const std::size_t r = static_cast<std::size_t>(a) * ni + b;
        op.dense[r * n + r] = 4.0 * inv_h2 + w1[a] + w1[b];
        if (a > 0) op.dense[r * n + (r - ni)] = -inv_h2;
        if (a + 1 < ni) op.dense[r * n + (r + ni)] = -inv_h2;
        if (b > 0) op.dense[r * n + (r - 1)] = -inv_h2;
        if (b + 1 < ni) op.dense[r * n + (r + 1)] = -inv_h2;
      }
    }
  }

  op.pot = std::move(pot);
  return op;
}

std::span<const double> OperatorSpectrum::mode(int i, std::int64_t interior_count) const {
  return {modes_g.data() + static_cast<std::size_t>(i) * interior_count,
          static_cast<std::size_t>(interior_count)};
}

OperatorSpectrum spectrum(const DiscretizedOperator& op, int m, double group_tol) {
  const auto n = static_cast<lapack_int>(op.interior_count());
  if (m < 1 || m > n) throw usage_error("spectrum: mode count must be in [1, interior size]");
  if (!(group_tol > 0.0)) throw usage_error("spectrum: group tolerance must be positive");

  OperatorSpectrum sp;
  sp.eigenvalues.resize(m);
  std::vector<double> z(static_cast<std::size_t>(n) * m);
  std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(m));
  lapack_int found = 0;
  lapack_int info = 0;

  if (op.pot.dimension == 1) {
    std::vector<double> diag = op.diag;
    std::vector<double> off(op.offdiag);
    off.resize(n > 0 ? n : 1, 0.0);  // solver scratch slot
    info = LAPACKE_dstevr(LAPACK_ROW_MAJOR, 'V', 'I', n, diag.data(), off.data(), 0.0, 0.0,
                          1, m, 0.0, &found, sp.eigenvalues.data(), z.data(), m,
                          isuppz.data());
  } else {
    std::vector<double> a = op.dense;
    info = LAPACKE_dsyevr(LAPACK_ROW_MAJOR, 'V', 'I', 'U', n, a.data(), n, 0.0, 0.0, 1, m,
                          0.0, &found, sp.eigenvalues.data(), z.data(), m, isuppz.data());
  }
  if (info != 0 || found != m) {
    throw domain_error("spectrum: eigensolver did not converge (info=" +
                       std::to_string(info) + ", found=" + std::to_string(found) + ")");
  }

  // Columns of z are Euclidean-orthonormal; rescale so the grid inner
  // product sum g_a g_b h^d is the identity.
  const double scale = std::pow(op.h, -0.5 * op.pot.dimension);
  sp.modes_g.resize(static_cast<std::size_t>(m) * n);
  for (int k = 0; k < m; ++k)
    for (lapack_int i = 0; i < n; ++i)
      sp.modes_g[static_cast<std::size_t>(k) * n + i] =
          z[static_cast<std::size_t>(i) * m + k] * scale;

  sp.residuals.resize(m);
  std::vector<double> unit(n), img(n);
  for (int k = 0; k < m; ++k) {
    for (lapack_int i = 0; i < n; ++i) unit[i] = z[static_cast<std::size_t>(i) * m + k];
    apply_operator(op, unit, img);
    double r2 = 0.0;
    for (lapack_int i = 0; i < n; ++i) {
      const double r = img[i] - sp.eigenvalues[k] * unit[i];
      r2 += r * r;
    }
    sp.residuals[k] = std::sqrt(r2);
  }

  sp.group_of.resize(m);
  for (int k = 0; k < m; ++k) {
    if (k > 0 && sp.eigenvalues[k] - sp.eigenvalues[k - 1] <= group_tol) {
      sp.group_of[k] = sp.group_of[k - 1];
    } else {
      sp.group_of[k] = k == 0 ? 0 : sp.group_of[k - 1] + 1;
    }
  }
  const int groups = sp.group_of.back() + 1;
  sp.group_values.assign(groups, 0.0);
  std::vector<int> counts(groups, 0);
  for (int k = 0; k < m; ++k) {
    sp.group_values[sp.group_of[k]] += sp.eigenvalues[k];
    ++counts[sp.group_of[k]];
  }
  for (int g = 0; g < groups; ++g) sp.group_values[g] /= counts[g];
  return sp;
}

std::vector<double> w_mode(const DiscretizedOperator& op, const OperatorSpectrum& sp, int i) {
  if (i < 0 || i >= sp.size()) throw usage_error("w_mode: index out of range");
  const auto n = static_cast<std::size_t>(op.interior_count());
  const auto g = sp.mode(i, static_cast<std::int64_t>(n));
  std::vector<double> w(n, 0.0);
  for (std::size_t idx = 0; idx < n; ++idx)
    if (op.effective[idx]) w[idx] = g[idx] * std::exp(0.5 * op.v_eff[idx]);
  return w;
}

double weighted_dot(const DiscretizedOperator& op, std::span<const double> a,
                    std::span<const double> b) {
  const auto n = static_cast<std::size_t>(op.interior_count());
  if (a.size() != n || b.size() != n) throw usage_error("weighted_dot: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i] * op.mu[i];
  return acc;
}

double grid_entropy_p(const DiscretizedOperator& op, std::span<const double> w, double p) {
  if (!(p >= 1.0 && p <= 2.0)) throw usage_error("grid_entropy_p: p must lie in [1,2]");
  const auto n = static_cast<std::size_t>(op.interior_count());
  if (w.size() != n) throw usage_error("grid_entropy_p: size mismatch");
  double mass = 0.0;
  for (std::size_t i = 0; i < n; ++i) mass += w[i] * op.mu[i];
  if (std::abs(mass - 1.0) > kMassTol)
    throw domain_error("grid_entropy_p: weighted mass deviates from 1 by " +
                       format_g17(std::abs(mass - 1.0)));
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!op.effective[i]) continue;  // mu below 1e-12 of peak: no contribution
    if (w[i] < 0.0 || (p == 1.0 && w[i] == 0.0))
      throw domain_error("grid_entropy_p: density not positive on the effective region");
    acc += phi_p(w[i], p) * op.mu[i];
  }
  return acc;
}

BoundsEstimate grid_bounds(const DiscretizedOperator& op, std::span<const double> w) {
  const auto n = static_cast<std::size_t>(op.interior_count());
  if (w.size() != n) throw usage_error("grid_bounds: size mismatch");
  BoundsEstimate b;
  b.inf_w = std::numeric_limits<double>::infinity();
  b.sup_w = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (!op.effective[i]) continue;
    b.inf_w = std::min(b.inf_w, w[i]);
    b.sup_w = std::max(b.sup_w, w[i]);
  }
  b.half_width = op.pot.half_width;
  b.spacing = op.h;
  b.coarse = false;
  return b;
}

GeneralEvolution evolve_general(const DiscretizedOperator& op, const OperatorSpectrum& sp,
                                std::span<const double> w0, double t) {
  if (!(t >= 0.0)) throw usage_error("evolve_general: time must be nonnegative");
  const auto n = static_cast<std::size_t>(op.interior_count());
  if (w0.size() != n) throw usage_error("evolve_general: size mismatch");
  const int m = sp.size();

  const double norm2 = weighted_dot(op, w0, w0);
  if (!(norm2 > 0.0)) throw domain_error("evolve_general: zero initial data");

  // a_k = <w0, f_k>_mu computed in the stable g-space form.
  std::vector<double> a(m, 0.0);
  const double hd = std::pow(op.h, op.pot.dimension);
  for (int k = 0; k < m; ++k) {
    const auto g = sp.mode(k, static_cast<std::int64_t>(n));
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      acc += w0[i] * g[i] * std::exp(-0.5 * op.v_eff[i]);
    a[k] = acc * hd;
  }

  GeneralEvolution out;
  double captured = 0.0;
  for (double ak : a) captured += ak * ak;
  out.truncation_residual = std::max(0.0, norm2 - captured) / norm2;
  out.truncated = out.truncation_residual > kTruncationWarn;

  // Reconstruction is meaningful only where e^{V/2} does not amplify
  // eigenvector noise; elsewhere the density has reached its flat limit.
  out.values.assign(n, 1.0);
  std::vector<double> damp(m);
  for (int k = 0; k < m; ++k) damp[k] = a[k] * std::exp(-sp.eigenvalues[k] * t);
  for (std::size_t i = 0; i < n; ++i) {
    if (!op.effective[i]) continue;
    double acc = 0.0;
    for (int k = 0; k < m; ++k)
      acc += damp[k] * sp.modes_g[static_cast<std::size_t>(k) * n + i];
    out.values[i] = acc * std::exp(0.5 * op.v_eff[i]);
  }
  return out;
}

GeneralDecay check_general_decay(const DiscretizedOperator& op, const OperatorSpectrum& sp,
                                 std::span<const double> w0, int n, double p,
                                 const TimeGrid& t_grid) {
  if (n < 1) throw usage_error("check_general_decay: band must be at least 1");
  if (!(p >= 1.0 && p <= 2.0)) throw usage_error("check_general_decay: p must lie in [1,2]");
  if (sp.group_values.size() <= static_cast<std::size_t>(n))
    throw usage_error("check_general_decay: spectrum holds fewer than n+1 eigenvalue groups");
  const auto count = static_cast<std::size_t>(op.interior_count());
  if (w0.size() != count) throw usage_error("check_general_decay: size mismatch");

  // Remove every mode with eigenvalue group 1..n-1 (stable projections).
  std::vector<double> w(w0.begin(), w0.end());
  const double hd = std::pow(op.h, op.pot.dimension);
  for (int k = 0; k < sp.size(); ++k) {
    const int g = sp.group_of[k];
    if (g < 1 || g >= n) continue;
    const auto gk = sp.mode(k, static_cast<std::int64_t>(count));
    double ak = 0.0;
    for (std::size_t i = 0; i < count; ++i)
      ak += w[i] * gk[i] * std::exp(-0.5 * op.v_eff[i]);
    ak *= hd;
    for (std::size_t i = 0; i < count; ++i)
      if (op.effective[i]) w[i] -= ak * gk[i] * std::exp(0.5 * op.v_eff[i]);
  }
  double mass = 0.0;
  for (std::size_t i = 0; i < count; ++i) mass += w[i] * op.mu[i];
  if (!(mass > 0.0)) throw domain_error("check_general_decay: projection destroyed the mass");
  for (double& v : w) v /= mass;

  GeneralDecay out;
  const BoundsEstimate bounds = grid_bounds(op, w);
  out.positivity_margin = bounds.inf_w - kPositivityTol;
  if (out.positivity_margin < 0.0)
    throw non_admissible_error("projected density loses positivity on the effective region",
                               out.positivity_margin);
  out.projected_w0 = w;
  out.lambda_n = sp.group_values[n];

  const double hp = H_p(bounds.inf_w, bounds.sup_w, p);
  const double rate = out.lambda_n * p / hp;

  if (t_grid.steps < 2 || !(t_grid.t1 > t_grid.t0) || t_grid.t0 < 0.0)
    throw usage_error("check_general_decay: need an increasing time grid");
  std::vector<EnvelopePoint> pts(t_grid.steps);
  std::vector<double> log_t, log_e;
  for (int s = 0; s < t_grid.steps; ++s) {
    const double t = t_grid.t0 + (t_grid.t1 - t_grid.t0) * s / (t_grid.steps - 1);
    GeneralEvolution ev = evolve_general(op, sp, w, t);
    // The truncated reconstruction drifts in mass by O(h^2); renormalize
    // before the entropy, which is first-order insensitive to the scale.
    double mt = 0.0;
    for (std::size_t i = 0; i < count; ++i) mt += ev.values[i] * op.mu[i];
    if (std::abs(mt - 1.0) > 1e-4)
      throw domain_error("check_general_decay: mode truncation loses mass " +
                         format_g17(std::abs(mt - 1.0)));
    for (double& v : ev.values) v /= mt;
    pts[s].t = t;
    pts[s].value = grid_entropy_p(op, ev.values, p);
  }
  // Anchor the envelope at the reconstructed initial entropy so the bound and
  // the trajectory share the same truncation error.
  const double e0 = pts.front().value;
  for (auto& pt : pts) pt.bound = e0 * std::exp(-rate * (pt.t - t_grid.t0));

  // Least-squares rate over the tail window, skipping entropy underflow.
  FitWindow window;
  window.t0 = t_grid.t0 + 0.05 * (t_grid.t1 - t_grid.t0);
  window.t1 = t_grid.t1;
  for (const auto& pt : pts) {
    if (pt.t < window.t0 - 1e-12 || pt.t > window.t1 + 1e-12) continue;
    if (pt.value <= kEntropyFloor) continue;
    log_t.push_back(pt.t);
    log_e.push_back(std::log(pt.value));
  }
  if (log_t.size() < 2)
    throw domain_error("check_general_decay: entropy underflow leaves too few samples");
  const LineFit line = fit_line(log_t, log_e);

  out.fit.window_t0 = window.t0;
  out.fit.window_t1 = window.t1;
  out.fit.fitted_rate = -line.slope;
  out.fit.intercept = line.intercept;
  out.fit.residual_rms = line.residual_rms;
  out.fit.samples_used = static_cast<int>(log_t.size());
  out.fit.entropy0 = e0;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  out.fit.rate_2lambda = 2.0 * out.lambda_n;
  out.fit.rate_4_over_pK = nan;  // Gaussian-basis constant, no analogue here
  out.fit.rate_np_over_Hp = rate;
  out.fit.rate_spectral = out.lambda_n;
  out.fit.envelope_2lambda_ok = true;
  out.fit.envelope_k_ok = true;

  bool ok = true;
  double worst_slack = std::numeric_limits<double>::infinity();
  EnvelopePoint worst = pts.front();
  for (const auto& pt : pts) {
    const double slack = pt.bound - pt.value;
    if (pt.value > pt.bound + 1e-9 * std::max(1.0, pt.bound)) ok = false;
    if (slack < worst_slack) {
      worst_slack = slack;
      worst = pt;
    }
  }
  out.fit.envelope_hp_ok = ok;

  out.report.id = "general_decay";
  out.report.lhs = worst.value;
  out.report.rhs = worst.bound;
  out.report.constant = rate;
  out.report.slack = worst_slack;
  out.report.pass = ok;
  char recipe[160];
  std::snprintf(recipe, sizeof recipe, "potential=%s,n=%d,p=%s", op.pot.name.c_str(), n,
                format_g17(p).c_str());
  out.report.recipe = recipe;
  out.report.seed = 0;
  out.report.quad_order = op.points_per_axis;
  return out;
}

std::string spectrum_csv(const OperatorSpectrum& sp) {
  std::string out = "index,eigenvalue,group\n";
  for (int k = 0; k < sp.size(); ++k) {
    const std::vector<std::string> cells = {std::to_string(k), format_g17(sp.eigenvalues[k]),
                                            std::to_string(sp.group_of[k])};
    out += csv_line(cells);
  }
  return out;
}

}  // namespace entroflow
