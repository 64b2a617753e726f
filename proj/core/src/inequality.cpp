#include "entroflow/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "entroflow/entropy.hpp"
#include "entroflow/errors.hpp"
#include "entroflow/evolution.hpp"
#include "entroflow/hermite.hpp"
#include "entroflow/text_io.hpp"

namespace entroflow {

namespace {

constexpr double kBandTol = 1e-10;   // coefficient considered zero below this
constexpr double kEntropyFloor = 1e-12;

// uniform_real_distribution is implementation-defined; this mapping is
// not, which keeps seeded outputs byte-identical across toolchains.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

InequalityReport make_report(std::string id, double lhs, double rhs, double constant,
                             std::string recipe, std::uint64_t seed, int quad_order) {
  InequalityReport r;
  r.id = std::move(id);
  r.lhs = lhs;
  r.rhs = rhs;
  r.constant = constant;
  r.slack = rhs - lhs;
  r.pass = r.slack >= -1e-9 * std::max(1.0, rhs);
  r.recipe = std::move(recipe);
  r.seed = seed;
  r.quad_order = quad_order;
  return r;
}

void require_sample_admissible(const FieldSample& s, const char* who) {
  if (s.bounds.inf_w < kPositivityTol)
    throw non_admissible_error(std::string(who) + ": lattice minimum " +
                                   format_g17(s.bounds.inf_w) + " below positivity tolerance",
                               s.bounds.inf_w - kPositivityTol);
}

// integral |grad w^{p/2}|^2 dmu = (p/4) * production_p.
double dirichlet_half_power(const FieldSample& s, double p) {
  return p / 4.0 * production_p(s.w, s.grad, p);
}

}  // namespace

ProjectionResult project_orthogonal(const SpectralField& w, int n, const DenseGridSpec& grid) {
  if (n < 1) throw usage_error("band order n must be >= 1");
  SpectralField out = w;
  out.set_coeff(0, 1.0);
  for (int pos = 1; pos < out.size(); ++pos) {
    const int deg = out.basis().at(pos).total_degree();
    if (deg > 0 && deg < n) out.set_coeff(pos, 0.0);
  }
  ProjectionResult result{out, estimate_bounds(out, grid), false, 0.0};
  result.margin = result.bounds.inf_w - kPositivityTol;
  result.admissible = result.margin >= 0.0;
  return result;
}

SpectralField require_admissible_projection(const SpectralField& w, int n,
                                            const DenseGridSpec& grid) {
  ProjectionResult r = project_orthogonal(w, n, grid);
  if (!r.admissible)
    throw non_admissible_error(
        "projection not positive: lattice minimum " + format_g17(r.bounds.inf_w), r.margin);
  return std::move(r.field);
}

AdmissibleField random_admissible(int dimension, int n, double eps, int max_degree,
                                  std::uint64_t seed, const DenseGridSpec& grid) {
  if (dimension < 1 || dimension > 3) throw usage_error("dimension must be 1, 2, or 3");
  if (n < 1) throw usage_error("band order n must be >= 1");
  if (!(eps >= 0.0 && eps < 1.0)) throw usage_error("eps must lie in [0,1)");
  if (max_degree < n) throw usage_error("max degree must be >= n");

  if (eps == 0.0) {  // degenerate ladder end: the stationary density itself
    AdmissibleField out{SpectralField::constant_one(dimension, max_degree),
                        n, eps, seed, "", {}};
    out.bounds.inf_w = 1.0;
    out.bounds.sup_w = 1.0;
    out.bounds.half_width = grid.half_width;
    out.bounds.spacing = grid.spacing;
    out.bounds.coarse = grid.spacing > 0.05;
    out.recipe = "constant(d=" + std::to_string(dimension) +
                 ",N=" + std::to_string(max_degree) + ")";
    return out;
  }

  std::mt19937_64 rng(seed);
  // Per-mode normalization: divide by sup_lattice |H_k| (a product of
  // per-axis maxima on a tensor lattice) so no single high mode's edge
  // growth crushes the other modes after the global rescale.
  const std::vector<double> axis = grid.axis_coords();
  const std::vector<double> table = hermite_eval_table(max_degree, axis);
  std::vector<double> axis_max(max_degree + 1, 0.0);
  for (int deg = 0; deg <= max_degree; ++deg)
    for (std::size_t i = 0; i < axis.size(); ++i)
      axis_max[deg] = std::max(axis_max[deg], std::abs(table[deg * axis.size() + i]));

  SpectralField dev = SpectralField::zero(dimension, max_degree);
  bool nontrivial = false;
  for (int attempt = 0; attempt < 8 && !nontrivial; ++attempt) {
    for (int pos = 0; pos < dev.size(); ++pos) {
      const MultiIndex& k = dev.basis().at(pos);
      if (k.total_degree() < n) continue;
      double sup_hk = 1.0;
      for (int axis_j = 0; axis_j < dimension; ++axis_j) sup_hk *= axis_max[k[axis_j]];
      const double c = (2.0 * uniform01(rng) - 1.0) / sup_hk;
      dev.set_coeff(pos, c);
      if (std::abs(c) > 1e-14) nontrivial = true;
    }
  }
  if (!nontrivial) throw domain_error("random draw degenerate after 8 attempts");

  const std::vector<double> values = evaluate_lattice(dev, axis);
  double lo = 0.0, hi = 0.0;  // deviation range; 0 is attainable only in the limit
  for (double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double spread = std::max(-lo, hi);
  if (!(spread > 0.0)) throw domain_error("random draw degenerate on the lattice");
  const double scale = eps / spread;

  AdmissibleField out{SpectralField::zero(dimension, max_degree), n, eps, seed, "", {}};
  out.field.set_coeff(0, 1.0);
  for (int pos = 1; pos < dev.size(); ++pos)
    out.field.set_coeff(pos, scale * dev.coeff(pos));
  out.bounds.inf_w = 1.0 + scale * lo;
  out.bounds.sup_w = 1.0 + scale * hi;
  out.bounds.half_width = grid.half_width;
  out.bounds.spacing = grid.spacing;
  out.bounds.coarse = grid.spacing > 0.05;
  out.recipe = "random_admissible(d=" + std::to_string(dimension) + ",n=" + std::to_string(n) +
               ",N=" + std::to_string(max_degree) + ",eps=" + format_g17(eps) +
               ",seed=" + std::to_string(seed) + ")";
  return out;
}

DenseGridSpec certification_grid(int dimension, int max_degree, int quad_order) {
  DenseGridSpec grid = DenseGridSpec::default_for(dimension, max_degree);
  const QuadratureRule axis = gauss_hermite_rule(quad_order, 1);
  grid.half_width = std::max(grid.half_width, axis.axis_nodes().back() + 0.25);
  return grid;
}

AdmissibleField random_admissible(int dimension, int n, double eps, int max_degree,
                                  std::uint64_t seed) {
  return random_admissible(
      dimension, n, eps, max_degree, seed,
      certification_grid(dimension, max_degree, 2 * max_degree + 4));
}

double bump_chi(double r) {
  if (!(r >= 0.0)) throw usage_error("bump argument must be >= 0");
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  const double u = r - 1.0;
  return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

double bump_chi_prime(double r) {
  if (!(r >= 0.0)) throw usage_error("bump argument must be >= 0");
  if (r <= 1.0 || r >= 2.0) return 0.0;
  const double u = r - 1.0;
  const double chi = std::exp(1.0 - 1.0 / (1.0 - u * u));
  if (chi == 0.0) return 0.0;
  const double d = 1.0 - u * u;
  return -2.0 * u * chi / (d * d);
}

namespace {

// a * H_k(x) chi(s|x|) and its gradient at one point.
double family_term(const MultiIndex& k, double s, std::span<const double> x) {
  double r2 = 0.0;
  for (double xi : x) r2 += xi * xi;
  const double r = std::sqrt(r2) * s;
  if (r >= 2.0) return 0.0;
  return tensor_eval(k, x) * bump_chi(r);
}

void family_term_grad(const MultiIndex& k, double s, std::span<const double> x,
                      std::span<double> out) {
  const int d = k.dimension();
  double r2 = 0.0;
  for (double xi : x) r2 += xi * xi;
  const double rad = std::sqrt(r2);
  const double r = rad * s;
  if (r >= 2.0) {
    for (int j = 0; j < d; ++j) out[static_cast<std::size_t>(j)] = 0.0;
    return;
  }
  const double chi = bump_chi(r);
  const double dchi = bump_chi_prime(r);
  const double hk = tensor_eval(k, x);
  std::vector<int> shifted = k.entries();
  for (int j = 0; j < d; ++j) {
    double grad_h = 0.0;
    if (k[j] > 0) {
      shifted[static_cast<std::size_t>(j)] -= 1;
      grad_h = hermite_deriv_coeff(k[j]) * tensor_eval(MultiIndex(shifted), x);
      shifted[static_cast<std::size_t>(j)] += 1;
    }
    const double radial = (dchi == 0.0 || rad == 0.0)
                              ? 0.0
                              : hk * dchi * s * x[static_cast<std::size_t>(j)] / rad;
    out[static_cast<std::size_t>(j)] = grad_h * chi + radial;
  }
}

}  // namespace

TestFunction build_test_function(const TestFunctionFamily& family) {
  const int d = family.k.dimension();
  const int n = family.k.total_degree();
  if (n < 1) throw usage_error("test family needs |k| >= 1");
  if (!(family.eps > 0.0)) throw usage_error("test family needs eps > 0");

  const double s = std::pow(family.eps, 1.0 / (2.0 * n));
  const double support = 2.0 / s;

  const int order = family.quad_order > 0 ? family.quad_order : std::max(48, 2 * n + 4);
  const QuadratureRule rule = gauss_hermite_rule(order, d);

  DenseGridSpec grid = family.grid;
  if (!(grid.half_width > 0.0)) grid = DenseGridSpec::default_for(d, n);
  grid.half_width = std::max(grid.half_width, support + 0.5);

  // Bump-weighted basis term at the quadrature nodes and on the lattice.
  const std::int64_t qn = rule.point_count();
  std::vector<double> term_q(static_cast<std::size_t>(qn));
  std::vector<double> x(static_cast<std::size_t>(d));
  for (std::int64_t i = 0; i < qn; ++i) {
    rule.point(i, x);
    term_q[static_cast<std::size_t>(i)] = family_term(family.k, s, x);
  }
  const double term_mass = integrate_mu(term_q, rule);

  const std::vector<double> coords = grid.axis_coords();
  const auto m = static_cast<std::int64_t>(coords.size());
  std::int64_t ln = 1;
  for (int j = 0; j < d; ++j) ln *= m;
  std::vector<double> term_l(static_cast<std::size_t>(ln));
  for (std::int64_t i = 0; i < ln; ++i) {
    std::int64_t rest = i;
    for (int j = d - 1; j >= 0; --j) {
      x[static_cast<std::size_t>(j)] = coords[static_cast<std::size_t>(rest % m)];
      rest /= m;
    }
    term_l[static_cast<std::size_t>(i)] = family_term(family.k, s, x);
  }

  // Largest dyadic amplitude keeping the lattice minimum positive.
  // C(a) = 1 - a * term_mass makes the quadrature mass exactly one.
  double amplitude = 0.0;
  double shift = 1.0;
  double inf_w = 0.0, sup_w = 0.0;
  for (int j = 0; j <= 60; ++j) {
    const double a = std::ldexp(1.0, -j);
    const double c = 1.0 - a * term_mass;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (double v : term_l) {
      lo = std::min(lo, a * v + c);
      hi = std::max(hi, a * v + c);
    }
    if (lo >= kPositivityTol) {
      amplitude = a;
      shift = c;
      inf_w = lo;
      sup_w = hi;
      break;
    }
  }
  if (amplitude == 0.0)
    throw domain_error("no dyadic amplitude renders the test function positive");

  TestFunction out;
  out.k = family.k;
  out.band = n;
  out.eps = family.eps;
  out.amplitude = amplitude;
  out.shift = shift;
  out.bounds.inf_w = inf_w;
  out.bounds.sup_w = sup_w;
  out.bounds.half_width = grid.half_width;
  out.bounds.spacing = grid.spacing;
  out.bounds.coarse = grid.spacing > 0.05;

  std::vector<double> wv(static_cast<std::size_t>(qn));
  for (std::int64_t i = 0; i < qn; ++i)
    wv[static_cast<std::size_t>(i)] = amplitude * term_q[static_cast<std::size_t>(i)] + shift;
  out.w = GridField{rule, std::move(wv)};

  out.grad.reserve(static_cast<std::size_t>(d));
  std::vector<std::vector<double>> gv(static_cast<std::size_t>(d),
                                      std::vector<double>(static_cast<std::size_t>(qn)));
  std::vector<double> g(static_cast<std::size_t>(d));
  for (std::int64_t i = 0; i < qn; ++i) {
    rule.point(i, x);
    family_term_grad(family.k, s, x, g);
    for (int j = 0; j < d; ++j)
      gv[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
          amplitude * g[static_cast<std::size_t>(j)];
  }
  for (int j = 0; j < d; ++j) out.grad.push_back(GridField{rule, std::move(gv[static_cast<std::size_t>(j)])});

  std::string kstr;
  for (int j = 0; j < d; ++j) kstr += (j ? "," : "") + std::to_string(family.k[j]);
  out.recipe = "test_function(k=(" + kstr + "),eps=" + format_g17(family.eps) +
               ",a=" + format_g17(amplitude) + ")";
  return out;
}

FieldSample sample_admissible(const AdmissibleField& field, const QuadratureRule& rule) {
  FieldSample s;
  s.w = synthesize(field.field, rule);
  s.grad = synthesize_gradient(field.field, rule);
  s.bounds = field.bounds;
  s.recipe = field.recipe;
  s.seed = field.seed;
  return s;
}

FieldSample sample_test_function(TestFunction function) {
  FieldSample s;
  s.w = std::move(function.w);
  s.grad = std::move(function.grad);
  s.bounds = function.bounds;
  s.recipe = std::move(function.recipe);
  s.seed = 0;
  return s;
}

InequalityReport check_poincare(const SpectralField& w, int n) {
  if (n < 1) throw usage_error("band order n must be >= 1");
  double lhs = 0.0, mean_sq = 0.0;
  for (int pos = 1; pos < w.size(); ++pos) {
    const int deg = w.basis().at(pos).total_degree();
    const double c = w.coeff(pos);
    if (deg < n && std::abs(c) > kBandTol)
      throw usage_error("orthogonality condition violated in band " + std::to_string(deg));
    lhs += c * c;
    mean_sq += deg * c * c;
  }
  const double rhs = mean_sq / n;
  return make_report("poincare", lhs, rhs, 1.0 / n, "spectral", 0, 0);
}

InequalityReport check_improved_lsi(const FieldSample& s, int n) {
  if (n < 1) throw usage_error("band order n must be >= 1");
  require_sample_admissible(s, "check_improved_lsi");
  const double lhs = entropy_p(s.w, 1.0);
  const double fisher = production_p(s.w, s.grad, 1.0);
  const double h1 = H_p(s.bounds, 1.0);
  const double rhs = h1 / n * fisher;
  return make_report("improved_lsi", lhs, rhs, h1 / n, s.recipe, s.seed,
                     s.w.rule.points_per_axis());
}

InequalityReport check_beckner(const FieldSample& s, int n, double p) {
  require_sample_admissible(s, "check_beckner");
  const double lhs = entropy_p(s.w, p);
  const double constant = B_np(n, p);
  const double rhs = constant * dirichlet_half_power(s, p);
  return make_report("beckner", lhs, rhs, constant, s.recipe, s.seed,
                     s.w.rule.points_per_axis());
}

InequalityReport check_pversion(const FieldSample& s, int n, double p) {
  if (n < 1) throw usage_error("band order n must be >= 1");
  require_sample_admissible(s, "check_pversion");
  const double lhs = entropy_p(s.w, p);
  const double hp = H_p(s.bounds, p);
  const double rhs = 4.0 / (p * p) * hp / n * dirichlet_half_power(s, p);
  return make_report("pversion", lhs, rhs, hp / n, s.recipe, s.seed,
                     s.w.rule.points_per_axis());
}

InequalityReport check_ck(const FieldSample& s, double p) {
  require_sample_admissible(s, "check_ck");
  if (!(p >= 1.0 && p <= 2.0)) throw usage_error("entropy exponent p must lie in [1,2]");
  std::vector<double> dev(s.w.values.size());
  for (std::size_t i = 0; i < dev.size(); ++i)
    dev[i] = std::pow(std::abs(s.w.values[i] - 1.0), p);
  const double lhs = std::pow(integrate_mu(dev, s.w.rule), 1.0 / p);
  const double rhs = A_p(entropy_p(s.w, p), p);
  return make_report("csiszar_kullback", lhs, rhs, rhs, s.recipe, s.seed,
                     s.w.rule.points_per_axis());
}

std::string reports_json(std::span<const InequalityReport> reports) {
  JsonWriter w;
  w.begin_array();
  for (const InequalityReport& r : reports) {
    w.begin_object();
    w.key("id").value(r.id);
    w.key("lhs").value(r.lhs);
    w.key("rhs").value(r.rhs);
    w.key("constant").value(r.constant);
    w.key("slack").value(r.slack);
    w.key("pass").value(r.pass);
    w.key("recipe").value(r.recipe);
    w.key("seed").value(r.seed);
    w.key("quad_order").value(r.quad_order);
    w.end_object();
  }
  w.end_array();
  return w.str() + "\n";
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw usage_error("line fit needs >= 2 points");
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw usage_error("line fit needs distinct abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += r * r;
  }
  fit.residual_rms = std::sqrt(ss / n);
  fit.count = static_cast<int>(x.size());
  return fit;
}

DecayFit decay_experiment(const AdmissibleField& field0, double p, const TimeGrid& t_grid,
                          const QuadratureRule& rule, const FitWindow& window) {
  if (t_grid.steps < 8) throw usage_error("decay experiment needs >= 8 time samples");
  if (!(t_grid.t0 >= 0.0) || !(t_grid.t1 > t_grid.t0)) throw usage_error("bad time window");
  const int n = field0.band;

  std::vector<double> times(static_cast<std::size_t>(t_grid.steps));
  std::vector<double> entropies(static_cast<std::size_t>(t_grid.steps));
  for (int i = 0; i < t_grid.steps; ++i) {
    const double t = t_grid.t0 + (t_grid.t1 - t_grid.t0) * i / (t_grid.steps - 1);
    times[static_cast<std::size_t>(i)] = t;
    entropies[static_cast<std::size_t>(i)] =
        entropy_p(evolve_ou(field0.field, t), p, rule);
  }

  DecayFit fit;
  fit.entropy0 = entropies.front();
  fit.rate_2lambda = 2.0 * lambda_np(n, p);
  fit.rate_np_over_Hp = n * p / H_p(field0.bounds, p);
  fit.rate_spectral = 2.0 * n;
  fit.rate_4_over_pK = (p > 1.0 && p < 2.0)
                           ? 4.0 / (p * K_np(n, p, H_p(field0.bounds, 1.0)))
                           : std::numeric_limits<double>::quiet_NaN();

  // Fit on the window, skipping samples at the floating-point floor.
  std::vector<double> fx, fy;
  bool floored = false;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (entropies[i] <= kEntropyFloor) {
      floored = true;
      continue;
    }
    if (times[i] < window.t0 - 1e-15 || times[i] > window.t1 + 1e-15) continue;
    fx.push_back(times[i]);
    fy.push_back(std::log(entropies[i]));
  }
  if (fx.size() < 2) {
    // Window too aggressive for this grid; fall back to everything usable.
    fx.clear();
    fy.clear();
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (entropies[i] <= kEntropyFloor) continue;
      fx.push_back(times[i]);
      fy.push_back(std::log(entropies[i]));
    }
    floored = true;
    if (fx.size() < 2) throw domain_error("entropy trajectory entirely below floor");
  }
  const LineFit line = fit_line(fx, fy);
  fit.window_t0 = fx.front();
  fit.window_t1 = fx.back();
  fit.fitted_rate = -line.slope;
  fit.intercept = line.intercept;
  fit.residual_rms = line.residual_rms;
  fit.samples_used = line.count;
  fit.window_shrunk = floored;

  const auto envelope_ok = [&](double rate) {
    if (std::isnan(rate)) return true;
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double bound = fit.entropy0 * std::exp(-rate * (times[i] - times.front()));
      if (entropies[i] - bound > 1e-9 * std::max(1.0, bound)) return false;
    }
    return true;
  };
  fit.envelope_2lambda_ok = envelope_ok(fit.rate_2lambda);
  fit.envelope_k_ok = envelope_ok(fit.rate_4_over_pK);
  fit.envelope_hp_ok = envelope_ok(fit.rate_np_over_Hp);
  return fit;
}

SharpnessScan sharpness_scan(const MultiIndex& k, std::span<const double> amplitudes,
                             int quad_order) {
  const int n = k.total_degree();
  const int d = k.dimension();
  if (n < 1) throw usage_error("sharpness scan needs |k| >= 1");
  if (amplitudes.empty()) throw usage_error("sharpness scan needs amplitudes");
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    if (!(amplitudes[i] > 0.0)) throw usage_error("amplitudes must be positive");
    if (i > 0 && !(amplitudes[i] < amplitudes[i - 1]))
      throw usage_error("amplitudes must strictly decrease");
  }

  const int order = quad_order > 0 ? quad_order : std::max(32, 2 * n + 4);
  const QuadratureRule rule = gauss_hermite_rule(order, d);
  DenseGridSpec grid;
  grid.half_width = std::sqrt(2.0 * n + 4.0);
  grid.spacing = d <= 2 ? 0.02 : 0.1;

  SharpnessScan scan;
  scan.k = k;
  scan.band = n;
  scan.quad_order = order;
  scan.lattice_half_width = grid.half_width;

  SpectralField probe = SpectralField::constant_one(d, n);
  const int kpos = probe.basis().position_of(k.entries());
  if (kpos < 0) throw usage_error("multi-index outside its own basis");

  for (double a : amplitudes) {
    probe.set_coeff(kpos, a);
    SharpnessRow row;
    row.amplitude = a;
    const BoundsEstimate b = estimate_bounds(probe, grid);
    row.inf_w = b.inf_w;
    row.sup_w = b.sup_w;
    const GridField wg = synthesize(probe, rule);
    const double node_min = *std::min_element(wg.values.begin(), wg.values.end());
    row.admissible = b.inf_w >= kPositivityTol && node_min > 0.0;
    if (row.admissible) {
      const std::vector<GridField> grad = synthesize_gradient(probe, rule);
      row.entropy1 = entropy_p(wg, 1.0);
      row.fisher = production_p(wg, grad, 1.0);
      row.quotient = row.entropy1 / row.fisher;
      row.h1_functional = H_p(b, 1.0);
      row.bound_const = row.h1_functional / n;
      row.tightness = row.quotient * n / row.h1_functional;
      row.rate_proxy = n / row.h1_functional;
    } else {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      row.entropy1 = row.fisher = row.quotient = nan;
      row.h1_functional = row.bound_const = row.tightness = row.rate_proxy = nan;
    }
    scan.rows.push_back(row);
  }
  return scan;
}

std::string sharpness_csv(const SharpnessScan& scan) {
  std::vector<std::string> cells = {"amplitude",  "admissible", "E_1",       "fisher",
                                    "quotient",   "H_1",        "bound_const", "tightness",
                                    "rate_proxy", "inf_w",      "sup_w"};
  std::string out = csv_line(cells);
  for (const SharpnessRow& r : scan.rows) {
    cells = {format_g17(r.amplitude),
             r.admissible ? "1" : "0",
             format_g17(r.entropy1),
             format_g17(r.fisher),
             format_g17(r.quotient),
             format_g17(r.h1_functional),
             format_g17(r.bound_const),
             format_g17(r.tightness),
             format_g17(r.rate_proxy),
             format_g17(r.inf_w),
             format_g17(r.sup_w)};
    out += csv_line(cells);
  }
  return out;
}

}  // namespace entroflow
