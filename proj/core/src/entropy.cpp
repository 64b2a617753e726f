#include "entroflow/entropy.hpp"

#include <algorithm>
#include <cmath>

#include "entroflow/errors.hpp"
#include "entroflow/text_io.hpp"

namespace entroflow {

namespace {

constexpr double kMassTol = 1e-8;
constexpr double kLogBranch = 1e-6;   // |p-1| below this -> log entropy
constexpr double kTaylorBranch = 1e-4;  // |s-1| below this -> series for h_p

void require_p_range(double p) {
  if (!(p >= 1.0 && p <= 2.0)) throw usage_error("entropy exponent p must lie in [1,2]");
}

void require_positive(const GridField& w, const char* who) {
  const double mn = *std::min_element(w.values.begin(), w.values.end());
  if (!(mn > 0.0))
    throw domain_error(std::string(who) + ": density not positive on the grid, min = " +
                       format_g17(mn));
}

void require_unit_mass(const GridField& w, const char* who) {
  const double mass = integrate_mu(w.values, w.rule);
  if (std::abs(mass - 1.0) > kMassTol)
    throw domain_error(std::string(who) + ": mass " + format_g17(mass) +
                       " deviates from 1 beyond 1e-8");
}

double log_ratio_q(double p) {
  // log((2-p)/p), written to keep full relative accuracy near p = 1.
  return std::log1p(2.0 * (1.0 - p) / p);
}

}  // namespace

double entropy_p(const GridField& w, double p) {
  require_p_range(p);
  require_positive(w, "entropy_p");
  require_unit_mass(w, "entropy_p");
  std::vector<double> integrand(w.values.size());
  if (std::abs(p - 1.0) <= kLogBranch) {
    for (std::size_t i = 0; i < w.values.size(); ++i) {
      const double v = w.values[i];
      integrand[i] = v * std::log(v);
    }
  } else {
    for (std::size_t i = 0; i < w.values.size(); ++i) {
      const double v = w.values[i];
      integrand[i] = (std::pow(v, p) - v) / (p - 1.0);
    }
  }
  return integrate_mu(integrand, w.rule);
}

double entropy_p(const SpectralField& w, double p, const QuadratureRule& rule) {
  return entropy_p(synthesize(w, rule), p);
}

double fisher_info(const GridField& w, std::span<const GridField> grad) {
  return production_p(w, grad, 1.0);
}

double fisher_info(const SpectralField& w, const QuadratureRule& rule) {
  const std::vector<GridField> grad = synthesize_gradient(w, rule);
  return fisher_info(synthesize(w, rule), grad);
}

double production_p(const GridField& w, std::span<const GridField> grad, double p) {
  require_p_range(p);
  require_positive(w, "production_p");
  if (static_cast<int>(grad.size()) != w.rule.dimension())
    throw usage_error("production_p: one gradient grid per axis required");
  for (const GridField& g : grad)
    if (g.values.size() != w.values.size())
      throw usage_error("production_p: gradient grid size mismatch");
  std::vector<double> integrand(w.values.size(), 0.0);
  for (std::size_t i = 0; i < w.values.size(); ++i) {
    double g2 = 0.0;
    for (const GridField& g : grad) g2 += g.values[i] * g.values[i];
    integrand[i] = p * std::pow(w.values[i], p - 2.0) * g2;
  }
  return integrate_mu(integrand, w.rule);
}

double production_p(const SpectralField& w, double p, const QuadratureRule& rule) {
  const std::vector<GridField> grad = synthesize_gradient(w, rule);
  return production_p(synthesize(w, rule), grad, p);
}

double h_p(double s, double p) {
  require_p_range(p);
  if (!(s >= 0.0)) throw usage_error("h_p argument must be >= 0");
  const double e = s - 1.0;
  if (std::abs(e) < kTaylorBranch) {
    return p / 2.0 + p * (p - 2.0) * e / 6.0 + p * (p - 2.0) * (p - 3.0) * e * e / 24.0;
  }
  if (std::abs(p - 1.0) <= kLogBranch) {
    const double num = s == 0.0 ? 1.0 : s * std::log(s) - e;
    return num / (e * e);
  }
  return (std::pow(s, p) - 1.0 - p * e) / ((p - 1.0) * e * e);
}

double H_p(double inf_w, double sup_w, double p) {
  require_p_range(p);
  if (!(inf_w >= 0.0) || !(sup_w >= inf_w) || !(sup_w > 0.0))
    throw usage_error("H_p needs 0 <= inf_w <= sup_w, sup_w > 0");
  return std::pow(sup_w, 2.0 - p) * h_p(inf_w, p);
}

double H_p(const BoundsEstimate& bounds, double p) {
  return H_p(bounds.inf_w, bounds.sup_w, p);
}

double A_p(double s, double p) {
  require_p_range(p);
  if (!(s >= 0.0)) throw usage_error("A_p argument must be >= 0");
  return std::pow(2.0, 1.0 / p) / std::sqrt(p) *
         std::pow(1.0 + (p - 1.0) * s, 1.0 - p / 2.0) * std::sqrt(s);
}

double beckner_interp(double b1, double b2, double p) {
  require_p_range(p);
  if (!(b1 > 0.0) || !(b2 > 0.0)) throw usage_error("interpolation endpoints must be positive");
  if (p == 1.0) return b1;
  const double a = b1 / (2.0 * b2);
  const double t = -std::expm1(a * log_ratio_q(p));
  return t / (p - 1.0) * b2;
}

double B_np(int n, double p) {
  if (n < 1) throw usage_error("band index n must be >= 1");
  return beckner_interp(2.0, 1.0 / n, p);
}

double lambda_np(int n, double p) {
  require_p_range(p);
  if (n < 1) throw usage_error("band index n must be >= 1");
  if (p == 1.0) return 1.0;
  const double denom = -std::expm1(n * log_ratio_q(p));
  return (2.0 / p) * n * (p - 1.0) / denom;
}

double K_np(int n, double p, double h1_of_w) {
  if (n < 1) throw usage_error("band index n must be >= 1");
  if (!(p > 1.0 && p < 2.0))
    throw usage_error("K_np is defined for p strictly between 1 and 2");
  if (!(h1_of_w > 0.0)) throw usage_error("K_np needs a positive log-entropy bounds value");
  return -std::expm1(2.0 * h1_of_w * log_ratio_q(p)) / (n * (p - 1.0));
}

}  // namespace entroflow
