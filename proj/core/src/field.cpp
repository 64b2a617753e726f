#include "entroflow/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "entroflow/errors.hpp"
#include "entroflow/hermite.hpp"
#include "entroflow/text_io.hpp"

namespace entroflow {

SpectralField::SpectralField(IndexSet basis, std::vector<double> coefficients)
    : basis_(std::move(basis)), coeffs_(std::move(coefficients)) {
  if (static_cast<int>(coeffs_.size()) != basis_.size())
    throw usage_error("coefficient count does not match basis size");
}

SpectralField SpectralField::zero(int dimension, int max_degree) {
  IndexSet basis(dimension, max_degree);
  std::vector<double> c(static_cast<std::size_t>(basis.size()), 0.0);
  return SpectralField(std::move(basis), std::move(c));
}

SpectralField SpectralField::constant_one(int dimension, int max_degree) {
  SpectralField f = zero(dimension, max_degree);
  f.set_coeff(0, 1.0);
  return f;
}

double SpectralField::coeff_of(const std::vector<int>& k) const {
  const int pos = basis_.position_of(k);
  return pos < 0 ? 0.0 : coeffs_[static_cast<std::size_t>(pos)];
}

void SpectralField::set_coeff_of(const std::vector<int>& k, double value) {
  const int pos = basis_.position_of(k);
  if (pos < 0) throw usage_error("multi-index outside basis");
  coeffs_[static_cast<std::size_t>(pos)] = value;
}

DenseGridSpec DenseGridSpec::default_for(int dimension, int max_degree) {
  DenseGridSpec spec;
  spec.half_width = std::max(6.0, std::sqrt(2.0 * max_degree + 4.0));
  spec.spacing = dimension <= 2 ? 0.02 : 0.1;
  return spec;
}

std::vector<double> DenseGridSpec::axis_coords() const {
  if (!(half_width > 0.0) || !(spacing > 0.0))
    throw usage_error("dense grid needs positive half-width and spacing");
  const int m = static_cast<int>(std::ceil(half_width / spacing - 1e-12));
  std::vector<double> coords;
  coords.reserve(static_cast<std::size_t>(2 * m + 1));
  for (int j = -m; j <= m; ++j) coords.push_back(spacing * j);
  return coords;
}

double evaluate_point(const SpectralField& field, std::span<const double> x) {
  if (static_cast<int>(x.size()) != field.dimension())
    throw usage_error("point dimension mismatch");
  const int d = field.dimension();
  const int N = field.max_degree();
  // Per-axis value tables, then one pass over the basis.
  std::vector<std::vector<double>> h(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) h[static_cast<std::size_t>(j)] = hermite_eval_all(N, x[static_cast<std::size_t>(j)]);
  double sum = 0.0;
  for (int pos = 0; pos < field.size(); ++pos) {
    const MultiIndex& k = field.basis().at(pos);
    double b = 1.0;
    for (int j = 0; j < d; ++j) b *= h[static_cast<std::size_t>(j)][static_cast<std::size_t>(k[j])];
    sum += field.coeff(pos) * b;
  }
  return sum;
}

namespace {

// values[idx] = sum_k c_k prod_j table[k_j][digit_j(idx)], axis 0 slowest.
std::vector<double> eval_tensor(const SpectralField& field, std::span<const double> axis_coords) {
  const int d = field.dimension();
  const std::size_t m = axis_coords.size();
  const std::vector<double> table = hermite_eval_table(field.max_degree(), axis_coords);

  std::int64_t total = 1;
  for (int j = 0; j < d; ++j) total *= static_cast<std::int64_t>(m);
  std::vector<double> values(static_cast<std::size_t>(total), 0.0);

  std::vector<std::size_t> digit(static_cast<std::size_t>(d), 0);
  for (std::int64_t idx = 0; idx < total; ++idx) {
    std::int64_t rest = idx;
    for (int j = d - 1; j >= 0; --j) {
      digit[static_cast<std::size_t>(j)] = static_cast<std::size_t>(rest % static_cast<std::int64_t>(m));
      rest /= static_cast<std::int64_t>(m);
    }
    double sum = 0.0;
    for (int pos = 0; pos < field.size(); ++pos) {
      const MultiIndex& k = field.basis().at(pos);
      double b = field.coeff(pos);
      for (int j = 0; j < d; ++j)
        b *= table[static_cast<std::size_t>(k[j]) * m + digit[static_cast<std::size_t>(j)]];
      sum += b;
    }
    values[static_cast<std::size_t>(idx)] = sum;
  }
  return values;
}

}  // namespace

std::vector<double> evaluate_lattice(const SpectralField& field,
                                     std::span<const double> axis_coords) {
  if (axis_coords.empty()) throw usage_error("empty lattice");
  return eval_tensor(field, axis_coords);
}

GridField synthesize(const SpectralField& field, const QuadratureRule& rule) {
  if (rule.dimension() != field.dimension())
    throw usage_error("quadrature dimension does not match field");
  return GridField{rule, eval_tensor(field, rule.axis_nodes())};
}

SpectralField analyze(const GridField& grid, int max_degree) {
  const QuadratureRule& rule = grid.rule;
  if (static_cast<std::int64_t>(grid.values.size()) != rule.point_count())
    throw usage_error("grid values do not match rule point count");
  const int d = rule.dimension();
  const std::size_t m = static_cast<std::size_t>(rule.points_per_axis());
  const std::vector<double> table = hermite_eval_table(max_degree, rule.axis_nodes());
  const std::vector<double>& w = rule.axis_weights();

  SpectralField out = SpectralField::zero(d, max_degree);
  std::vector<double> coeffs(static_cast<std::size_t>(out.size()), 0.0);
  std::vector<std::size_t> digit(static_cast<std::size_t>(d), 0);
  for (std::int64_t idx = 0; idx < rule.point_count(); ++idx) {
    std::int64_t rest = idx;
    double wt = 1.0;
    for (int j = d - 1; j >= 0; --j) {
      digit[static_cast<std::size_t>(j)] = static_cast<std::size_t>(rest % static_cast<std::int64_t>(m));
      rest /= static_cast<std::int64_t>(m);
      wt *= w[digit[static_cast<std::size_t>(j)]];
    }
    const double wv = wt * grid.values[static_cast<std::size_t>(idx)];
    for (int pos = 0; pos < out.size(); ++pos) {
      const MultiIndex& k = out.basis().at(pos);
      double b = 1.0;
      for (int j = 0; j < d; ++j)
        b *= table[static_cast<std::size_t>(k[j]) * m + digit[static_cast<std::size_t>(j)]];
      coeffs[static_cast<std::size_t>(pos)] += wv * b;
    }
  }
  return SpectralField(IndexSet(d, max_degree), std::move(coeffs));
}

std::vector<GridField> synthesize_gradient(const SpectralField& field,
                                           const QuadratureRule& rule) {
  std::vector<GridField> grad;
  grad.reserve(static_cast<std::size_t>(field.dimension()));
  for (int j = 0; j < field.dimension(); ++j) grad.push_back(synthesize(derivative(field, j), rule));
  return grad;
}

SpectralField derivative(const SpectralField& field, int axis) {
  if (axis < 0 || axis >= field.dimension()) throw usage_error("derivative axis out of range");
  SpectralField out = SpectralField::zero(field.dimension(), field.max_degree());
  std::vector<int> shifted;
  for (int pos = 0; pos < field.size(); ++pos) {
    const MultiIndex& k = field.basis().at(pos);
    if (k[axis] == 0) continue;
    shifted = k.entries();
    shifted[static_cast<std::size_t>(axis)] -= 1;
    const int target = field.basis().position_of(shifted);
    out.set_coeff(target, out.coeff(target) + field.coeff(pos) * hermite_deriv_coeff(k[axis]));
  }
  return out;
}

double gradient_sq_norm(const SpectralField& field) {
  double sum = 0.0;
  for (int pos = 0; pos < field.size(); ++pos) {
    const double c = field.coeff(pos);
    sum += field.basis().at(pos).total_degree() * c * c;
  }
  return sum;
}

double lp_norm_mu(const SpectralField& field, double p, const QuadratureRule& rule) {
  if (!(p >= 1.0)) throw usage_error("lp norm needs p >= 1");
  const GridField grid = synthesize(field, rule);
  std::vector<double> powered(grid.values.size());
  for (std::size_t i = 0; i < grid.values.size(); ++i)
    powered[i] = std::pow(std::abs(grid.values[i]), p);
  return std::pow(integrate_mu(powered, rule), 1.0 / p);
}

double l2_distance_to_one(const SpectralField& field) {
  double sum = 0.0;
  for (int pos = 0; pos < field.size(); ++pos) {
    const double c = pos == 0 ? field.coeff(0) - 1.0 : field.coeff(pos);
    sum += c * c;
  }
  return std::sqrt(sum);
}

BoundsEstimate estimate_bounds(const SpectralField& field, const DenseGridSpec& spec) {
  const double needed = std::sqrt(2.0 * field.max_degree() + 4.0);
  if (spec.half_width < needed - 1e-12)
    throw usage_error("bounds lattice half-width below oscillation region " + format_g17(needed));
  const std::vector<double> coords = spec.axis_coords();
  const std::vector<double> values = evaluate_lattice(field, coords);
  BoundsEstimate est;
  est.inf_w = *std::min_element(values.begin(), values.end());
  est.sup_w = *std::max_element(values.begin(), values.end());
  est.half_width = spec.half_width;
  est.spacing = spec.spacing;
  est.coarse = spec.spacing > 0.05;
  return est;
}

std::string to_json(const SpectralField& field) {
  JsonWriter w;
  w.begin_object();
  w.key("dimension").value(field.dimension());
  w.key("max_degree").value(field.max_degree());
  w.key("coefficients").begin_array();
  for (int pos = 0; pos < field.size(); ++pos) w.value(field.coeff(pos));
  w.end_array();
  w.end_object();
  return w.str() + "\n";
}

SpectralField field_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw usage_error(std::string("field JSON parse error: ") + e.what());
  }
  if (!j.is_object() || !j.contains("dimension") || !j.contains("max_degree") ||
      !j.contains("coefficients"))
    throw usage_error("field JSON needs dimension, max_degree, coefficients");
  const int d = j.at("dimension").get<int>();
  const int N = j.at("max_degree").get<int>();
  const auto& arr = j.at("coefficients");
  if (!arr.is_array()) throw usage_error("coefficients must be an array");
  IndexSet basis(d, N);
  if (static_cast<int>(arr.size()) != basis.size())
    throw usage_error("coefficient count does not match basis size " + std::to_string(basis.size()));
  std::vector<double> c;
  c.reserve(arr.size());
  for (const auto& v : arr) c.push_back(v.get<double>());
  return SpectralField(std::move(basis), std::move(c));
}

}  // namespace entroflow
