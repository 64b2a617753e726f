#include "entroflow/quadrature.hpp"

#include <lapacke.h>

#include <cmath>
#include <string>

#include "entroflow/errors.hpp"

namespace entroflow {

QuadratureRule::QuadratureRule(int dimension, std::vector<double> nodes,
                               std::vector<double> weights)
    : dimension_(dimension), nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (dimension < 1 || dimension > 3) throw usage_error("quadrature dimension must be 1..3");
  if (nodes_.empty() || nodes_.size() != weights_.size())
    throw usage_error("quadrature nodes/weights size mismatch");
  point_count_ = 1;
  for (int j = 0; j < dimension_; ++j) point_count_ *= static_cast<std::int64_t>(nodes_.size());
}

void QuadratureRule::point(std::int64_t index, std::span<double> out) const {
  if (index < 0 || index >= point_count_) throw usage_error("tensor point index out of range");
  if (static_cast<int>(out.size()) != dimension_) throw usage_error("point buffer size mismatch");
  const auto m = static_cast<std::int64_t>(nodes_.size());
  for (int j = dimension_ - 1; j >= 0; --j) {
    out[static_cast<std::size_t>(j)] = nodes_[static_cast<std::size_t>(index % m)];
    index /= m;
  }
}

double QuadratureRule::weight(std::int64_t index) const {
  if (index < 0 || index >= point_count_) throw usage_error("tensor point index out of range");
  const auto m = static_cast<std::int64_t>(nodes_.size());
  double w = 1.0;
  for (int j = 0; j < dimension_; ++j) {
    w *= weights_[static_cast<std::size_t>(index % m)];
    index /= m;
  }
  return w;
}

QuadratureRule gauss_hermite_rule(int points_per_axis, int dimension) {
  const int m = points_per_axis;
  if (m < 1) throw usage_error("quadrature order must be >= 1");
  if (m > 512) throw usage_error("quadrature order capped at 512");

  std::vector<double> diag(static_cast<std::size_t>(m), 0.0);
  std::vector<double> off(static_cast<std::size_t>(m > 1 ? m - 1 : 1), 0.0);
  for (int i = 1; i < m; ++i) off[static_cast<std::size_t>(i) - 1] = std::sqrt(static_cast<double>(i));

  std::vector<double> z(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0.0);
  const lapack_int info = LAPACKE_dstev(LAPACK_ROW_MAJOR, 'V', m, diag.data(), off.data(),
                                        z.data(), m);
  if (info != 0) throw domain_error("tridiagonal eigensolve failed, info=" + std::to_string(info));

  std::vector<double> nodes(static_cast<std::size_t>(m));
  std::vector<double> weights(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    nodes[static_cast<std::size_t>(i)] = diag[static_cast<std::size_t>(i)];
    const double first = z[static_cast<std::size_t>(i)];  // row 0, column i
    weights[static_cast<std::size_t>(i)] = first * first;
  }

  // Nodes of a Gauss-Hermite rule are exactly symmetric; enforce the
  // symmetry the eigensolver only delivers to rounding.
  for (int i = 0; i < m / 2; ++i) {
    const int j = m - 1 - i;
    const double x = 0.5 * (nodes[static_cast<std::size_t>(j)] - nodes[static_cast<std::size_t>(i)]);
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(j)] = x;
    const double w = 0.5 * (weights[static_cast<std::size_t>(i)] + weights[static_cast<std::size_t>(j)]);
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(j)] = w;
  }
  if (m % 2 == 1) nodes[static_cast<std::size_t>(m) / 2] = 0.0;

  double sum = 0.0;
  for (double w : weights) sum += w;
  for (double& w : weights) w /= sum;

  return QuadratureRule(dimension, std::move(nodes), std::move(weights));
}

double integrate_mu(std::span<const double> values, const QuadratureRule& rule) {
  if (static_cast<std::int64_t>(values.size()) != rule.point_count())
    throw usage_error("value array does not match tensor point count");
  const int m = rule.points_per_axis();
  const int d = rule.dimension();
  const auto& w = rule.axis_weights();
  double sum = 0.0;
  for (std::int64_t idx = 0; idx < rule.point_count(); ++idx) {
    std::int64_t rest = idx;
    double wt = 1.0;
    for (int j = 0; j < d; ++j) {
      wt *= w[static_cast<std::size_t>(rest % m)];
      rest /= m;
    }
    sum += wt * values[static_cast<std::size_t>(idx)];
  }
  return sum;
}

}  // namespace entroflow
