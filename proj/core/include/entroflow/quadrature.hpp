#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace entroflow {

// Tensor Gauss-Hermite rule for the standard Gaussian measure mu on R^d.
// The same univariate rule is used on every axis; a d-axis rule with m
// points per axis integrates polynomials up to degree 2m-1 per axis
// exactly.  Tensor points are indexed row-major with axis 0 slowest.
class QuadratureRule {
public:
  // Single midpoint rule; placeholder for aggregate members awaiting a real rule.
  QuadratureRule() : QuadratureRule(1, {0.0}, {1.0}) {}
  QuadratureRule(int dimension, std::vector<double> nodes, std::vector<double> weights);

  int dimension() const noexcept { return dimension_; }
  int points_per_axis() const noexcept { return static_cast<int>(nodes_.size()); }
  std::int64_t point_count() const noexcept { return point_count_; }
  const std::vector<double>& axis_nodes() const noexcept { return nodes_; }
  const std::vector<double>& axis_weights() const noexcept { return weights_; }

  // Coordinates of tensor point `index` written into `out` (size d).
  void point(std::int64_t index, std::span<double> out) const;
  double weight(std::int64_t index) const;

private:
  int dimension_;
  std::vector<double> nodes_;    // ascending, symmetric about 0
  std::vector<double> weights_;  // positive, sum exactly renormalized to 1
  std::int64_t point_count_;
};

// Univariate nodes/weights by Golub-Welsch: eigenvalues and first
// eigenvector components of the Jacobi matrix with zero diagonal and
// off-diagonal sqrt(1),...,sqrt(m-1).
QuadratureRule gauss_hermite_rule(int points_per_axis, int dimension);

// sum_i w_i f_i over the tensor grid; `values` must have one entry per
// tensor point in rule order.
double integrate_mu(std::span<const double> values, const QuadratureRule& rule);

}  // namespace entroflow
