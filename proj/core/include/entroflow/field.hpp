#pragma once

#include <span>
#include <string>
#include <vector>

#include "entroflow/multi_index.hpp"
#include "entroflow/quadrature.hpp"

namespace entroflow {

// Density-ratio field w = sum_k c_k H_k in the orthonormal tensor
// Hermite basis, coefficients stored in graded-lex order.  c_0 is the
// mass of w against the Gaussian measure.
class SpectralField {
public:
  SpectralField(IndexSet basis, std::vector<double> coefficients);

  static SpectralField zero(int dimension, int max_degree);
  // w = 1 (c_0 = 1, everything else 0).
  static SpectralField constant_one(int dimension, int max_degree);

  int dimension() const noexcept { return basis_.dimension(); }
  int max_degree() const noexcept { return basis_.max_degree(); }
  int size() const noexcept { return basis_.size(); }
  const IndexSet& basis() const noexcept { return basis_; }
  const std::vector<double>& coefficients() const noexcept { return coeffs_; }

  double coeff(int position) const { return coeffs_.at(static_cast<std::size_t>(position)); }
  void set_coeff(int position, double value) { coeffs_.at(static_cast<std::size_t>(position)) = value; }
  // By multi-index entries; reading an index outside the basis gives 0,
  // writing one throws.
  double coeff_of(const std::vector<int>& k) const;
  void set_coeff_of(const std::vector<int>& k, double value);

private:
  IndexSet basis_;
  std::vector<double> coeffs_;
};

// Pointwise samples of a field over the tensor grid of a quadrature
// rule, in rule point order.
struct GridField {
  QuadratureRule rule;
  std::vector<double> values;
};

// Symmetric evaluation lattice used for inf/sup estimation: coordinates
// j*spacing for j = -m..m with m = ceil(half_width / spacing).
struct DenseGridSpec {
  double half_width = 6.0;
  double spacing = 0.02;

  // half_width = max(6, sqrt(2N+4)) covers both the Gaussian bulk and
  // the oscillation region of degree-N Hermite functions; d = 3 gets a
  // coarser default spacing to keep the lattice tractable.
  static DenseGridSpec default_for(int dimension, int max_degree);

  std::vector<double> axis_coords() const;
};

struct BoundsEstimate {
  double inf_w = 0.0;
  double sup_w = 0.0;
  double half_width = 0.0;
  double spacing = 0.0;
  bool coarse = false;  // spacing above the 0.05 trust threshold
};

// --- evaluation ---------------------------------------------------------

double evaluate_point(const SpectralField& field, std::span<const double> x);

// Values over the tensor grid axis_coords^d, row-major, axis 0 slowest.
std::vector<double> evaluate_lattice(const SpectralField& field,
                                     std::span<const double> axis_coords);

// Values at the tensor points of a quadrature rule.
GridField synthesize(const SpectralField& field, const QuadratureRule& rule);

// c_k = sum_i w_i v_i H_k(x_i).  Exact inverse of synthesize when the
// rule integrates degree max_degree + field degree exactly.
SpectralField analyze(const GridField& grid, int max_degree);

// Partial derivatives d/dx_j w sampled on the rule grid, one GridField
// per axis.
std::vector<GridField> synthesize_gradient(const SpectralField& field,
                                           const QuadratureRule& rule);

// --- calculus and norms --------------------------------------------------

// Coefficient field of d/dx_axis w (degree drops by one).
SpectralField derivative(const SpectralField& field, int axis);

// integral |grad w|^2 dmu = sum_k |k| c_k^2, no quadrature involved.
double gradient_sq_norm(const SpectralField& field);

// (integral |w|^p dmu)^(1/p) by quadrature, p >= 1.
double lp_norm_mu(const SpectralField& field, double p, const QuadratureRule& rule);

// L^2(mu) distance to the constant 1: sqrt((c_0-1)^2 + sum_{k!=0} c_k^2).
double l2_distance_to_one(const SpectralField& field);

// Min/max over the dense lattice.  Requires half_width >=
// sqrt(2*max_degree+4) so the lattice covers the oscillation region.
BoundsEstimate estimate_bounds(const SpectralField& field, const DenseGridSpec& spec);

// --- serialization -------------------------------------------------------

// {"dimension": d, "max_degree": N, "coefficients": [...]} with
// coefficients in graded-lex order and 17 significant digits.
std::string to_json(const SpectralField& field);
SpectralField field_from_json(const std::string& text);

}  // namespace entroflow
