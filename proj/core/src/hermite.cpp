#include "entroflow/hermite.hpp"

#include <cmath>

#include "entroflow/errors.hpp"

namespace entroflow {

std::vector<double> hermite_eval_all(int max_degree, double y) {
  if (max_degree < 0) throw usage_error("max degree must be >= 0");
  if (!std::isfinite(y)) throw domain_error("hermite evaluation point must be finite");
  std::vector<double> h(static_cast<std::size_t>(max_degree) + 1);
  h[0] = 1.0;
  if (max_degree >= 1) h[1] = y;
  for (int n = 1; n < max_degree; ++n) {
    h[static_cast<std::size_t>(n) + 1] =
        (y * h[static_cast<std::size_t>(n)] -
         std::sqrt(static_cast<double>(n)) * h[static_cast<std::size_t>(n) - 1]) /
        std::sqrt(static_cast<double>(n) + 1.0);
  }
  return h;
}

std::vector<double> hermite_eval_table(int max_degree, std::span<const double> points) {
  if (max_degree < 0) throw usage_error("max degree must be >= 0");
  const std::size_t np = points.size();
  std::vector<double> table((static_cast<std::size_t>(max_degree) + 1) * np);
  for (std::size_t i = 0; i < np; ++i) {
    const std::vector<double> h = hermite_eval_all(max_degree, points[i]);
    for (int deg = 0; deg <= max_degree; ++deg)
      table[static_cast<std::size_t>(deg) * np + i] = h[static_cast<std::size_t>(deg)];
  }
  return table;
}

double hermite_deriv_coeff(int n) {
  if (n < 0) throw usage_error("degree must be >= 0");
  return n == 0 ? 0.0 : std::sqrt(static_cast<double>(n));
}

double tensor_eval(const MultiIndex& k, std::span<const double> x) {
  if (static_cast<int>(x.size()) != k.dimension())
    throw usage_error("point dimension does not match multi-index");
  double value = 1.0;
  for (int j = 0; j < k.dimension(); ++j) {
    const std::vector<double> h = hermite_eval_all(k[j], x[static_cast<std::size_t>(j)]);
    value *= h[static_cast<std::size_t>(k[j])];
  }
  return value;
}

}  // namespace entroflow
