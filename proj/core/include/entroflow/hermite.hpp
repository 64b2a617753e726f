#pragma once

#include <span>
#include <vector>

#include "entroflow/multi_index.hpp"

namespace entroflow {

// Orthonormal Hermite polynomials with respect to the standard Gaussian
// weight: E[h_m(Y) h_n(Y)] = delta_{mn} for Y ~ N(0,1).  Three-term
// recurrence h_{n+1}(y) = (y h_n(y) - sqrt(n) h_{n-1}(y)) / sqrt(n+1),
// h_0 = 1, h_1 = y.

// Values h_0(y),...,h_N(y).
std::vector<double> hermite_eval_all(int max_degree, double y);

// Row-major table t[deg * points.size() + i] = h_deg(points[i]).
std::vector<double> hermite_eval_table(int max_degree, std::span<const double> points);

// h_n' = sqrt(n) h_{n-1}; this is the sqrt(n) factor (0 for n = 0).
double hermite_deriv_coeff(int n);

// Tensor product H_k(x) = prod_j h_{k_j}(x_j).
double tensor_eval(const MultiIndex& k, std::span<const double> x);

}  // namespace entroflow
