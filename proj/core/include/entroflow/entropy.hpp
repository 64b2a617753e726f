#pragma once

#include <span>

#include "entroflow/field.hpp"
#include "entroflow/quadrature.hpp"

namespace entroflow {

// Generalized entropies of a positive unit-mass density ratio w against
// the Gaussian measure, the entropy-production functionals paired with
// them, and the closed-form constants of the comparison inequalities.
// Throughout, p is the entropy exponent with the working range [1, 2];
// p = 1 is the log entropy branch, p = 2 the quadratic one.

// E_p[w] = integral (w^p - w)/(p-1) dmu (equals the textbook
// (w^p - 1)/(p-1) form under unit mass, but does not amplify the
// quadrature mass error as p -> 1); E_1[w] = integral w log w dmu.
// Requires mass within 1e-8 of one and w > 0 at every grid point.
double entropy_p(const GridField& w, double p);
double entropy_p(const SpectralField& w, double p, const QuadratureRule& rule);

// integral |grad w|^2 / w dmu.
double fisher_info(const GridField& w, std::span<const GridField> grad);
double fisher_info(const SpectralField& w, const QuadratureRule& rule);

// I_p[w] = p * integral w^(p-2) |grad w|^2 dmu, the entropy production
// of the Ornstein-Uhlenbeck flow (= (4/p) integral |grad w^(p/2)|^2 dmu
// by the chain rule).  I_1 is Fisher information.
double production_p(const GridField& w, std::span<const GridField> grad, double p);
double production_p(const SpectralField& w, double p, const QuadratureRule& rule);

// h_p(s) = [s^p - 1 - p(s-1)] / [(p-1)(s-1)^2], the normalized
// curvature of s -> s^p; h_1(s) = [s log s - (s-1)] / (s-1)^2.
// h_p(1) = p/2, h_p(0) = 1; a Taylor branch covers |s-1| < 1e-4.
double h_p(double s, double p);

// H_p[w] = sup(w)^(2-p) * h_p(inf w), the uniform-bounds functional
// entering the improved entropy--production inequalities.  H_2 = 1 for
// every admissible w; H_1 >= 1/2 with equality only at w = 1.
double H_p(double inf_w, double sup_w, double p);
double H_p(const BoundsEstimate& bounds, double p);

// A_p(s) = 2^(1/p) / sqrt(p) * (1 + (p-1)s)^(1 - p/2) * sqrt(s):
// Csiszar-Kullback envelope, ||w - 1||_{L^p} <= A_p(E_p[w]).
double A_p(double s, double p);

// Interpolated sharp constant between the limiting values b1 at p = 1
// and b2 at p = 2: (1/(p-1)) [1 - ((2-p)/p)^(b1/(2 b2))] b2.
double beckner_interp(double b1, double b2, double p);

// B_{n,p} = beckner_interp(2, 1/n, p): constant of the spectral-gap
// entropy inequality on the n-th band and above.
double B_np(int n, double p);

// lambda(n,p) = (2/p) n (p-1) / (1 - ((2-p)/p)^n): the linearized decay
// rate; lambda(n,1) = 1, lambda(n,2) = n.
double lambda_np(int n, double p);

// K[n,p,w] = (1/(n(p-1))) [1 - ((2-p)/p)^(2 H_1[w])]: coupling of the
// p-entropy decay rate 4/(p K) to the log-entropy bounds functional.
// Defined for p strictly inside (1,2).
double K_np(int n, double p, double h1_of_w);

}  // namespace entroflow
