#pragma once

#include <complex>
#include <utility>

#include "levysup/model.hpp"

namespace levysup {

// Exponentially tilted tail transform of the positive jump measure
// Pi(dz) = rate * f+(z) dz:
//
//   pi_tilde(x, u) = int_x^inf exp(u (x - z)) Pi(dz),   x >= 0, Re u >= 0.
//
// Closed forms for every catalog except Tabulated, which integrates each
// linear segment by adaptive quadrature.
cdouble pi_tilde(const ModelSpec& m, double x, cdouble u);

// p-th derivative in the tilt: d^p/du^p pi_tilde(x, u). The integrand picks up
// (x - z)^p, so these are the kernels the supremum density is built from.
cdouble pi_tilde_deriv(const ModelSpec& m, double x, cdouble u, int p);

// B(x, u) = d/du pi_tilde(x, u).
cdouble b_transform(const ModelSpec& m, double x, cdouble u);

// Oscillatory pair at u = v + i w:
//   C1 = int_x^inf exp(v(x-z)) cos(w(x-z)) Pi(dz) = Re pi_tilde,
//   C2 = int_x^inf exp(v(x-z)) sin(w(x-z)) Pi(dz) = Im pi_tilde.
std::pair<double, double> c_transforms(const ModelSpec& m, double x, double v,
                                       double w);

// Direct quadrature of the defining integral; reference path for tests and
// the evaluation route for Tabulated jumps.
cdouble pi_tilde_quad(const ModelSpec& m, double x, cdouble u, int p);

}  // namespace levysup
