#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "levysup/infimum.hpp"
#include "levysup/model.hpp"

namespace levysup {

// Law of the all-time supremum of a negative-mean process: the supremum is
// the lifetime position of a subordinator with drift a_star and jump density
// pi_star, run for an independent unit-rate exponential time. rho, c_star
// and f0 are the geometric-compound parameters derived from that triplet.
struct SupremumLaw {
  ModelSpec model;
  InfimumDensity limit;  // s -> 0 infimum object the assembly rests on

  double a_star = 0.0;
  double direct_weight = 0.0;  // creeping case: weight of the raw positive
                               // jump density inside pi_star
  double mass = 0.0;           // integral of pi_star over (0, inf)
  double rho = 0.0;            // mass / (1 + mass)
  double c_star = 0.0;         // (1 + mass) / a_star; 0 when a_star = 0

  // Jump density of the supremum subordinator at x > 0.
  double pi_star(double x) const;
  // Normalized jump density pi_star / mass; needs mass > 0.
  double f0(double x) const;
};

// Full assembly at s = 0. Requires negative mean and finite variance.
SupremumLaw supremum_law(const ModelSpec& m);

// E exp(r sup X at kill time theta_s), s > 0, via the killed subordinator
// triplet in closed form (no quadrature on the main path).
cdouble killed_supremum_mgf(const ModelSpec& m, double s, cdouble r);

// E exp(r sup X) = 1 / (1 - a* r - int (e^{rx}-1) pi*(x) dx), the jump
// integral by adaptive quadrature. Re r <= 0 always works; real r > 0 must
// stay below the singularity.
cdouble supremum_mgf(const SupremumLaw& law, cdouble r);

// Geometric-compound parameters: sup X = xi_0 + sum_{i=1}^{nu} (xi_i + eta_i)
// with nu ~ Geometric(1 - rho), xi ~ Exp(c*), eta ~ F0.
struct GeometricCompound {
  double rho = 0.0;
  double c_star = 0.0;
  std::function<double(double)> f0;
};
GeometricCompound geometric_compound(const SupremumLaw& law);

// n i.i.d. draws of the supremum, deterministic for a given seed. Draw order
// per sample: nu, then xi_0, then (eta_i, xi_i) per geometric success, so a
// fixed seed replays identically. Throws DriftZero when a_star = 0.
std::vector<double> sample_supremum(const SupremumLaw& law,
                                    std::uint64_t rng_seed, std::size_t n);

struct CdfOptions {
  double x_max = 0.0;  // 0: pick from the decay exponent, verify tail mass
  int grid_log2 = 14;  // 2^grid_log2 uniform grid points on [0, x_max]
  bool self_check = false;  // sample-based consistency check (GridTooCoarse)
  std::uint64_t self_check_seed = 24601;
  std::size_t self_check_n = 1000000;
};

// CDF of the supremum on the requested points via the truncated geometric
// convolution series. The n = 0 term is evaluated in closed form at each
// requested x; the n >= 1 terms come from a uniform grid (linear
// interpolation between nodes). Works for a_star > 0 (Exp-factor series) and
// a_star = 0 (pure compound-geometric with a symbolic atom at 0).
std::vector<double> supremum_cdf(const SupremumLaw& law,
                                 const std::vector<double>& x_grid,
                                 const CdfOptions& opt = {});

}  // namespace levysup
