#pragma once

#include <vector>

#include "levysup/model.hpp"

namespace levysup {

// One cumulant root in the closed left half plane, stored with flipped sign:
// the actual solution of k(z) = s is z = -r, so Re r >= 0 throughout.
struct RootInfo {
  cdouble r;
  int multiplicity = 1;
};

struct RootSet {
  double s = 0.0;
  int N = 0;  // total count including multiplicity
  std::vector<RootInfo> roots;  // ascending Re r; roots[0] is the real r1
};

enum class RootMethod { Auto, Rational, Contour };

// All N solutions of k(-r) = s with Re r >= 0, where N is determined by the
// case split. For s = 0 the known root r = 0 is included (it leads the list).
// Rational positive-jump transforms go through a polynomial companion matrix;
// anything else is located by argument-principle counts over shrinking boxes.
RootSet find_roots(const ModelSpec& m, double s, RootMethod method = RootMethod::Auto);

// Slope limit s -> 0 of r1(s)/s, equal to 1/|mean| for models with negative
// mean. Throws MeanNotNegative otherwise.
double root_slope_at_zero(const ModelSpec& m);

// Unique positive real solution of k(r) = 0 for models with negative mean;
// governs the exponential tail decay of the supremum.
double lundberg_exponent(const ModelSpec& m);

}  // namespace levysup
