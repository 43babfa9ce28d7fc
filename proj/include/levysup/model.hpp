#pragma once

#include <complex>
#include <string>
#include <vector>

#include "levysup/poly.hpp"

namespace levysup {

// A one-dimensional Levy process
//   X_t = a t + sigma W_t + sum of positive jumps - sum of negative jumps,
// with compound-Poisson jumps in both directions. Negative jumps must have a
// matrix-exponential (rational transform) density; positive jumps may come
// from any catalog below.

enum class PosKind { Exponential, Erlang, Hyperexponential, HalfNormal, Tabulated };

struct PositiveJumps {
  double rate = 0.0;  // Poisson intensity of upward jumps
  PosKind kind = PosKind::Exponential;
  double beta = 1.0;            // Exponential / Erlang / HalfNormal scale
  int n = 1;                    // Erlang shape
  std::vector<double> weights;  // Hyperexponential
  std::vector<double> rates;
  std::vector<double> tab_x;  // Tabulated: nodes of a piecewise-linear density
  std::vector<double> tab_f;
};

enum class NegKind { Hyperexponential, Erlang, PoleForm };

// One term of a matrix-exponential density written in partial-fraction form:
// contribution sum_{j=0..k} a[j] * (-y)^j * exp(b y) for y < 0 after the
// sign convention used throughout: the density of the jump magnitude Z > 0 is
// f(z) = sum_terms sum_j a[j] z^j exp(-b z).
struct PoleTerm {
  cdouble b;               // pole location, Re b > 0
  int k = 0;               // highest power of z attached to this pole
  std::vector<cdouble> a;  // coefficients a[0..k]
};

struct NegativeJumps {
  double rate = 0.0;  // Poisson intensity of downward jumps
  NegKind kind = NegKind::Erlang;
  std::vector<double> weights;  // Hyperexponential
  std::vector<double> rates;
  int d = 1;       // Erlang shape
  double b = 1.0;  // Erlang rate
  std::vector<PoleTerm> poles;  // PoleForm
};

struct ModelSpec {
  double drift_a = 0.0;
  double sigma = 0.0;
  PositiveJumps pos;
  NegativeJumps neg;
};

// Case split for the Wiener-Hopf factorisation. NS: the infimum has no atom
// at zero (sigma > 0, or sigma = 0 with a < 0). S: the process creeps only
// upward (sigma = 0, a >= 0) and the killed infimum keeps an atom at 0.
enum class CaseTag { NS, S };

struct CaseInfo {
  CaseTag tag;
  int N;  // number of cumulant roots in the closed left half plane
  int D;  // denominator degree of the negative-jump transform
};

// --- validation -----------------------------------------------------------

// Throws Error(Err::Validation) on any structural defect: negative rates,
// non-normalised densities, a PoleForm whose dominant pole is not real, a
// tabulated density that is negative or not normalised, and so on.
void validate(const ModelSpec& m);

// --- canonical pole form ---------------------------------------------------

// Negative-jump density in canonical pole form, sorted by ascending Re b,
// whatever catalog entry it was specified with. Conversion of the
// Hyperexponential and Erlang catalogs is exact.
std::vector<PoleTerm> pole_form(const NegativeJumps& neg);

// --- transforms and moments -------------------------------------------------

// Moment generating function of the positive jump size, E exp(r J+), and its
// first p derivatives in r. The rational catalogs are continued analytically
// past their abscissa poles; evaluation exactly at a pole throws DomainError.
cdouble pos_mgf(const PositiveJumps& pos, cdouble r);
std::vector<cdouble> pos_mgf_derivs(const PositiveJumps& pos, cdouble r, int p);
double pos_mean(const PositiveJumps& pos);
double pos_moment2(const PositiveJumps& pos);
double pos_density(const PositiveJumps& pos, double x);

// E exp(-r |J-|) written as a function of r with the sign convention that
// matches the cumulant below: neg_mgf(r) = E exp(r * (-|J-|)).
cdouble neg_mgf(const NegativeJumps& neg, cdouble r);
double neg_mean(const NegativeJumps& neg);     // E |J-| > 0
double neg_moment2(const NegativeJumps& neg);  // E |J-|^2
double neg_density(const NegativeJumps& neg, double z);  // density of |J-| at z > 0

// --- cumulant ---------------------------------------------------------------

// k(r) = log E exp(r X_1)
//      = a r + sigma^2 r^2 / 2 + lam+ (M+(r) - 1) + lam- (M-(r) - 1).
// Exactly zero at r = 0. Rational pieces are continued analytically;
// evaluation at a pole of M- throws DomainError.
cdouble cumulant(const ModelSpec& m, cdouble r);
cdouble cumulant_deriv(const ModelSpec& m, cdouble r);

double mean(const ModelSpec& m);      // k'(0)
double variance(const ModelSpec& m);  // k''(0)

CaseInfo classify(const ModelSpec& m);

// True when the positive-jump transform is a rational function (or there are
// no positive jumps), so the cumulant roots are roots of a polynomial.
bool pos_is_rational(const PositiveJumps& pos);

}  // namespace levysup
