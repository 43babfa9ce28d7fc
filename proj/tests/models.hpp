#pragma once

// Shared model fixtures. Each returns a fresh value so tests can tweak
// fields without coupling.

#include <cmath>
#include <complex>
#include <vector>

#include "levysup/model.hpp"

namespace fixtures {

using levysup::ModelSpec;
using levysup::NegKind;
using levysup::PoleTerm;
using levysup::PosKind;
using cdouble = std::complex<double>;

// Upward unit drift killed by Exp(1) downward jumps at rate 2. Mean -1,
// creeping case. Everything about this model is known in closed form:
// r1(s) = (s + 1 - sqrt((s+1)^2 + 4s... ) no: r1(1) = sqrt(2) - 1, the
// supremum is Exp(1) distributed and rho = 0.
inline ModelSpec m1() {
  ModelSpec m;
  m.drift_a = 1.0;
  m.sigma = 0.0;
  m.neg.rate = 2.0;
  m.neg.kind = NegKind::Erlang;
  m.neg.d = 1;
  m.neg.b = 1.0;
  return m;
}

// Oscillatory showcase: Brownian part, half-normal upward jumps, and a
// damped-cosine downward density K(1 - cos(2 pi z)) e^{-z} written in pole
// form. Two of the four s = 1 roots form a complex pair.
inline ModelSpec example3() {
  ModelSpec m;
  m.drift_a = 0.2;
  m.sigma = 2.0;
  m.pos.rate = 2.0;
  m.pos.kind = PosKind::HalfNormal;
  m.pos.beta = 1.0;
  m.neg.rate = 4.0;
  m.neg.kind = NegKind::PoleForm;
  const double w = 2.0 * M_PI;
  const double K = 1.0 + 1.0 / (w * w);
  m.neg.poles = {
      PoleTerm{cdouble(1.0, 0.0), 0, {cdouble(K, 0.0)}},
      PoleTerm{cdouble(1.0, w), 0, {cdouble(-K / 2.0, 0.0)}},
      PoleTerm{cdouble(1.0, -w), 0, {cdouble(-K / 2.0, 0.0)}},
  };
  return m;
}

// Classic single-server queue workload: unit downward drift, Exp(1) upward
// jumps at rate 1/2, no downward jumps. The supremum CDF is
// 1 - 0.5 exp(-x/2) in closed form.
inline ModelSpec mg1() {
  ModelSpec m;
  m.drift_a = -1.0;
  m.sigma = 0.0;
  m.pos.rate = 0.5;
  m.pos.kind = PosKind::Exponential;
  m.pos.beta = 1.0;
  return m;
}

// Brownian motion with drift and no jumps; the supremum is Exp(2|a|/sigma^2).
inline ModelSpec bm_only() {
  ModelSpec m;
  m.drift_a = -1.0;
  m.sigma = 1.0;
  return m;
}

// Non-creeping model with a two-rate hyperexponential downward law and
// exponential upward jumps; exercises the distinct-root d = 2 closed form.
inline ModelSpec hyperexp2_ns() {
  ModelSpec m;
  m.drift_a = 0.3;
  m.sigma = 1.0;
  m.pos.rate = 1.0;
  m.pos.kind = PosKind::Exponential;
  m.pos.beta = 3.0;
  m.neg.rate = 2.0;
  m.neg.kind = NegKind::Hyperexponential;
  m.neg.weights = {0.5, 0.5};
  m.neg.rates = {1.0, 2.0};
  return m;
}

// Creeping model with Erlang(2) downward jumps; exercises the repeated-pole
// d = 2 closed form with an atom at zero.
inline ModelSpec erlang2_s() {
  ModelSpec m;
  m.drift_a = 0.5;
  m.sigma = 0.0;
  m.pos.rate = 1.0;
  m.pos.kind = PosKind::Exponential;
  m.pos.beta = 1.0;
  m.neg.rate = 2.0;
  m.neg.kind = NegKind::Erlang;
  m.neg.d = 2;
  m.neg.b = 2.0;
  return m;
}

// Spectrally positive model with a non-rational upward law; the supremum
// transform collapses to -r k'(0) / k(r).
inline ModelSpec spectrally_positive_halfnormal() {
  ModelSpec m;
  m.drift_a = -1.0;
  m.sigma = 0.0;
  m.pos.rate = 1.0;
  m.pos.kind = PosKind::HalfNormal;
  m.pos.beta = 2.0;
  return m;
}

// Triangle density on [0, 2] specified as a table; forces every quadrature
// fallback in the transform layer.
inline ModelSpec tabulated_ns() {
  ModelSpec m;
  m.drift_a = -1.0;
  m.sigma = 0.5;
  m.pos.rate = 1.0;
  m.pos.kind = PosKind::Tabulated;
  m.pos.tab_x = {0.0, 1.0, 2.0};
  m.pos.tab_f = {0.0, 1.0, 0.0};
  m.neg.rate = 1.0;
  m.neg.kind = NegKind::Erlang;
  m.neg.d = 1;
  m.neg.b = 2.0;
  return m;
}

// Diffusion plus Erlang(2, b) downward jumps, no upward jumps. Sweeping the
// jump rate moves the two nonzero roots of the cubic through a real
// collision: real and distinct for small rate, a conjugate pair for large
// rate. Used to probe the multiple-root transition.
inline ModelSpec erlang2_diffusion(double neg_rate) {
  ModelSpec m;
  m.drift_a = 0.1;
  m.sigma = 1.0;
  m.neg.rate = neg_rate;
  m.neg.kind = NegKind::Erlang;
  m.neg.d = 2;
  m.neg.b = 1.0;
  return m;
}

}  // namespace fixtures
