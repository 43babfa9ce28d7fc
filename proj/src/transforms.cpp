#include "levysup/transforms.hpp"

#include <cmath>

#include "levysup/cerf.hpp"
#include "levysup/errors.hpp"
#include "levysup/quadrature.hpp"

namespace levysup {

namespace {

constexpr double kSqrtPi = 1.77245385090551602729816748334115;

// Single exponential component with rate beta and weight wgt (already
// including the Poisson intensity): wgt * beta * exp(-beta x) / (u+beta),
// differentiated p times in u.
cdouble exp_component(double wgt, double beta, double x, cdouble u, int p) {
  cdouble den = u + beta;
  require(std::abs(den) > 1e-12 * (1.0 + beta), Err::DomainError,
          "tail transform evaluated at a pole of the jump transform");
  double sign = (p % 2 == 0) ? 1.0 : -1.0;
  return wgt * beta * std::exp(-beta * x) * sign * factorial(p) /
         cpow_int(den, p + 1);
}

cdouble erlang_tail(double rate, int n, double beta, double x, cdouble u,
                    int p) {
  cdouble den = u + beta;
  require(std::abs(den) > 1e-12 * (1.0 + beta), Err::DomainError,
          "tail transform evaluated at a pole of the jump transform");
  double sign = (p % 2 == 0) ? 1.0 : -1.0;
  cdouble acc(0.0, 0.0);
  for (int j = 0; j < n; ++j)
    acc += binomial(n - 1, j) * std::pow(x, n - 1 - j) *
           factorial(j + p) / cpow_int(den, j + p + 1);
  return rate * std::pow(beta, n) / factorial(n - 1) * std::exp(-beta * x) *
         sign * acc;
}

// Half-normal density (2 beta / pi) exp(-beta^2 z^2 / pi). Completing the
// square gives pi_tilde = rate * exp(-c x^2) * erfcx(q) with c = beta^2/pi
// and q = beta x / sqrt(pi) + u sqrt(pi) / (2 beta); u-derivatives follow the
// erfcx derivative recurrence E_{p+1} = 2 q E_p + 2 p E_{p-1}.
cdouble halfnormal_tail(double rate, double beta, double x, cdouble u, int p) {
  double c = beta * beta / M_PI;
  double gamma = kSqrtPi / (2.0 * beta);
  cdouble q = beta * x / kSqrtPi + u * gamma;
  cdouble e_prev(0.0, 0.0), e = erfcx(q);
  for (int i = 1; i <= p; ++i) {
    cdouble e_next = 2.0 * q * e + 2.0 * double(i - 1) * e_prev;
    if (i == 1) e_next = 2.0 * q * e - 2.0 / kSqrtPi;
    e_prev = e;
    e = e_next;
  }
  return rate * std::exp(-c * x * x) * std::pow(gamma, p) * e;
}

}  // namespace

cdouble pi_tilde_quad(const ModelSpec& m, double x, cdouble u, int p) {
  require(x >= 0.0, Err::DomainError, "tail transform needs x >= 0");
  const PositiveJumps& pos = m.pos;
  if (pos.rate <= 0.0) return cdouble(0.0, 0.0);
  auto fn = [&](double t) -> cdouble {
    // t = z - x >= 0; (x - z)^p = (-t)^p
    double tp = 1.0;
    for (int i = 0; i < p; ++i) tp *= -t;
    return tp * std::exp(-u * t) * pos.rate * pos_density(pos, x + t);
  };
  QuadOptions opt;
  opt.abs_tol = 1e-11;
  if (pos.kind == PosKind::Tabulated) {
    cdouble acc(0.0, 0.0);
    for (std::size_t i = 0; i + 1 < pos.tab_x.size(); ++i) {
      double lo = std::max(x, pos.tab_x[i]);
      double hi = pos.tab_x[i + 1];
      if (hi <= lo) continue;
      acc += integrate(fn, lo - x, hi - x, opt).value;
    }
    return acc;
  }
  double scale = 1.0;
  switch (pos.kind) {
    case PosKind::Exponential:
    case PosKind::Erlang:
      scale = 1.0 / pos.beta;
      break;
    case PosKind::Hyperexponential: {
      double rmin = pos.rates[0];
      for (double r : pos.rates) rmin = std::min(rmin, r);
      scale = 1.0 / rmin;
      break;
    }
    case PosKind::HalfNormal:
      scale = kSqrtPi / pos.beta / (1.0 + pos.beta * x);
      break;
    default:
      break;
  }
  if (u.real() > 0.0) scale = std::min(scale, 1.0 / u.real());
  return integrate_tail(fn, 0.0, scale, opt).value;
}

cdouble pi_tilde_deriv(const ModelSpec& m, double x, cdouble u, int p) {
  require(x >= 0.0, Err::DomainError, "tail transform needs x >= 0");
  const PositiveJumps& pos = m.pos;
  if (pos.rate <= 0.0) return cdouble(0.0, 0.0);
  switch (pos.kind) {
    case PosKind::Exponential:
      return exp_component(pos.rate, pos.beta, x, u, p);
    case PosKind::Erlang:
      return erlang_tail(pos.rate, pos.n, pos.beta, x, u, p);
    case PosKind::Hyperexponential: {
      cdouble acc(0.0, 0.0);
      for (std::size_t i = 0; i < pos.rates.size(); ++i)
        acc += exp_component(pos.rate * pos.weights[i], pos.rates[i], x, u, p);
      return acc;
    }
    case PosKind::HalfNormal:
      return halfnormal_tail(pos.rate, pos.beta, x, u, p);
    case PosKind::Tabulated:
      return pi_tilde_quad(m, x, u, p);
  }
  return cdouble(0.0, 0.0);
}

cdouble pi_tilde(const ModelSpec& m, double x, cdouble u) {
  return pi_tilde_deriv(m, x, u, 0);
}

cdouble b_transform(const ModelSpec& m, double x, cdouble u) {
  return pi_tilde_deriv(m, x, u, 1);
}

std::pair<double, double> c_transforms(const ModelSpec& m, double x, double v,
                                       double w) {
  cdouble t = pi_tilde(m, x, cdouble(v, w));
  return {t.real(), t.imag()};
}

}  // namespace levysup
