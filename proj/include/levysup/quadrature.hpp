#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <queue>
#include <type_traits>
#include <vector>

#include "levysup/errors.hpp"

namespace levysup {

// Globally adaptive Gauss-Kronrod 7/15 on real intervals, templated on the
// integrand value type (double or std::complex<double>). Worst-error-first
// interval refinement with the QUADPACK error heuristic.

struct QuadOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_intervals = 8000;
  bool throw_on_fail = true;
};

template <class T>
struct QuadResult {
  T value{};
  double error = 0.0;
  long evals = 0;
  bool converged = false;
};

namespace quad_detail {

// 15-point Kronrod abscissae (positive half) and weights; Gauss-7 weights
// sit on the odd-indexed abscissae.
inline constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F, class T>
void qk15(F& f, double a, double b, T& value, double& err, bool& finite) {
  const double h = 0.5 * (b - a);
  const double c = 0.5 * (a + b);
  T fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * xgk[i]);
    fv[14 - i] = f(c + h * xgk[i]);
  }
  fv[7] = f(c);
  T resk = T(0), resg = T(0);
  double resabs = 0.0;
  for (int i = 0; i < 8; ++i) {
    T pair = (i == 7) ? fv[7] : fv[i] + fv[14 - i];
    resk += wgk[i] * pair;
    resabs += wgk[i] * ((i == 7) ? std::abs(fv[7])
                                 : std::abs(fv[i]) + std::abs(fv[14 - i]));
  }
  for (int i = 0; i < 4; ++i) {
    T pair = (i == 3) ? fv[7] : fv[2 * i + 1] + fv[13 - 2 * i];
    resg += wg[i] * pair;
  }
  T reskh = resk * 0.5;
  double resasc = 0.0;
  for (int i = 0; i < 15; ++i) {
    int j = (i < 8) ? i : 14 - i;
    resasc += wgk[j] * std::abs(fv[i] - reskh);
  }
  resasc *= std::abs(h);
  value = resk * h;
  double diff = std::abs(resk - resg) * std::abs(h);
  err = diff;
  if (resasc != 0.0 && diff != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * diff / resasc, 1.5));
  err = std::max(err, 50.0 * 2.2e-16 * resabs * std::abs(h));
  finite = std::isfinite(std::abs(value)) && std::isfinite(err);
}

}  // namespace quad_detail

template <class F>
auto integrate(F&& f, double a, double b, QuadOptions opt = {})
    -> QuadResult<std::invoke_result_t<F&, double>> {
  using T = std::invoke_result_t<F&, double>;
  QuadResult<T> out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  struct Seg {
    double a, b, err;
    T val;
    bool operator<(const Seg& o) const { return err < o.err; }
  };
  std::priority_queue<Seg> heap;
  T v;
  double e;
  bool finite;
  quad_detail::qk15(f, a, b, v, e, finite);
  out.evals = 15;
  if (!finite) {
    if (opt.throw_on_fail)
      fail(Err::QuadratureError, "integrand not finite on initial panel");
    return out;
  }
  heap.push({a, b, e, v});
  T total = v;
  double toterr = e;
  int n = 1;
  while (toterr > std::max(opt.abs_tol, opt.rel_tol * std::abs(total)) &&
         n < opt.max_intervals) {
    Seg s = heap.top();
    heap.pop();
    double m = 0.5 * (s.a + s.b);
    if (m == s.a || m == s.b) {  // interval at machine resolution; accept it
      toterr -= s.err;
      Seg dead = s;
      dead.err = 0.0;
      heap.push(dead);
      if (toterr <= 0) break;
      continue;
    }
    T v1, v2;
    double e1, e2;
    bool f1, f2;
    quad_detail::qk15(f, s.a, m, v1, e1, f1);
    quad_detail::qk15(f, m, s.b, v2, e2, f2);
    out.evals += 30;
    if (!f1 || !f2) {
      if (opt.throw_on_fail)
        fail(Err::QuadratureError, "integrand not finite after refinement");
      heap.push(s);
      break;
    }
    total += v1 + v2 - s.val;
    toterr += e1 + e2 - s.err;
    heap.push({s.a, m, e1, v1});
    heap.push({m, s.b, e2, v2});
    n += 1;
  }
  out.value = total;
  out.error = toterr;
  out.converged =
      toterr <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total)) * 1.001;
  if (!out.converged && opt.throw_on_fail)
    fail(Err::QuadratureError, "adaptive refinement did not reach tolerance");
  return out;
}

// Integral over [a, inf): panels grow geometrically from the given decay
// scale until two consecutive panels contribute below tolerance.
template <class F>
auto integrate_tail(F&& f, double a, double scale, QuadOptions opt = {})
    -> QuadResult<std::invoke_result_t<F&, double>> {
  using T = std::invoke_result_t<F&, double>;
  QuadResult<T> out;
  double lo = a;
  double width = std::max(scale, 1e-12) * 4.0;
  int quiet = 0;
  for (int k = 0; k < 90; ++k) {
    QuadOptions panel = opt;
    panel.abs_tol = opt.abs_tol * 0.25;
    auto r = integrate(f, lo, lo + width, panel);
    out.value += r.value;
    out.error += r.error;
    out.evals += r.evals;
    lo += width;
    width *= 2.0;
    if (std::abs(r.value) < opt.abs_tol * 0.25)
      quiet += 1;
    else
      quiet = 0;
    if (quiet >= 2) {
      out.converged = true;
      return out;
    }
  }
  if (opt.throw_on_fail)
    fail(Err::QuadratureError, "tail integral did not settle");
  return out;
}

}  // namespace levysup
