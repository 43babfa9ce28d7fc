#include "levysup/model.hpp"

#include <algorithm>
#include <cmath>

#include "levysup/cerf.hpp"
#include "levysup/errors.hpp"
#include "levysup/quadrature.hpp"

namespace levysup {

namespace {

constexpr double kSqrtPi = 1.77245385090551602729816748334115;

bool finite(double x) { return std::isfinite(x); }

void check_hyperexp(const std::vector<double>& w, const std::vector<double>& r,
                    const char* side) {
  require(!w.empty() && w.size() == r.size(), Err::Validation,
          std::string(side) + " hyperexponential needs matching weights/rates");
  double sum = 0.0;
  for (double wi : w) {
    require(finite(wi) && wi > 0.0, Err::Validation,
            std::string(side) + " hyperexponential weights must be positive");
    sum += wi;
  }
  require(std::abs(sum - 1.0) <= 1e-10, Err::Validation,
          std::string(side) + " hyperexponential weights must sum to 1");
  for (double ri : r)
    require(finite(ri) && ri > 0.0, Err::Validation,
            std::string(side) + " hyperexponential rates must be positive");
}

}  // namespace

void validate(const ModelSpec& m) {
  require(finite(m.drift_a), Err::Validation, "drift_a must be finite");
  require(finite(m.sigma) && m.sigma >= 0.0, Err::Validation,
          "sigma must be finite and nonnegative");

  const PositiveJumps& p = m.pos;
  require(finite(p.rate) && p.rate >= 0.0, Err::Validation,
          "positive jump rate must be finite and nonnegative");
  if (p.rate > 0.0) {
    switch (p.kind) {
      case PosKind::Exponential:
        require(finite(p.beta) && p.beta > 0.0, Err::Validation,
                "exponential jumps need beta > 0");
        break;
      case PosKind::Erlang:
        require(finite(p.beta) && p.beta > 0.0 && p.n >= 1, Err::Validation,
                "erlang jumps need beta > 0 and n >= 1");
        break;
      case PosKind::Hyperexponential:
        check_hyperexp(p.weights, p.rates, "positive");
        break;
      case PosKind::HalfNormal:
        require(finite(p.beta) && p.beta > 0.0, Err::Validation,
                "halfnormal jumps need beta > 0");
        break;
      case PosKind::Tabulated: {
        require(p.tab_x.size() >= 2 && p.tab_x.size() == p.tab_f.size(),
                Err::Validation, "tabulated density needs >= 2 matched nodes");
        require(p.tab_x.front() >= 0.0, Err::Validation,
                "tabulated support must lie in [0, inf)");
        double mass = 0.0;
        for (std::size_t i = 0; i < p.tab_x.size(); ++i) {
          require(finite(p.tab_x[i]) && finite(p.tab_f[i]) && p.tab_f[i] >= 0.0,
                  Err::Validation, "tabulated density must be finite and >= 0");
          if (i > 0) {
            require(p.tab_x[i] > p.tab_x[i - 1], Err::Validation,
                    "tabulated nodes must be strictly increasing");
            mass += 0.5 * (p.tab_f[i] + p.tab_f[i - 1]) *
                    (p.tab_x[i] - p.tab_x[i - 1]);
          }
        }
        require(std::abs(mass - 1.0) <= 1e-10, Err::Validation,
                "tabulated density must integrate to 1 (trapezoid rule)");
        break;
      }
    }
  }

  const NegativeJumps& g = m.neg;
  require(finite(g.rate) && g.rate >= 0.0, Err::Validation,
          "negative jump rate must be finite and nonnegative");
  if (g.rate > 0.0) {
    switch (g.kind) {
      case NegKind::Hyperexponential:
        check_hyperexp(g.weights, g.rates, "negative");
        break;
      case NegKind::Erlang:
        require(finite(g.b) && g.b > 0.0 && g.d >= 1, Err::Validation,
                "erlang jumps need b > 0 and d >= 1");
        break;
      case NegKind::PoleForm: {
        require(!g.poles.empty(), Err::Validation, "pole form needs terms");
        for (const PoleTerm& t : g.poles) {
          require(finite(t.b.real()) && finite(t.b.imag()) && t.b.real() > 0.0,
                  Err::Validation, "pole real parts must be positive");
          require(t.k >= 0 && t.a.size() == std::size_t(t.k) + 1,
                  Err::Validation, "pole term needs coefficients a[0..k]");
          require(std::abs(t.a[t.k]) > 0.0, Err::Validation,
                  "top coefficient of a pole term must be nonzero");
        }
        for (std::size_t i = 0; i < g.poles.size(); ++i)
          for (std::size_t j = i + 1; j < g.poles.size(); ++j)
            require(std::abs(g.poles[i].b - g.poles[j].b) > 1e-9,
                    Err::Validation, "duplicate poles are not allowed");
        // Complex poles must arrive in conjugate pairs with conjugate
        // coefficients, so the density is real.
        for (const PoleTerm& t : g.poles) {
          if (t.b.imag() == 0.0) {
            for (const cdouble& aj : t.a)
              require(std::abs(aj.imag()) <= 1e-12 * (1.0 + std::abs(aj)),
                      Err::Validation,
                      "real poles must have real coefficients");
            continue;
          }
          bool matched = false;
          for (const PoleTerm& u : g.poles) {
            if (std::abs(u.b - std::conj(t.b)) > 1e-12 * (1.0 + std::abs(t.b)))
              continue;
            require(u.k == t.k, Err::Validation,
                    "conjugate poles must have equal order");
            bool coef_ok = true;
            for (int j = 0; j <= t.k; ++j)
              coef_ok = coef_ok && std::abs(u.a[j] - std::conj(t.a[j])) <=
                                       1e-10 * (1.0 + std::abs(t.a[j]));
            require(coef_ok, Err::Validation,
                    "conjugate poles must have conjugate coefficients");
            matched = true;
            break;
          }
          require(matched, Err::Validation,
                  "complex poles must come in conjugate pairs");
        }
        // Among the poles with smallest real part there must be a real one
        // of maximal polynomial order, else the density tail oscillates
        // around an exponential of lower order and turns negative.
        double bmin = 1e300;
        for (const PoleTerm& t : g.poles) bmin = std::min(bmin, t.b.real());
        int real_k = -1, complex_k = -1;
        for (const PoleTerm& t : g.poles) {
          if (t.b.real() > bmin * (1.0 + 1e-12)) continue;
          int& slot = t.b.imag() == 0.0 ? real_k : complex_k;
          slot = std::max(slot, t.k);
        }
        require(real_k >= 0 && real_k >= complex_k, Err::Validation,
                "the tail-dominant pole must be real");
        // Normalisation, using int z^j exp(-bz) dz = j! / b^(j+1).
        cdouble mass(0.0, 0.0);
        for (const PoleTerm& t : g.poles)
          for (int j = 0; j <= t.k; ++j)
            mass += t.a[j] * factorial(j) / cpow_int(t.b, j + 1);
        require(std::abs(mass - 1.0) <= 1e-10, Err::Validation,
                "pole-form density must integrate to 1");
        // Pointwise nonnegativity, checked on a grid spanning the tail.
        double zmax = 60.0 / bmin;
        double peak = 0.0;
        std::vector<double> zs;
        for (int i = 1; i <= 1200; ++i) zs.push_back(zmax * i / 1200.0);
        for (int i = 0; i < 800; ++i)
          zs.push_back(zmax * 1e-6 * std::pow(1e6, i / 799.0));
        for (double z : zs) {
          double v = neg_density(g, z);
          peak = std::max(peak, std::abs(v));
          require(v >= -1e-9 * std::max(1.0, peak), Err::Validation,
                  "pole-form density must be nonnegative");
        }
        break;
      }
    }
  }
}

std::vector<PoleTerm> pole_form(const NegativeJumps& neg) {
  std::vector<PoleTerm> out;
  if (neg.rate <= 0.0) return out;
  switch (neg.kind) {
    case NegKind::Hyperexponential:
      for (std::size_t i = 0; i < neg.rates.size(); ++i) {
        PoleTerm t;
        t.b = cdouble(neg.rates[i], 0.0);
        t.k = 0;
        t.a = {cdouble(neg.weights[i] * neg.rates[i], 0.0)};
        out.push_back(t);
      }
      break;
    case NegKind::Erlang: {
      PoleTerm t;
      t.b = cdouble(neg.b, 0.0);
      t.k = neg.d - 1;
      t.a.assign(neg.d, cdouble(0.0, 0.0));
      t.a[neg.d - 1] = std::pow(neg.b, neg.d) / factorial(neg.d - 1);
      out.push_back(t);
      break;
    }
    case NegKind::PoleForm:
      out = neg.poles;
      break;
  }
  std::sort(out.begin(), out.end(), [](const PoleTerm& x, const PoleTerm& y) {
    if (x.b.real() != y.b.real()) return x.b.real() < y.b.real();
    double ax = std::abs(x.b.imag()), ay = std::abs(y.b.imag());
    if (ax != ay) return ax < ay;
    return x.b.imag() > y.b.imag();
  });
  return out;
}

// --- positive jumps ---------------------------------------------------------

bool pos_is_rational(const PositiveJumps& pos) {
  if (pos.rate <= 0.0) return true;
  return pos.kind == PosKind::Exponential || pos.kind == PosKind::Erlang ||
         pos.kind == PosKind::Hyperexponential;
}

namespace {

void guard_pos_pole(double beta, cdouble r) {
  if (std::abs(cdouble(beta, 0.0) - r) < 1e-12 * (1.0 + beta))
    fail(Err::DomainError, "positive-jump transform evaluated at its pole");
}

// Piecewise-linear segment integral: int_0^h (f0 + s t) exp(r (x0 + t)) dt.
cdouble tab_segment(double x0, double h, double f0, double s, cdouble r) {
  cdouble rh = r * h;
  cdouble I0, I1;
  if (std::abs(rh) < 1e-4) {
    I0 = h * (1.0 + rh * (0.5 + rh * (1.0 / 6.0 + rh / 24.0)));
    I1 = h * h *
         (0.5 + rh * (1.0 / 3.0 + rh * (0.125 + rh / 30.0)));
  } else {
    cdouble e = std::exp(rh);
    I0 = (e - 1.0) / r;
    I1 = (h * e - I0) / r;
  }
  return std::exp(r * x0) * (f0 * I0 + s * I1);
}

}  // namespace

cdouble pos_mgf(const PositiveJumps& pos, cdouble r) {
  if (pos.rate <= 0.0) return cdouble(1.0, 0.0);
  switch (pos.kind) {
    case PosKind::Exponential:
      guard_pos_pole(pos.beta, r);
      return pos.beta / (pos.beta - r);
    case PosKind::Erlang:
      guard_pos_pole(pos.beta, r);
      return cpow_int(pos.beta / (pos.beta - r), pos.n);
    case PosKind::Hyperexponential: {
      cdouble acc(0.0, 0.0);
      for (std::size_t i = 0; i < pos.rates.size(); ++i) {
        guard_pos_pole(pos.rates[i], r);
        acc += pos.weights[i] * pos.rates[i] / (pos.rates[i] - r);
      }
      return acc;
    }
    case PosKind::HalfNormal: {
      double c = kSqrtPi / (2.0 * pos.beta);
      return erfcx(-c * r);
    }
    case PosKind::Tabulated: {
      cdouble acc(0.0, 0.0);
      for (std::size_t i = 0; i + 1 < pos.tab_x.size(); ++i) {
        double h = pos.tab_x[i + 1] - pos.tab_x[i];
        double s = (pos.tab_f[i + 1] - pos.tab_f[i]) / h;
        acc += tab_segment(pos.tab_x[i], h, pos.tab_f[i], s, r);
      }
      return acc;
    }
  }
  return cdouble(1.0, 0.0);
}

std::vector<cdouble> pos_mgf_derivs(const PositiveJumps& pos, cdouble r, int p) {
  std::vector<cdouble> d(p + 1, cdouble(0.0, 0.0));
  if (pos.rate <= 0.0) {
    d[0] = 1.0;
    return d;
  }
  switch (pos.kind) {
    case PosKind::Exponential: {
      guard_pos_pole(pos.beta, r);
      cdouble g = 1.0 / (pos.beta - r);
      for (int q = 0; q <= p; ++q)
        d[q] = pos.beta * factorial(q) * cpow_int(g, q + 1);
      break;
    }
    case PosKind::Erlang: {
      guard_pos_pole(pos.beta, r);
      cdouble g = 1.0 / (pos.beta - r);
      double rising = 1.0;
      for (int q = 0; q <= p; ++q) {
        d[q] = std::pow(pos.beta, pos.n) * rising * cpow_int(g, pos.n + q);
        rising *= double(pos.n + q);
      }
      break;
    }
    case PosKind::Hyperexponential: {
      for (std::size_t i = 0; i < pos.rates.size(); ++i) {
        guard_pos_pole(pos.rates[i], r);
        cdouble g = 1.0 / (pos.rates[i] - r);
        for (int q = 0; q <= p; ++q)
          d[q] += pos.weights[i] * pos.rates[i] * factorial(q) *
                  cpow_int(g, q + 1);
      }
      break;
    }
    case PosKind::HalfNormal: {
      // M' = 2c^2 r M + 2c/sqrt(pi); differentiate repeatedly.
      double c = kSqrtPi / (2.0 * pos.beta);
      d[0] = erfcx(-c * r);
      if (p >= 1) d[1] = 2.0 * c * c * r * d[0] + 2.0 * c / kSqrtPi;
      for (int q = 1; q < p; ++q)
        d[q + 1] = 2.0 * c * c * (double(q) * d[q - 1] + r * d[q]);
      break;
    }
    case PosKind::Tabulated: {
      for (int q = 0; q <= p; ++q) {
        if (q == 0) {
          d[0] = pos_mgf(pos, r);
          continue;
        }
        cdouble acc(0.0, 0.0);
        for (std::size_t i = 0; i + 1 < pos.tab_x.size(); ++i) {
          double lo = pos.tab_x[i], hi = pos.tab_x[i + 1];
          double s = (pos.tab_f[i + 1] - pos.tab_f[i]) / (hi - lo);
          double f0 = pos.tab_f[i];
          auto fn = [&](double z) -> cdouble {
            return std::pow(z, q) * std::exp(r * z) * (f0 + s * (z - lo));
          };
          QuadOptions opt;
          opt.abs_tol = 1e-12;
          acc += integrate(fn, lo, hi, opt).value;
        }
        d[q] = acc;
      }
      break;
    }
  }
  return d;
}

double pos_mean(const PositiveJumps& pos) {
  if (pos.rate <= 0.0) return 0.0;
  switch (pos.kind) {
    case PosKind::Exponential:
      return 1.0 / pos.beta;
    case PosKind::Erlang:
      return pos.n / pos.beta;
    case PosKind::Hyperexponential: {
      double acc = 0.0;
      for (std::size_t i = 0; i < pos.rates.size(); ++i)
        acc += pos.weights[i] / pos.rates[i];
      return acc;
    }
    case PosKind::HalfNormal:
      return 1.0 / pos.beta;
    case PosKind::Tabulated: {
      auto fn = [&](double z) { return z * pos_density(pos, z); };
      QuadOptions opt;
      opt.abs_tol = 1e-11;
      return integrate(fn, pos.tab_x.front(), pos.tab_x.back(), opt).value;
    }
  }
  return 0.0;
}

double pos_moment2(const PositiveJumps& pos) {
  if (pos.rate <= 0.0) return 0.0;
  switch (pos.kind) {
    case PosKind::Exponential:
      return 2.0 / (pos.beta * pos.beta);
    case PosKind::Erlang:
      return pos.n * (pos.n + 1.0) / (pos.beta * pos.beta);
    case PosKind::Hyperexponential: {
      double acc = 0.0;
      for (std::size_t i = 0; i < pos.rates.size(); ++i)
        acc += 2.0 * pos.weights[i] / (pos.rates[i] * pos.rates[i]);
      return acc;
    }
    case PosKind::HalfNormal:
      return M_PI / (2.0 * pos.beta * pos.beta);
    case PosKind::Tabulated: {
      auto fn = [&](double z) { return z * z * pos_density(pos, z); };
      QuadOptions opt;
      opt.abs_tol = 1e-11;
      return integrate(fn, pos.tab_x.front(), pos.tab_x.back(), opt).value;
    }
  }
  return 0.0;
}

double pos_density(const PositiveJumps& pos, double x) {
  if (pos.rate <= 0.0 || x < 0.0) return 0.0;
  switch (pos.kind) {
    case PosKind::Exponential:
      return pos.beta * std::exp(-pos.beta * x);
    case PosKind::Erlang:
      return std::pow(pos.beta, pos.n) * std::pow(x, pos.n - 1) *
             std::exp(-pos.beta * x) / factorial(pos.n - 1);
    case PosKind::Hyperexponential: {
      double acc = 0.0;
      for (std::size_t i = 0; i < pos.rates.size(); ++i)
        acc += pos.weights[i] * pos.rates[i] * std::exp(-pos.rates[i] * x);
      return acc;
    }
    case PosKind::HalfNormal:
      return (2.0 * pos.beta / M_PI) *
             std::exp(-pos.beta * pos.beta * x * x / M_PI);
    case PosKind::Tabulated: {
      const auto& xs = pos.tab_x;
      if (x <= xs.front() || x >= xs.back()) {
        if (x == xs.front()) return pos.tab_f.front();
        if (x == xs.back()) return pos.tab_f.back();
        return 0.0;
      }
      auto it = std::upper_bound(xs.begin(), xs.end(), x);
      std::size_t i = std::size_t(it - xs.begin()) - 1;
      double t = (x - xs[i]) / (xs[i + 1] - xs[i]);
      return pos.tab_f[i] * (1.0 - t) + pos.tab_f[i + 1] * t;
    }
  }
  return 0.0;
}

// --- negative jumps ---------------------------------------------------------

namespace {

void guard_neg_pole(cdouble b, cdouble r) {
  if (std::abs(r + b) < 1e-12 * (1.0 + std::abs(b)))
    fail(Err::DomainError, "negative-jump transform evaluated at its pole");
}

}  // namespace

cdouble neg_mgf(const NegativeJumps& neg, cdouble r) {
  if (neg.rate <= 0.0) return cdouble(1.0, 0.0);
  switch (neg.kind) {
    case NegKind::Hyperexponential: {
      cdouble acc(0.0, 0.0);
      for (std::size_t i = 0; i < neg.rates.size(); ++i) {
        guard_neg_pole(cdouble(neg.rates[i], 0.0), r);
        acc += neg.weights[i] * neg.rates[i] / (neg.rates[i] + r);
      }
      return acc;
    }
    case NegKind::Erlang:
      guard_neg_pole(cdouble(neg.b, 0.0), r);
      return cpow_int(neg.b / (neg.b + r), neg.d);
    case NegKind::PoleForm: {
      cdouble acc(0.0, 0.0);
      for (const PoleTerm& t : neg.poles) {
        guard_neg_pole(t.b, r);
        for (int j = 0; j <= t.k; ++j)
          acc += t.a[j] * factorial(j) / cpow_int(r + t.b, j + 1);
      }
      return acc;
    }
  }
  return cdouble(1.0, 0.0);
}

namespace {

cdouble neg_mgf_deriv(const NegativeJumps& neg, cdouble r) {
  if (neg.rate <= 0.0) return cdouble(0.0, 0.0);
  switch (neg.kind) {
    case NegKind::Hyperexponential: {
      cdouble acc(0.0, 0.0);
      for (std::size_t i = 0; i < neg.rates.size(); ++i) {
        cdouble g = neg.rates[i] + r;
        acc -= neg.weights[i] * neg.rates[i] / (g * g);
      }
      return acc;
    }
    case NegKind::Erlang:
      return -double(neg.d) * std::pow(neg.b, neg.d) /
             cpow_int(neg.b + r, neg.d + 1);
    case NegKind::PoleForm: {
      cdouble acc(0.0, 0.0);
      for (const PoleTerm& t : neg.poles)
        for (int j = 0; j <= t.k; ++j)
          acc -= t.a[j] * factorial(j + 1) / cpow_int(r + t.b, j + 2);
      return acc;
    }
  }
  return cdouble(0.0, 0.0);
}

}  // namespace

double neg_mean(const NegativeJumps& neg) {
  if (neg.rate <= 0.0) return 0.0;
  switch (neg.kind) {
    case NegKind::Hyperexponential: {
      double acc = 0.0;
      for (std::size_t i = 0; i < neg.rates.size(); ++i)
        acc += neg.weights[i] / neg.rates[i];
      return acc;
    }
    case NegKind::Erlang:
      return neg.d / neg.b;
    case NegKind::PoleForm: {
      cdouble acc(0.0, 0.0);
      for (const PoleTerm& t : neg.poles)
        for (int j = 0; j <= t.k; ++j)
          acc += t.a[j] * factorial(j + 1) / cpow_int(t.b, j + 2);
      return acc.real();
    }
  }
  return 0.0;
}

double neg_moment2(const NegativeJumps& neg) {
  if (neg.rate <= 0.0) return 0.0;
  switch (neg.kind) {
    case NegKind::Hyperexponential: {
      double acc = 0.0;
      for (std::size_t i = 0; i < neg.rates.size(); ++i)
        acc += 2.0 * neg.weights[i] / (neg.rates[i] * neg.rates[i]);
      return acc;
    }
    case NegKind::Erlang:
      return neg.d * (neg.d + 1.0) / (neg.b * neg.b);
    case NegKind::PoleForm: {
      cdouble acc(0.0, 0.0);
      for (const PoleTerm& t : neg.poles)
        for (int j = 0; j <= t.k; ++j)
          acc += t.a[j] * factorial(j + 2) / cpow_int(t.b, j + 3);
      return acc.real();
    }
  }
  return 0.0;
}

double neg_density(const NegativeJumps& neg, double z) {
  if (neg.rate <= 0.0 || z < 0.0) return 0.0;
  switch (neg.kind) {
    case NegKind::Hyperexponential: {
      double acc = 0.0;
      for (std::size_t i = 0; i < neg.rates.size(); ++i)
        acc += neg.weights[i] * neg.rates[i] * std::exp(-neg.rates[i] * z);
      return acc;
    }
    case NegKind::Erlang:
      return std::pow(neg.b, neg.d) * std::pow(z, neg.d - 1) *
             std::exp(-neg.b * z) / factorial(neg.d - 1);
    case NegKind::PoleForm: {
      cdouble acc(0.0, 0.0);
      for (const PoleTerm& t : neg.poles) {
        cdouble zp(1.0, 0.0);
        cdouble e = std::exp(-t.b * z);
        for (int j = 0; j <= t.k; ++j) {
          acc += t.a[j] * zp * e;
          zp *= z;
        }
      }
      return acc.real();
    }
  }
  return 0.0;
}

// --- cumulant ----------------------------------------------------------------

cdouble cumulant(const ModelSpec& m, cdouble r) {
  cdouble k = m.drift_a * r + 0.5 * m.sigma * m.sigma * r * r;
  if (m.pos.rate > 0.0) k += m.pos.rate * (pos_mgf(m.pos, r) - 1.0);
  if (m.neg.rate > 0.0) k += m.neg.rate * (neg_mgf(m.neg, r) - 1.0);
  return k;
}

cdouble cumulant_deriv(const ModelSpec& m, cdouble r) {
  cdouble k = cdouble(m.drift_a, 0.0) + m.sigma * m.sigma * r;
  if (m.pos.rate > 0.0) k += m.pos.rate * pos_mgf_derivs(m.pos, r, 1)[1];
  if (m.neg.rate > 0.0) k += m.neg.rate * neg_mgf_deriv(m.neg, r);
  return k;
}

double mean(const ModelSpec& m) {
  return m.drift_a + m.pos.rate * pos_mean(m.pos) -
         m.neg.rate * neg_mean(m.neg);
}

double variance(const ModelSpec& m) {
  return m.sigma * m.sigma + m.pos.rate * pos_moment2(m.pos) +
         m.neg.rate * neg_moment2(m.neg);
}

CaseInfo classify(const ModelSpec& m) {
  int D = 0;
  for (const PoleTerm& t : pole_form(m.neg)) D += t.k + 1;
  CaseInfo info;
  info.D = D;
  bool ns = m.sigma > 0.0 || (m.sigma == 0.0 && m.drift_a < 0.0);
  info.tag = ns ? CaseTag::NS : CaseTag::S;
  info.N = ns ? D + 1 : D;
  return info;
}

}  // namespace levysup
