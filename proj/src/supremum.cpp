#include "levysup/supremum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "levysup/errors.hpp"
#include "levysup/poly.hpp"
#include "levysup/quadrature.hpp"
#include "levysup/rng.hpp"
#include "levysup/transforms.hpp"

namespace levysup {

namespace {

// Abscissa of convergence of E exp(r J+): the slowest decay rate of the
// positive jump density (inf for super-exponential or compact support).
double pos_tail_abscissa(const PositiveJumps& pos) {
  switch (pos.kind) {
    case PosKind::Exponential:
    case PosKind::Erlang:
      return pos.beta;
    case PosKind::Hyperexponential:
      return *std::min_element(pos.rates.begin(), pos.rates.end());
    case PosKind::HalfNormal:
    case PosKind::Tabulated:
      return std::numeric_limits<double>::infinity();
  }
  fail(Err::EvaluationError, "unknown positive jump kind");
}

// p-th u-derivative of I(r, u) = int_0^inf (e^{rx} - 1) pi_tilde(x, u) dx,
// in closed form:
//   I = lam [ (M(r) - M(-u)) / (r + u) - (1 - M(-u)) / u ],
// differentiated by the Leibniz rule. Near r = -u the first quotient is
// evaluated by its Taylor series (p = 0) or the term falls back to
// quadrature (p >= 1).
cdouble I_deriv(const ModelSpec& m, cdouble r, cdouble u, int p) {
  const double lam = m.pos.rate;
  const cdouble ru = r + u;
  if (std::abs(ru) < 1e-3 * (1.0 + std::abs(r) + std::abs(u))) {
    if (p == 0) {
      // (M(r) - M(-u)) / (r + u) = sum_{q>=1} M^(q)(-u) (r+u)^{q-1} / q!
      auto d = pos_mgf_derivs(m.pos, -u, 10);
      cdouble quot(0.0, 0.0), pw(1.0, 0.0);
      for (int q = 1; q <= 10; ++q) {
        quot += d[q] * pw / factorial(q);
        pw *= ru;
      }
      return lam * (quot - (1.0 - d[0]) / u);
    }
    auto q = integrate_tail(
        [&](double x) {
          return (std::exp(r * x) - 1.0) * pi_tilde_deriv(m, x, u, p);
        },
        0.0, pos_mean(m.pos));
    return q.value;
  }
  auto d = pos_mgf_derivs(m.pos, -u, p);
  const cdouble Mr = pos_mgf(m.pos, r);
  cdouble A(0.0, 0.0), B(0.0, 0.0);
  for (int q = 0; q <= p; ++q) {
    // q-th derivative of M(r) - M(-u) and of 1 - M(-u): both -(-1)^q M^(q)(-u)
    // for q >= 1.
    cdouble gA = (q == 0) ? Mr - d[0] : (q % 2 ? d[q] : -d[q]);
    cdouble gB = (q == 0) ? 1.0 - d[0] : (q % 2 ? d[q] : -d[q]);
    int mm = p - q;
    double sf = (mm % 2 ? -1.0 : 1.0) * factorial(mm) * binomial(p, q);
    A += gA * sf / cpow_int(ru, mm + 1);
    B += gB * sf / cpow_int(u, mm + 1);
  }
  return lam * (A - B);
}

double quad_scale(const SupremumLaw& law) {
  double s = pos_mean(law.model.pos);
  for (const DensityTerm& t : law.limit.terms)
    s = std::max(s, 1.0 / std::max(1e-8, t.r.real()));
  return s;
}

}  // namespace

double SupremumLaw::pi_star(double x) const {
  require(x >= 0.0, Err::DomainError, "pi_star lives on x > 0");
  if (model.pos.rate == 0.0) return 0.0;
  cdouble acc(direct_weight * pos_density(model.pos, x), 0.0);
  acc += limit.constant * pi_tilde(model, x, cdouble(0.0, 0.0));
  for (const DensityTerm& t : limit.terms)
    for (std::size_t j = 0; j < t.coef.size(); ++j)
      acc += t.coef[j] * pi_tilde_deriv(model, x, t.r, int(j)) /
             factorial(int(j));
  return acc.real();
}

double SupremumLaw::f0(double x) const {
  require(mass > 0.0, Err::DomainError, "f0 undefined for a jump-free law");
  return pi_star(x) / mass;
}

SupremumLaw supremum_law(const ModelSpec& m) {
  validate(m);
  require(mean(m) < 0.0, Err::MeanNotNegative,
          "the supremum law needs a negative-mean model");
  SupremumLaw law;
  law.model = m;
  RootSet roots0 = find_roots(m, 0.0);
  law.limit = limit_density(m, roots0);
  law.a_star = a_star_killed(m, roots0);
  law.direct_weight = law.limit.atom0 * m.pos.rate;
  if (m.pos.rate > 0.0) {
    auto q = integrate_tail([&](double x) { return law.pi_star(x); }, 0.0,
                            quad_scale(law));
    require(std::isfinite(q.value) && q.value > -1e-9, Err::EvaluationError,
            "supremum jump mass came out negative or non-finite");
    law.mass = std::max(0.0, q.value);
  }
  law.rho = law.mass / (1.0 + law.mass);
  law.c_star = law.a_star > 0.0 ? (1.0 + law.mass) / law.a_star : 0.0;
  return law;
}

cdouble killed_supremum_mgf(const ModelSpec& m, double s, cdouble r) {
  require(s > 0.0, Err::DomainError, "kill rate s must be positive");
  validate(m);
  require(std::isfinite(mean(m)) && std::isfinite(variance(m)),
          Err::HypothesisViolated, "needs finite mean and variance");
  RootSet roots = find_roots(m, s);
  InfimumDensity d = infimum_density_residue(m, roots);
  double A = a_star_killed(m, roots);
  cdouble J(0.0, 0.0);
  if (m.pos.rate > 0.0) {
    if (d.atom0 > 0.0) J += d.atom0 * m.pos.rate * (pos_mgf(m.pos, r) - 1.0);
    for (const DensityTerm& t : d.terms)
      for (std::size_t j = 0; j < t.coef.size(); ++j)
        J += t.coef[j] * I_deriv(m, r, t.r, int(j)) / factorial(int(j));
    J /= s;
  }
  cdouble denom = 1.0 - r * A - J;
  require(std::abs(denom) >= 1e-12, Err::PoleHit,
          "killed transform denominator vanishes");
  return 1.0 / denom;
}

cdouble supremum_mgf(const SupremumLaw& law, cdouble r) {
  if (r == cdouble(0.0, 0.0)) return cdouble(1.0, 0.0);  // k*(0) = 0 exactly
  cdouble J(0.0, 0.0);
  if (law.model.pos.rate > 0.0) {
    if (r.real() > 0.0) {
      double absc = pos_tail_abscissa(law.model.pos);
      require(r.real() < absc * (1.0 - 1e-9), Err::DomainError,
              "transform diverges at or past the jump-tail abscissa");
    }
    auto q = integrate_tail(
        [&](double x) { return (std::exp(r * x) - 1.0) * law.pi_star(x); },
        0.0, quad_scale(law));
    J = q.value;
  }
  cdouble denom = 1.0 - law.a_star * r - J;
  if (r.imag() == 0.0)
    require(denom.real() > 0.0, Err::DomainError,
            "argument lies at or past the transform singularity");
  require(std::abs(denom) > 1e-12, Err::DomainError,
          "transform denominator vanishes");
  return 1.0 / denom;
}

GeometricCompound geometric_compound(const SupremumLaw& law) {
  require(law.a_star > 0.0, Err::DriftZero,
          "geometric-compound form needs a_star > 0");
  GeometricCompound g;
  g.rho = law.rho;
  g.c_star = law.c_star;
  auto keep = std::make_shared<SupremumLaw>(law);
  g.f0 = [keep](double x) { return keep->f0(x); };
  return g;
}

// --- sampling and CDF machinery ----------------------------------------------

namespace {

// Smallest x so that the pi_star tail beyond it is < 1e-9 of the total mass:
// start from the exponential decay rate of the supremum tail, verify by
// quadrature, double at most 3 times. Requires law.mass > 0.
double auto_x_max(const SupremumLaw& law, double user_max) {
  double R = lundberg_exponent(law.model);
  double x = 1.2 * 23.0 / R;
  if (user_max > 0.0) x = std::max(x, 1.02 * user_max);
  for (int t = 0;; ++t) {
    auto tail = integrate_tail([&](double z) { return law.pi_star(z); }, x,
                               quad_scale(law), {1e-14, 1e-6, 8000, false});
    if (std::abs(tail.value) < 1e-9 * law.mass) return x;
    require(t < 3, Err::PrecisionError,
            "positive jump tail refuses to decay within the grid budget");
    x *= 2.0;
  }
}

struct F0Grid {
  double h = 0.0;
  std::vector<double> pdf;  // f0 at the nodes, clipped at 0
  std::vector<double> cdf;  // trapezoid cumulative, normalized to end at 1
};

F0Grid build_f0_grid(const SupremumLaw& law, double x_max, int log2n) {
  F0Grid g;
  std::size_t n = std::size_t(1) << log2n;
  g.h = x_max / double(n - 1);
  g.pdf.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    g.pdf[i] = std::max(0.0, law.f0(double(i) * g.h));
  g.cdf.resize(n);
  g.cdf[0] = 0.0;
  for (std::size_t i = 1; i < n; ++i)
    g.cdf[i] = g.cdf[i - 1] + 0.5 * g.h * (g.pdf[i - 1] + g.pdf[i]);
  double total = g.cdf.back();
  require(total > 0.0, Err::EvaluationError, "empty f0 grid");
  for (double& c : g.cdf) c /= total;
  return g;
}

// Geometric-compound sampler shared by the public API and the CDF self-check;
// tolerates a_star = 0 (no Exp factors).
struct CompoundSampler {
  double rho = 0.0, c_star = 0.0, a_star = 0.0;
  F0Grid grid;

  double eta(Rng& rng) const {
    double U = rng.uniform();
    std::size_t lo = 0, hi = grid.cdf.size() - 1;
    while (hi - lo > 1) {  // smallest hi with cdf[hi] >= U
      std::size_t mid = (lo + hi) / 2;
      (grid.cdf[mid] >= U ? hi : lo) = mid;
    }
    double span = grid.cdf[hi] - grid.cdf[lo];
    double frac = span > 0.0 ? (U - grid.cdf[lo]) / span : 0.0;
    return grid.h * (double(lo) + frac);
  }

  double draw(Rng& rng) const {
    long nu = 0;
    if (rho > 0.0)
      nu = long(std::floor(std::log(rng.uniform()) / std::log(rho)));
    double total = a_star > 0.0 ? rng.exponential(c_star) : 0.0;
    for (long i = 0; i < nu; ++i) {
      total += eta(rng);
      if (a_star > 0.0) total += rng.exponential(c_star);
    }
    return total;
  }
};

CompoundSampler make_sampler(const SupremumLaw& law) {
  CompoundSampler s;
  s.rho = law.rho;
  s.c_star = law.c_star;
  s.a_star = law.a_star;
  if (law.rho > 0.0)
    s.grid = build_f0_grid(law, auto_x_max(law, 0.0), 14);
  return s;
}

void fft(std::vector<cdouble>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    double ang = (inverse ? 2.0 : -2.0) * M_PI / double(len);
    cdouble wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cdouble w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        cdouble u = a[i + k], v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (inverse)
    for (cdouble& x : a) x /= double(n);
}

// Trapezoid convolution on a shared uniform grid:
//   out_i = h (sum_{j<=i} f_j g_{i-j} - (f_0 g_i + f_i g_0) / 2).
std::vector<double> conv_trap(const std::vector<double>& f,
                              const std::vector<double>& g, double h) {
  const std::size_t n = f.size();
  std::size_t m = 1;
  while (m < 2 * n) m <<= 1;
  std::vector<cdouble> fa(m), ga(m);
  for (std::size_t i = 0; i < n; ++i) {
    fa[i] = f[i];
    ga[i] = g[i];
  }
  fft(fa, false);
  fft(ga, false);
  for (std::size_t i = 0; i < m; ++i) fa[i] *= ga[i];
  fft(fa, true);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = h * (fa[i].real() - 0.5 * (f[0] * g[i] + f[i] * g[0]));
  return out;
}

double interp_grid(const std::vector<double>& v, double h, double x) {
  if (x <= 0.0) return v.front();
  double t = x / h;
  std::size_t j = std::size_t(t);
  if (j >= v.size() - 1) return v.back();
  double fr = t - double(j);
  return v[j] * (1.0 - fr) + v[j + 1] * fr;
}

}  // namespace

std::vector<double> sample_supremum(const SupremumLaw& law,
                                    std::uint64_t rng_seed, std::size_t n) {
  require(law.a_star > 0.0, Err::DriftZero,
          "sampler needs a_star > 0; the Exp(c*) factors degenerate");
  CompoundSampler s = make_sampler(law);
  Rng rng(rng_seed);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = s.draw(rng);
  return out;
}

std::vector<double> supremum_cdf(const SupremumLaw& law,
                                 const std::vector<double>& xs,
                                 const CdfOptions& opt) {
  for (double x : xs)
    require(std::isfinite(x), Err::Validation, "CDF grid has a non-finite x");
  std::vector<double> out(xs.size(), 0.0);
  if (xs.empty() && !opt.self_check) return out;

  const double rho = law.rho, c = law.c_star;
  if (rho == 0.0) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (xs[i] < 0.0) continue;
      out[i] = law.a_star > 0.0 ? -std::expm1(-c * xs[i]) : 1.0;
    }
    return out;
  }

  double user_max = 0.0;
  for (double x : xs) user_max = std::max(user_max, x);
  double x_max = opt.x_max;
  if (x_max > 0.0)
    require(x_max >= user_max, Err::ConfigError,
            "explicit x_max does not cover the requested grid");
  else
    x_max = auto_x_max(law, user_max);

  const std::size_t n = std::size_t(1) << opt.grid_log2;
  const double h = x_max / double(n - 1);
  std::vector<double> f0g(n);
  for (std::size_t i = 0; i < n; ++i)
    f0g[i] = std::max(0.0, law.f0(double(i) * h));

  // S[i] = sum_{m>=1} rho^m T_m(x_i), where T_m is the CDF contribution of m
  // geometric jumps; terms stop once the geometric tail drops below 1e-10.
  std::vector<double> S(n, 0.0);
  std::vector<double> conv = f0g;
  std::vector<double> erl(n), pmf(n);
  if (law.a_star > 0.0) {
    for (std::size_t i = 0; i < n; ++i) {
      double lam = c * double(i) * h;
      erl[i] = -std::expm1(-lam);  // P(Poisson(lam) >= 1)
      pmf[i] = std::exp(-lam);
    }
  }
  double rp = rho;
  for (int m = 1; std::pow(rho, m + 1) >= 1e-10; ++m, rp *= rho) {
    if (m > 1) conv = conv_trap(conv, f0g, h);
    if (law.a_star > 0.0) {
      // Advance P(Poisson >= m) to P(Poisson >= m+1), then convolve with the
      // m-fold jump density.
      for (std::size_t i = 0; i < n; ++i) {
        pmf[i] *= c * double(i) * h / double(m);
        erl[i] = std::max(0.0, erl[i] - pmf[i]);
      }
      std::vector<double> term = conv_trap(conv, erl, h);
      for (std::size_t i = 0; i < n; ++i) S[i] += rp * term[i];
    } else {
      double run = 0.0;
      for (std::size_t i = 0; i < n; ++i) {  // cumulative trapezoid of conv
        if (i > 0) run += 0.5 * h * (conv[i - 1] + conv[i]);
        S[i] += rp * run;
      }
    }
  }

  auto eval = [&](double x) {
    if (x < 0.0) return 0.0;
    double base = law.a_star > 0.0 ? -std::expm1(-c * x) : 1.0;
    double v = (1.0 - rho) * (base + interp_grid(S, h, x));
    return std::min(1.0, std::max(0.0, v));
  };
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = eval(xs[i]);

  if (opt.self_check) {
    CompoundSampler s = make_sampler(law);
    Rng rng(opt.self_check_seed);
    std::vector<double> draws(opt.self_check_n);
    for (double& d : draws) d = s.draw(rng);
    std::sort(draws.begin(), draws.end());
    double ks = 0.0;
    const double nn = double(draws.size());
    for (std::size_t i = 0; i < draws.size(); ++i) {
      double F = eval(draws[i]);
      ks = std::max(ks, std::max(F - double(i) / nn,
                                 double(i + 1) / nn - F));
    }
    require(ks <= 3.0 * 1.63 / std::sqrt(nn), Err::GridTooCoarse,
            "CDF grid fails the sampling self-check (KS " +
                std::to_string(ks) + ")");
  }
  return out;
}

}  // namespace levysup
