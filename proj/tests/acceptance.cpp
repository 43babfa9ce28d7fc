// Acceptance gate: one line per criterion, exit code = number of failures.
//
// Each criterion states its own tolerance and is checked against values that
// never come from the code path under test: printed reference constants,
// closed forms, independently coded convolutions, or Monte Carlo.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "levysup/infimum.hpp"
#include "levysup/mc.hpp"
#include "levysup/model.hpp"
#include "levysup/roots.hpp"
#include "levysup/supremum.hpp"
#include "levysup/transforms.hpp"
#include "models.hpp"

namespace {

using namespace levysup;

int g_failures = 0;

std::string strf(const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  return buf;
}

double now_s() {
  using clk = std::chrono::steady_clock;
  return std::chrono::duration<double>(clk::now().time_since_epoch()).count();
}

void run(int idx, const char* name,
         const std::function<std::pair<bool, std::string>()>& body) {
  bool ok = false;
  std::string detail;
  try {
    std::tie(ok, detail) = body();
  } catch (const std::exception& e) {
    ok = false;
    detail = strf("threw: %s", e.what());
  }
  std::printf("[%s] %2d. %s (%s)\n", ok ? "PASS" : "FAIL", idx, name,
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double chk(double got, double want) { return std::abs(got - want); }

// Real value of the tilted positive-jump tail at a real tilt.
double pt(const ModelSpec& m, double x, double u) {
  return pi_tilde(m, x, cdouble(u, 0.0)).real();
}

// --- 1. showcase roots against the printed 3 d.p. values -------------------

std::pair<bool, std::string> c1_roots() {
  double t0 = now_s();
  RootSet rs = find_roots(fixtures::example3(), 0.0);
  double dt = now_s() - t0;

  double real_r = 0.0, pair_re = 0.0, pair_im = 0.0;
  int n_real = 0, n_pair = 0;
  for (const auto& ri : rs.roots) {
    if (std::abs(ri.r) < 1e-12) continue;  // the zero root leads at s = 0
    if (std::abs(ri.r.imag()) > 1e-9) {
      pair_re = ri.r.real();
      pair_im = std::abs(ri.r.imag());
      ++n_pair;
    } else {
      real_r = ri.r.real();
      ++n_real;
    }
  }
  bool shape = rs.N == 4 && n_real == 1 && n_pair == 2;
  double dev = std::max({chk(real_r, 2.159), chk(pair_re, 1.023),
                         chk(pair_im, 6.290)});
  bool ok = shape && dev <= 5e-3 && dt < 5.0;
  return {ok, strf("max dev %.2e vs 5e-3, %.3f s vs 5 s", dev, dt)};
}

// --- 2. showcase limit density coefficients ---------------------------------

std::pair<bool, std::string> c2_limit_density() {
  InfimumDensity lim = limit_density(fixtures::example3());
  const FusedTerm* tr = nullptr;  // pure exponential term
  const FusedTerm* tp = nullptr;  // damped oscillation
  auto fused = fused_view(lim);
  for (const auto& t : fused) {
    if (std::abs(t.w) < 1e-9) tr = &t;
    else tp = &t;
  }
  if (!tr || !tp || tr->cos_coef.empty() || tp->cos_coef.empty() ||
      tp->sin_coef.empty())
    return {false, "fused view missing a term"};

  double dev = std::max({chk(lim.constant, 0.501), chk(tr->cos_coef[0], 0.582),
                         chk(tp->cos_coef[0], 0.002),
                         chk(tp->sin_coef[0], 0.008), chk(tr->v, 2.159),
                         chk(tp->v, 1.023), chk(tp->w, 6.290)});

  const double pi2 = M_PI * M_PI;
  double mu_closed = (49.0 + 36.0 * pi2) / (-5.0 - 20.0 * pi2);
  double dev_mu = std::abs(lim.constant - 1.0 / std::abs(mu_closed));

  bool ok = dev <= 5e-3 && dev_mu <= 1e-6;
  return {ok, strf("coef dev %.2e vs 5e-3, constant vs 1/|mean| %.2e vs 1e-6",
                   dev, dev_mu)};
}

// --- 3. showcase supremum constants -----------------------------------------

std::pair<bool, std::string> c3_sup_constants() {
  SupremumLaw law = supremum_law(fixtures::example3());
  double da = chk(law.a_star, 2.169);
  double dr = chk(1.0 - law.rho, 0.418);
  double dc = chk(law.c_star, 1.104);
  bool ok = da <= 1e-2 && dr <= 5e-3 && dc <= 1e-2;
  return {ok, strf("a* dev %.2e vs 1e-2, 1-rho dev %.2e vs 5e-3, "
                   "c* dev %.2e vs 1e-2", da, dr, dc)};
}

// --- 4. unit-exponential model: CDF, sampler, Monte Carlo -------------------

std::pair<bool, std::string> c4_m1_oracles() {
  ModelSpec m = fixtures::m1();
  SupremumLaw law = supremum_law(m);

  std::vector<double> xs;
  for (int i = 0; i <= 80; ++i) xs.push_back(0.25 * i);
  auto F = supremum_cdf(law, xs);
  double dev_cdf = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    dev_cdf = std::max(dev_cdf, std::abs(F[i] - (-std::expm1(-xs[i]))));

  const std::size_t n = 1000000;
  auto draws = sample_supremum(law, 1, n);
  std::sort(draws.begin(), draws.end());
  double ks = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double u = -std::expm1(-draws[i]);
    ks = std::max(ks, std::max(std::abs((i + 1.0) / n - u),
                               std::abs(u - double(i) / n)));
  }
  double band = 1.63 / std::sqrt(double(n));  // 99% Kolmogorov band

  SimConfig cfg;
  cfg.horizon_T = 200.0;
  cfg.n_paths = 100000;
  cfg.seed = 1;
  double t0 = now_s();
  SimResult res = simulate_sup(m, cfg);
  double dt = now_s() - t0;
  std::vector<double> qs;
  for (int j = 1; j <= 20; ++j) qs.push_back(-std::log(1.0 - j / 21.0));
  double worst_z = 0.0;
  for (const auto& row : ecdf_rows(res, qs)) {
    double truth = -std::expm1(-row.x);
    worst_z = std::max(worst_z, std::abs(row.cdf - truth) / row.se);
  }

  bool ok = dev_cdf <= 1e-8 && ks <= band && worst_z <= 3.0 && dt <= 120.0;
  return {ok, strf("cdf dev %.1e vs 1e-8, KS %.5f vs %.5f, mc worst z %.2f "
                   "vs 3, mc %.1f s vs 120 s", dev_cdf, ks, band, worst_z, dt)};
}

// --- 5. two-sided factorisation identity ------------------------------------

std::pair<bool, std::string> c5_factorisation() {
  const std::vector<ModelSpec> models = {
      fixtures::m1(), fixtures::example3(), fixtures::mg1(),
      fixtures::hyperexp2_ns(), fixtures::tabulated_ns()};
  double dev = 0.0;
  for (const auto& m : models) {
    for (double s : {0.5, 1.0, 2.0}) {
      RootSet rs = find_roots(m, s);
      for (int j = 1; j <= 10; ++j) {
        for (double sign : {1.0, -1.0}) {
          cdouble r(0.0, sign * 0.25 * j);
          cdouble prod = killed_supremum_mgf(m, s, r) * infimum_mgf(m, rs, r);
          cdouble want = s / (s - cumulant(m, r));
          dev = std::max(dev, std::abs(prod - want));
        }
      }
    }
  }
  return {dev <= 1e-6, strf("5 models x 3 kill rates x 20 imaginary points, "
                            "max dev %.2e vs 1e-6", dev)};
}

// --- 6. no downward jumps: transform collapses to -r k'(0) / k(r) -----------

std::pair<bool, std::string> c6_spectrally_positive() {
  double dev = 0.0;
  for (const auto& m :
       {fixtures::mg1(), fixtures::spectrally_positive_halfnormal()}) {
    SupremumLaw law = supremum_law(m);
    for (int j = 1; j <= 20; ++j) {
      double r = -0.2 * j;
      cdouble want = mean(m) * r / cumulant(m, r);
      dev = std::max(dev, std::abs(supremum_mgf(law, r) - want));
    }
  }
  return {dev <= 1e-8, strf("2 models x 20 real r < 0, max dev %.2e vs 1e-8",
                            dev)};
}

// --- 7. closed-form subordinator triplets ------------------------------------

// Distinct-root hyperexponential closed form (d = 2): shared by the
// two-rate model and by the repeated-rate reduction check below.
double hyp2_pi(const ModelSpec& m, double x, double r2, double r3, double b1,
               double b2) {
  double amu = -mean(m);
  double c2 = r3 * (r2 - b1) * (b2 - r2) / (b1 * b2 * (r3 - r2));
  double c3 = r2 * (r3 - b1) * (r3 - b2) / (b1 * b2 * (r3 - r2));
  return (pt(m, x, 0.0) + c2 * pt(m, x, r2) + c3 * pt(m, x, r3)) / amu;
}

std::pair<bool, std::string> c7_corollaries() {
  const std::vector<double> xg{0.1, 0.3, 0.7, 1.3, 2.1, 3.5};
  double dev_pi = 0.0, dev_a = 0.0, dev_equiv = 0.0;

  // Two-rate hyperexponential, diffusion present, roots real and distinct.
  {
    ModelSpec m = fixtures::hyperexp2_ns();
    RootSet rs = find_roots(m, 0.0);
    double r2 = rs.roots[1].r.real(), r3 = rs.roots[2].r.real();
    double b1 = 1.0, b2 = 2.0, amu = -mean(m);
    SupremumLaw law = supremum_law(m);
    dev_a = std::max(dev_a, chk(law.a_star, m.sigma * m.sigma * r2 * r3 /
                                                (2.0 * amu * b1 * b2)));
    for (double x : xg)
      dev_pi = std::max(dev_pi,
                        chk(law.pi_star(x), hyp2_pi(m, x, r2, r3, b1, b2)));
  }

  // Two-rate hyperexponential, creeping case: one nonzero root, and the raw
  // upward jump density enters with weight r2 / (b1 b2 |mean|).
  {
    ModelSpec m;
    m.drift_a = 0.4;
    m.sigma = 0.0;
    m.pos.rate = 0.5;
    m.pos.kind = PosKind::Exponential;
    m.pos.beta = 2.0;
    m.neg.rate = 2.0;
    m.neg.kind = NegKind::Hyperexponential;
    m.neg.weights = {0.5, 0.5};
    m.neg.rates = {1.0, 2.0};
    RootSet rs = find_roots(m, 0.0);
    double r2 = rs.roots[1].r.real();
    double b1 = 1.0, b2 = 2.0, amu = -mean(m);
    SupremumLaw law = supremum_law(m);
    dev_a = std::max(dev_a,
                     chk(law.a_star, m.drift_a * r2 / (b1 * amu * b2)));
    for (double x : xg) {
      double want = (r2 / (b1 * b2) * m.pos.rate * pos_density(m.pos, x) +
                     pt(m, x, 0.0) -
                     (1.0 - r2 / b1) * (1.0 - r2 / b2) * pt(m, x, r2)) /
                    amu;
      dev_pi = std::max(dev_pi, chk(law.pi_star(x), want));
    }
  }

  // Repeated-rate (Erlang) law with real distinct roots, plus the reduction
  // check: the distinct-rate closed form with b1 = b2 = b must agree.
  {
    ModelSpec m;
    m.drift_a = 0.1;
    m.sigma = 0.4;
    m.pos.rate = 0.2;
    m.pos.kind = PosKind::Exponential;
    m.pos.beta = 5.0;
    m.neg.rate = 1.0;
    m.neg.kind = NegKind::Erlang;
    m.neg.d = 2;
    m.neg.b = 1.0;
    RootSet rs = find_roots(m, 0.0);
    double r2 = rs.roots[1].r.real(), r3 = rs.roots[2].r.real();
    double b = m.neg.b, amu = -mean(m);
    SupremumLaw law = supremum_law(m);
    dev_a = std::max(dev_a, chk(law.a_star, m.sigma * m.sigma * r2 * r3 /
                                                (2.0 * amu * b * b)));
    for (double x : xg) {
      double want = (pt(m, x, 0.0) -
                     r3 * (b - r2) * (b - r2) / (b * b * (r3 - r2)) *
                         pt(m, x, r2) +
                     r2 * (b - r3) * (b - r3) / (b * b * (r3 - r2)) *
                         pt(m, x, r3)) /
                    amu;
      dev_pi = std::max(dev_pi, chk(law.pi_star(x), want));
      dev_equiv = std::max(dev_equiv, chk(want, hyp2_pi(m, x, r2, r3, b, b)));
    }
  }

  // Erlang law whose nonzero roots form a conjugate pair: oscillatory kernels.
  {
    ModelSpec m = fixtures::erlang2_diffusion(3.0);
    m.pos.rate = 0.5;
    m.pos.kind = PosKind::Exponential;
    m.pos.beta = 3.0;
    RootSet rs = find_roots(m, 0.0);
    double v = rs.roots[1].r.real(), w = std::abs(rs.roots[1].r.imag());
    if (w < 0.1) return {false, "conjugate-pair model lost its pair"};
    double r2sq = v * v + w * w, b = m.neg.b, amu = -mean(m);
    SupremumLaw law = supremum_law(m);
    dev_a = std::max(dev_a, chk(law.a_star, m.sigma * m.sigma * r2sq /
                                                (2.0 * amu * b * b)));
    for (double x : xg) {
      auto [cc, cs] = c_transforms(m, x, v, w);
      double want = (pt(m, x, 0.0) + (r2sq - b * b) / (b * b) * cc +
                     (b * b * v + r2sq * (v - 2.0 * b)) / (b * b * w) * cs) /
                    amu;
      dev_pi = std::max(dev_pi, chk(law.pi_star(x), want));
    }
  }

  // Erlang law in the creeping case.
  {
    ModelSpec m = fixtures::erlang2_s();
    RootSet rs = find_roots(m, 0.0);
    double r2 = rs.roots[1].r.real();
    double b = m.neg.b, amu = -mean(m);
    SupremumLaw law = supremum_law(m);
    dev_a = std::max(dev_a, chk(law.a_star, m.drift_a * r2 / (amu * b * b)));
    for (double x : xg) {
      double want = (r2 / (b * b) * m.pos.rate * pos_density(m.pos, x) +
                     pt(m, x, 0.0) -
                     (b - r2) * (b - r2) / (b * b) * pt(m, x, r2)) /
                    amu;
      dev_pi = std::max(dev_pi, chk(law.pi_star(x), want));
    }
  }

  bool ok = dev_pi <= 1e-8 && dev_a <= 1e-8 && dev_equiv <= 1e-8;
  return {ok, strf("pi* dev %.2e, a* dev %.2e, repeated-rate reduction dev "
                   "%.2e, all vs 1e-8", dev_pi, dev_a, dev_equiv)};
}

// --- 8. compound-Poisson workload vs independent convolution series ---------

std::pair<bool, std::string> c8_beekman() {
  ModelSpec m = fixtures::mg1();
  SupremumLaw law = supremum_law(m);
  CdfOptions opt;
  opt.x_max = 20.48;
  opt.grid_log2 = 15;

  std::vector<double> xs;
  for (int i = 0; i <= 2000; ++i) xs.push_back(0.01 * i);
  auto F = supremum_cdf(law, xs, opt);

  // Independent series: for Exp(1) upward jumps the integrated-tail law is
  // again Exp(1), its m-fold convolution power is an Erlang CDF, and the
  // Erlang CDF is a Poisson tail. No grids, no transforms shared with the
  // library path.
  double rho = m.pos.rate * (1.0 / m.pos.beta) / std::abs(m.drift_a);
  auto beekman = [rho](double x) {
    double pj = std::exp(-x), cum = pj, series = 1.0, pw = 1.0;
    for (int k = 1; k <= 60; ++k) {
      pw *= rho;
      series += pw * (1.0 - cum);  // P{Erlang(k,1) <= x} = P{Poisson(x) >= k}
      pj *= x / k;
      cum += pj;
    }
    return (1.0 - rho) * series;
  };

  double dev_oracle = 0.0, dev = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double fb = beekman(xs[i]);
    dev_oracle = std::max(
        dev_oracle, std::abs(fb - (1.0 - 0.5 * std::exp(-0.5 * xs[i]))));
    dev = std::max(dev, std::abs(F[i] - fb));
  }
  bool ok = dev <= 1e-6 && dev_oracle <= 1e-12;
  return {ok, strf("sup dev %.2e vs 1e-6 on [0,20], oracle self-check %.1e",
                   dev, dev_oracle)};
}

// --- 9. residue route vs companion-matrix route ------------------------------

std::pair<bool, std::string> c9_residue_vs_matrix() {
  const std::vector<double> ys{-4.0, -2.5, -1.2, -0.3, -0.05};
  std::vector<ModelSpec> models = {
      fixtures::m1(),        fixtures::example3(),
      fixtures::mg1(),       fixtures::bm_only(),
      fixtures::hyperexp2_ns(), fixtures::erlang2_s(),
      fixtures::spectrally_positive_halfnormal(),
      fixtures::tabulated_ns(), fixtures::erlang2_diffusion(1.0),
      fixtures::erlang2_diffusion(3.0)};

  double dev = 0.0;
  for (const auto& m : models) {
    for (double s : {0.5, 2.0}) {
      RootSet rs = find_roots(m, s);
      InfimumDensity dr = infimum_density_residue(m, rs);
      InfimumDensity dm = infimum_density_matrix(m, rs);
      dev = std::max(dev, std::abs(dr.atom0 - dm.atom0));
      for (double y : ys) dev = std::max(dev, std::abs(dr.eval(y) - dm.eval(y)));
    }
  }

  // Drive two roots into collision: the Erlang-diffusion family flips from a
  // conjugate pair to real distinct roots as the kill rate grows, so bisect
  // the flip and take the fused double root the finder reports there.
  ModelSpec mc = fixtures::erlang2_diffusion(3.0);
  auto has_pair = [&](double s) {
    for (const auto& ri : find_roots(mc, s).roots)
      if (std::abs(ri.r.imag()) > 1e-9) return true;
    return false;
  };
  double lo = 1.0, hi = 2.0;  // pair at lo, real and distinct at hi
  while (hi - lo > 1e-13) {
    double mid = 0.5 * (lo + hi);
    (has_pair(mid) ? lo : hi) = mid;
  }
  bool fused = false;
  double dev_dbl = 0.0;
  for (double s : {hi, lo}) {
    RootSet rs = find_roots(mc, s);
    bool has_mult = false;
    for (const auto& ri : rs.roots) has_mult = has_mult || ri.multiplicity > 1;
    if (!has_mult) continue;
    fused = true;
    InfimumDensity dr = infimum_density_residue(mc, rs);
    InfimumDensity dm = infimum_density_matrix(mc, rs);
    for (double y : ys)
      dev_dbl = std::max(dev_dbl, std::abs(dr.eval(y) - dm.eval(y)));
    break;
  }

  bool ok = dev <= 1e-8 && fused && dev_dbl <= 1e-8;
  return {ok, strf("10 models x 2 kill rates dev %.2e, double root at s "
                   "about %.6f dev %.2e, both vs 1e-8%s", dev, hi, dev_dbl,
                   fused ? "" : ", no fused root found")};
}

// --- 10. randomized model corpus ---------------------------------------------

std::pair<bool, std::string> c10_fuzz() {
  std::mt19937_64 gen(20260817ull);
  auto U = [&] { return std::uniform_real_distribution<double>()(gen); };
  auto ur = [&](double a, double b) { return a + (b - a) * U(); };

  const double s_cycle[3] = {0.3, 1.0, 2.5};
  int built = 0, attempts = 0, rejected = 0, check_failures = 0;
  double worst_mass = 0.0, worst_mgf0 = 0.0, most_neg_pi = 0.0;
  std::string first_failure;

  while (built < 120 && attempts < 600) {
    ++attempts;
    ModelSpec m;
    m.sigma = U() < 1.0 / 3 ? 0.0 : ur(0.3, 2.5);
    m.drift_a = ur(-0.3, 1.3);

    if (U() >= 0.2) {
      m.pos.rate = ur(0.05, 2.0);
      if (built % 10 == 7) {
        double c = ur(0.5, 3.0);
        m.pos.kind = PosKind::Tabulated;
        m.pos.tab_x = {0.0, 0.5 * c, c};
        m.pos.tab_f = {0.0, 2.0 / c, 0.0};
      } else {
        double kk = U();
        if (kk < 1.0 / 3) {
          m.pos.kind = PosKind::HalfNormal;
          m.pos.beta = ur(0.5, 3.0);
        } else if (kk < 2.0 / 3) {
          m.pos.kind = PosKind::Exponential;
          m.pos.beta = ur(0.7, 4.0);
        } else if (kk < 5.0 / 6) {
          m.pos.kind = PosKind::Erlang;
          m.pos.n = 1 + int(U() * 3.0);
          m.pos.beta = ur(0.7, 4.0);
        } else {
          m.pos.kind = PosKind::Hyperexponential;
          double w1 = ur(0.2, 0.8);
          m.pos.weights = {w1, 1.0 - w1};
          m.pos.rates = {ur(0.5, 1.9), ur(2.1, 4.0)};
        }
      }
    }

    if (U() >= 0.15) {
      m.neg.rate = ur(0.3, 3.0);
      double kk = U();
      if (kk < 0.30) {
        double b = ur(0.5, 2.5), w = ur(0.8, 3.0);
        double K = b * (b * b + w * w) / (w * w);  // K (1 - cos wz) e^{-bz}
        m.neg.kind = NegKind::PoleForm;
        m.neg.poles = {
            PoleTerm{cdouble(b, 0.0), 0, {cdouble(K, 0.0)}},
            PoleTerm{cdouble(b, w), 0, {cdouble(-K / 2.0, 0.0)}},
            PoleTerm{cdouble(b, -w), 0, {cdouble(-K / 2.0, 0.0)}}};
      } else if (kk < 0.65) {
        m.neg.kind = NegKind::Erlang;
        m.neg.d = 1 + int(U() * 3.0);
        m.neg.b = ur(0.5, 3.0);
      } else {
        m.neg.kind = NegKind::Hyperexponential;
        double w1 = ur(0.2, 0.8);
        m.neg.weights = {w1, 1.0 - w1};
        m.neg.rates = {ur(0.4, 1.4), ur(1.6, 4.0)};
      }
    } else {
      m.neg.rate = 0.0;
    }

    if (m.sigma == 0.0 && m.pos.rate == 0.0 && m.neg.rate == 0.0)
      m.sigma = 0.8;
    m.drift_a -= mean(m) + 0.25;  // pin the mean at -0.25

    try {
      validate(m);
    } catch (const std::exception&) {
      ++rejected;
      continue;
    }
    double s = s_cycle[built % 3];
    ++built;

    try {
      RootSet rs = find_roots(m, s);
      InfimumDensity d = infimum_density_residue(m, rs);
      worst_mass = std::max(worst_mass, std::abs(total_mass(d) - 1.0));
      worst_mgf0 = std::max(
          worst_mgf0, std::abs(infimum_mgf(m, rs, cdouble(0.0, 0.0)) - 1.0));
      worst_mgf0 = std::max(
          worst_mgf0, std::abs(killed_supremum_mgf(m, s, cdouble(0.0, 0.0)) -
                               1.0));
      SupremumLaw law = supremum_law(m);
      for (double x : {0.05, 0.4, 1.1, 3.0})
        most_neg_pi = std::min(most_neg_pi, law.pi_star(x));
    } catch (const std::exception& e) {
      ++check_failures;
      if (first_failure.empty())
        first_failure = strf("model %d threw: %s", built, e.what());
    }
  }

  bool ok = built >= 100 && check_failures == 0 && worst_mass <= 1e-6 &&
            worst_mgf0 <= 1e-8 && most_neg_pi >= -1e-10;
  std::string detail =
      strf("%d models (%d structurally rejected), |mass-1| %.1e vs 1e-6, "
           "|mgf(0)-1| %.1e vs 1e-8, min pi* %.1e vs -1e-10",
           built, rejected, worst_mass, worst_mgf0, most_neg_pi);
  if (check_failures)
    detail += strf("; %d checks threw, first: %s", check_failures,
                   first_failure.c_str());
  return {ok, detail};
}

}  // namespace

int main() {
  run(1, "showcase roots, 3 d.p. references, under 5 s", c1_roots);
  run(2, "showcase limit-density coefficients and 1/|mean| constant",
      c2_limit_density);
  run(3, "showcase supremum constants a*, 1-rho, c*", c3_sup_constants);
  run(4, "unit-exponential supremum: CDF, sampler KS, Monte Carlo",
      c4_m1_oracles);
  run(5, "two-sided factorisation identity", c5_factorisation);
  run(6, "spectrally positive reduction", c6_spectrally_positive);
  run(7, "closed-form subordinator triplets", c7_corollaries);
  run(8, "compound-Poisson workload vs independent convolution series",
      c8_beekman);
  run(9, "residue vs companion-matrix densities, double root included",
      c9_residue_vs_matrix);
  run(10, "randomized corpus: mass, normalization, nonnegativity", c10_fuzz);

  std::printf("acceptance: %d of 10 criteria passed\n", 10 - g_failures);
  return g_failures;
}
