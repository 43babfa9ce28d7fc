#include "levysup/mc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <thread>

#include "levysup/errors.hpp"
#include "levysup/rng.hpp"
#include "levysup/roots.hpp"

namespace levysup {

namespace {

// --- jump samplers -----------------------------------------------------------

class PosSampler {
 public:
  explicit PosSampler(const PositiveJumps& pos) : pos_(&pos) {
    if (pos.kind == PosKind::Tabulated) {
      // segment masses of the piecewise-linear density
      std::size_t nseg = pos.tab_x.size() - 1;
      cum_.resize(nseg + 1);
      cum_[0] = 0.0;
      for (std::size_t i = 0; i < nseg; ++i) {
        double h = pos.tab_x[i + 1] - pos.tab_x[i];
        cum_[i + 1] = cum_[i] + 0.5 * h * (pos.tab_f[i] + pos.tab_f[i + 1]);
      }
      for (double& c : cum_) c /= cum_.back();
    }
  }

  double draw(Rng& rng) const {
    const PositiveJumps& p = *pos_;
    switch (p.kind) {
      case PosKind::Exponential:
        return rng.exponential(p.beta);
      case PosKind::Erlang: {
        double z = 0.0;
        for (int i = 0; i < p.n; ++i) z += rng.exponential(p.beta);
        return z;
      }
      case PosKind::Hyperexponential: {
        double u = rng.uniform(), acc = 0.0;
        std::size_t pick = p.weights.size() - 1;
        for (std::size_t i = 0; i < p.weights.size(); ++i) {
          acc += p.weights[i];
          if (u <= acc) {
            pick = i;
            break;
          }
        }
        return rng.exponential(p.rates[pick]);
      }
      case PosKind::HalfNormal: {
        // |N(0, pi/2 / beta^2)| has density (2 beta / pi) exp(-beta^2 x^2 / pi)
        double sz = std::sqrt(M_PI / 2.0) / p.beta;
        return sz * std::abs(rng.normal());
      }
      case PosKind::Tabulated: {
        double u = rng.uniform();
        std::size_t lo = 0, hi = cum_.size() - 1;
        while (hi - lo > 1) {
          std::size_t mid = (lo + hi) / 2;
          (cum_[mid] >= u ? hi : lo) = mid;
        }
        // invert the quadratic CDF of the linear density on segment lo
        double x0 = p.tab_x[lo], h = p.tab_x[lo + 1] - x0;
        double f0 = p.tab_f[lo], f1 = p.tab_f[lo + 1];
        double segmass = 0.5 * h * (f0 + f1);
        if (segmass <= 0.0) return x0;  // u hit a zero-mass segment boundary
        double target = (u - cum_[lo]) / (cum_[lo + 1] - cum_[lo]);
        // mass(t) = f0 t + (f1 - f0) t^2 / (2h) on [0, h]
        double A = 0.5 * (f1 - f0) / h, B = f0, C = -target * segmass;
        double t;
        if (std::abs(A) < 1e-14 * std::max(1.0, std::abs(B))) {
          t = B > 0.0 ? -C / B : 0.5 * h;
        } else {
          double disc = std::max(0.0, B * B - 4.0 * A * C);
          t = (-B + std::sqrt(disc)) / (2.0 * A);
        }
        return x0 + std::min(std::max(t, 0.0), h);
      }
    }
    fail(Err::EvaluationError, "unknown positive jump kind");
  }

 private:
  const PositiveJumps* pos_;
  std::vector<double> cum_;  // normalized cumulative segment masses
};

class NegSampler {
 public:
  explicit NegSampler(const NegativeJumps& neg) : neg_(&neg) {
    if (neg.kind != NegKind::PoleForm || neg.poles.empty()) return;
    // Rejection envelope C * c exp(-c z). The rate backs off to 0.9 b1 when
    // the slowest pole carries a polynomial factor, which the pure rate b1
    // could not dominate.
    auto poles = pole_form(neg);
    double bmin = poles.front().b.real();
    bool poly = false;
    for (const PoleTerm& t : poles)
      if (t.b.real() < bmin * (1.0 + 1e-12) && t.k >= 1) poly = true;
    env_rate_ = poly ? 0.9 * bmin : bmin;
    double zmax = 60.0 / bmin, ratio = 0.0;
    for (int i = 0; i < 2000; ++i) {
      double z = i < 1200 ? zmax * (i + 1) / 1200.0
                          : zmax * 1e-6 * std::pow(1e6, (i - 1200) / 799.0);
      double env = env_rate_ * std::exp(-env_rate_ * z);
      ratio = std::max(ratio, neg_density(neg, z) / env);
    }
    env_C_ = 1.1 * ratio;
    require(std::isfinite(env_C_) && env_C_ > 0.0, Err::EnvelopeError,
            "could not bound the rejection envelope");
  }

  double magnitude(Rng& rng) const {
    const NegativeJumps& n = *neg_;
    switch (n.kind) {
      case NegKind::Hyperexponential: {
        double u = rng.uniform(), acc = 0.0;
        std::size_t pick = n.weights.size() - 1;
        for (std::size_t i = 0; i < n.weights.size(); ++i) {
          acc += n.weights[i];
          if (u <= acc) {
            pick = i;
            break;
          }
        }
        return rng.exponential(n.rates[pick]);
      }
      case NegKind::Erlang: {
        double z = 0.0;
        for (int i = 0; i < n.d; ++i) z += rng.exponential(n.b);
        return z;
      }
      case NegKind::PoleForm: {
        for (int tries = 0; tries < 10000; ++tries) {
          double z = rng.exponential(env_rate_);
          double env = env_C_ * env_rate_ * std::exp(-env_rate_ * z);
          double f = neg_density(n, z);
          require(f <= env * (1.0 + 1e-9), Err::EnvelopeError,
                  "rejection envelope violated pointwise");
          if (rng.uniform() * env <= f) return z;
        }
        fail(Err::EnvelopeError,
             "rejection acceptance rate below 1e-3 (10000 straight misses)");
      }
    }
    fail(Err::EvaluationError, "unknown negative jump kind");
  }

 private:
  const NegativeJumps* neg_;
  double env_rate_ = 0.0, env_C_ = 0.0;
};

// --- path simulation ---------------------------------------------------------

struct PathOut {
  double sup = 0.0;
  double end = 0.0;
};

PathOut run_path(const ModelSpec& m, double T, double step,
                 const PosSampler& ps, const NegSampler& ns, double lam_tot,
                 double p_pos, Rng& rng) {
  double x = 0.0, sup = 0.0, t = 0.0;
  const double inf = std::numeric_limits<double>::infinity();
  while (true) {
    double gap = lam_tot > 0.0 ? rng.exponential(lam_tot) : inf;
    double seg = std::min(gap, T - t);
    if (m.sigma > 0.0) {
      int k = std::max(1, int(std::ceil(seg / step)));
      double dt = seg / k, sdt = m.sigma * std::sqrt(dt);
      for (int i = 0; i < k; ++i) {
        double d = m.drift_a * dt + sdt * rng.normal();
        // exact maximum of the slice given its endpoint (bridge identity)
        double disc = d * d - 2.0 * m.sigma * m.sigma * dt *
                                  std::log(rng.uniform());
        sup = std::max(sup, x + 0.5 * (d + std::sqrt(disc)));
        x += d;
      }
    } else {
      sup = std::max(sup, x + std::max(0.0, m.drift_a * seg));
      x += m.drift_a * seg;
    }
    t += seg;
    if (gap >= T - (t - seg)) break;  // the next jump lands after the horizon
    if (rng.uniform() < p_pos)
      x += ps.draw(rng);
    else
      x -= ns.magnitude(rng);
    sup = std::max(sup, x);
  }
  return {sup, x};
}

// validate() only inspects a jump component when its rate is positive, so the
// standalone samplers wrap the component in a scratch model with rate 1.
void check_component(const NegativeJumps& neg) {
  ModelSpec tmp;
  tmp.neg = neg;
  tmp.neg.rate = 1.0;
  validate(tmp);
}

void check_component(const PositiveJumps& pos) {
  ModelSpec tmp;
  tmp.pos = pos;
  tmp.pos.rate = 1.0;
  validate(tmp);
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("LEVYSUP_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return std::min(v, 256);
  }
  return 1;
}

}  // namespace

SimResult simulate_sup(const ModelSpec& m, const SimConfig& cfg) {
  validate(m);
  double mu = mean(m);
  require(mu < 0.0, Err::MeanNotNegative,
          "path truncation needs a negative-mean model");
  require(cfg.n_paths > 0, Err::ConfigError, "n_paths must be positive");
  require(cfg.horizon_T >= 0.0 && std::isfinite(cfg.horizon_T),
          Err::ConfigError, "bad horizon");
  require(cfg.brownian_step >= 0.0, Err::ConfigError, "bad brownian_step");
  double T = cfg.horizon_T > 0.0 ? cfg.horizon_T : 20.0 / std::abs(mu);
  if (cfg.horizon_T > 0.0 && cfg.brownian_step > 0.0)
    require(cfg.brownian_step <= 1e-3 * cfg.horizon_T, Err::ConfigError,
            "brownian_step must be at most 1e-3 * horizon_T");

  // No upward movement at all: the supremum is identically 0 and the horizon
  // bound is exact.
  bool can_rise = m.sigma > 0.0 || m.pos.rate > 0.0 || m.drift_a > 0.0;
  double lundberg = 0.0;
  if (can_rise) lundberg = lundberg_exponent(m);

  PosSampler ps(m.pos);
  NegSampler ns(m.neg);
  double lam_tot = m.pos.rate + m.neg.rate;
  double p_pos = lam_tot > 0.0 ? m.pos.rate / lam_tot : 0.0;
  int threads = resolve_threads(cfg.threads);
  const std::size_t n = cfg.n_paths;
  const double se_target = 0.5 / std::sqrt(double(n)) / 3.0;

  SimResult out;
  for (int attempt = 0;; ++attempt) {
    double step = cfg.brownian_step > 0.0 ? cfg.brownian_step : 1e-3 * T;
    std::vector<double> sups(n), bias(n);
    auto work = [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        Rng rng(cfg.seed, i);
        PathOut p = run_path(m, T, step, ps, ns, lam_tot, p_pos, rng);
        sups[i] = p.sup;
        bias[i] = can_rise ? std::exp(-lundberg * (p.sup - p.end)) : 0.0;
      }
    };
    if (threads <= 1) {
      work(0, n);
    } else {
      std::vector<std::thread> pool;
      std::size_t chunk = (n + threads - 1) / threads;
      for (int t = 0; t < threads; ++t) {
        std::size_t lo = std::min(n, t * chunk);
        std::size_t hi = std::min(n, lo + chunk);
        if (lo < hi) pool.emplace_back(work, lo, hi);
      }
      for (std::thread& th : pool) th.join();
    }
    double b = 0.0;
    for (double v : bias) b += v;
    b /= double(n);
    out.sups = std::move(sups);
    out.horizon_T = T;
    out.bias_bound = b;
    out.doublings = attempt;
    if (b <= se_target) break;
    if (attempt == 3) {
      out.bias_warning = true;
      std::fprintf(stderr,
                   "WARNING: truncation bias bound %.3g still above SE/3 "
                   "after 3 horizon doublings (T = %g)\n",
                   b, T);
      break;
    }
    T *= 2.0;
  }
  std::sort(out.sups.begin(), out.sups.end());
  return out;
}

std::vector<double> sample_negative_jumps(const NegativeJumps& neg,
                                          std::uint64_t seed, std::size_t n) {
  check_component(neg);
  NegSampler s(neg);
  Rng rng(seed);
  std::vector<double> out(n);
  for (double& v : out) v = -s.magnitude(rng);
  return out;
}

double sample_negative_jump(const NegativeJumps& neg, std::uint64_t seed) {
  return sample_negative_jumps(neg, seed, 1).front();
}

std::vector<double> sample_positive_jumps(const PositiveJumps& pos,
                                          std::uint64_t seed, std::size_t n) {
  check_component(pos);
  PosSampler s(pos);
  Rng rng(seed);
  std::vector<double> out(n);
  for (double& v : out) v = s.draw(rng);
  return out;
}

std::vector<QuantileRow> ecdf_rows(const SimResult& res,
                                   const std::vector<double>& xs) {
  std::vector<QuantileRow> rows;
  const double n = double(res.sups.size());
  for (double x : xs) {
    auto it = std::upper_bound(res.sups.begin(), res.sups.end(), x);
    double F = double(it - res.sups.begin()) / n;
    rows.push_back({x, F, std::sqrt(std::max(F * (1.0 - F), 0.0) / n)});
  }
  return rows;
}

}  // namespace levysup
