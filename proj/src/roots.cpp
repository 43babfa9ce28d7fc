#include "levysup/roots.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>

#include "levysup/errors.hpp"
#include "levysup/quadrature.hpp"

namespace levysup {

namespace {

struct Analytic {
  const ModelSpec* m;
  double s;
  double mu;   // k'(0)
  double var;  // k''(0)

  cdouble f(cdouble z) const { return cumulant(*m, z) - s; }
  cdouble fp(cdouble z) const { return cumulant_deriv(*m, z); }

  // Logarithmic derivative of the counted function: k - s for s > 0 and
  // k(z)/z for s = 0, where dividing by z removes the known root at zero.
  cdouble logd(cdouble z) const {
    if (s > 0.0) return fp(z) / f(z);
    if (std::abs(z) < 1e-6) {
      // k'/k - 1/z tends to k''(0) / (2 k'(0)); the linear correction is
      // far below the counting tolerance at this radius.
      return cdouble(var / (2.0 * mu), 0.0);
    }
    return fp(z) / f(z) - 1.0 / z;
  }
};

struct PolePoint {
  cdouble z;  // pole of the cumulant in the left half plane (-b_i)
  int order;
};

std::vector<PolePoint> cumulant_poles(const ModelSpec& m) {
  std::vector<PolePoint> out;
  for (const PoleTerm& t : pole_form(m.neg)) out.push_back({-t.b, t.k + 1});
  return out;
}

// --- damped Newton on the analytic cumulant ---------------------------------

std::optional<cdouble> newton(const Analytic& A, cdouble z0) {
  cdouble z = z0;
  cdouble fv;
  try {
    fv = A.f(z);
  } catch (const Error&) {
    return std::nullopt;
  }
  double af = std::abs(fv);
  double ok_level = 1e-11 * std::max(1.0, std::abs(A.s));
  for (int it = 0; it < 80; ++it) {
    if (!std::isfinite(af)) return std::nullopt;
    cdouble dz;
    try {
      cdouble der = A.fp(z);
      if (std::abs(der) == 0.0) return std::nullopt;
      dz = fv / der;
    } catch (const Error&) {
      return std::nullopt;
    }
    double step = 1.0;
    bool moved = false;
    for (int h = 0; h < 12; ++h) {
      cdouble zn = z - step * dz;
      cdouble fn;
      try {
        fn = A.f(zn);
      } catch (const Error&) {
        step *= 0.5;
        continue;
      }
      double afn = std::abs(fn);
      if (afn < af) {
        bool small_step = std::abs(step * dz) < 1e-13 * (1.0 + std::abs(zn));
        z = zn;
        fv = fn;
        af = afn;
        moved = true;
        if (small_step && af <= ok_level) return z;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  if (af <= ok_level) return z;
  return std::nullopt;
}

// --- argument-principle counting --------------------------------------------

// Winding count of the analytic target around the rectangle, plus the known
// pole orders inside, giving the number of zeros. nullopt when the contour
// integral fails to settle or is far from an integer (a zero or pole sits too
// close to an edge); callers respond by nudging the rectangle.
std::optional<int> try_count(const Analytic& A, double x0, double x1,
                             double y0, double y1,
                             const std::vector<PolePoint>& poles) {
  cdouble corner[4] = {cdouble(x0, y0), cdouble(x1, y0), cdouble(x1, y1),
                       cdouble(x0, y1)};
  cdouble total(0.0, 0.0);
  for (int e = 0; e < 4; ++e) {
    cdouble a = corner[e], b = corner[(e + 1) % 4];
    auto h = [&](double t) -> cdouble { return A.logd(a + t * (b - a)) * (b - a); };
    QuadOptions opt;
    opt.abs_tol = 0.015;
    opt.rel_tol = 1e-4;
    opt.max_intervals = 4000;
    opt.throw_on_fail = false;
    QuadResult<cdouble> r;
    try {
      r = integrate(h, 0.0, 1.0, opt);
    } catch (const Error&) {
      return std::nullopt;
    }
    if (!r.converged) return std::nullopt;
    total += r.value;
  }
  cdouble n = total / cdouble(0.0, 2.0 * M_PI);
  int inside = 0;
  for (const PolePoint& p : poles)
    if (p.z.real() > x0 && p.z.real() < x1 && p.z.imag() > y0 &&
        p.z.imag() < y1)
      inside += p.order;
  double zc = n.real() + inside;
  if (std::abs(n.imag()) > 0.1) return std::nullopt;
  long rounded = std::lround(zc);
  if (std::abs(zc - double(rounded)) > 0.15 || rounded < 0) return std::nullopt;
  return int(rounded);
}

// Zeros minus nothing on a small circle (pole orders inside are added back).
std::optional<int> circle_count(const Analytic& A, cdouble c, double rho,
                                const std::vector<PolePoint>& poles) {
  auto h = [&](double th) -> cdouble {
    cdouble z = c + rho * std::exp(cdouble(0.0, th));
    cdouble dz = rho * cdouble(0.0, 1.0) * std::exp(cdouble(0.0, th));
    return A.logd(z) * dz;
  };
  QuadOptions opt;
  opt.abs_tol = 0.02;
  opt.rel_tol = 1e-4;
  opt.max_intervals = 2000;
  opt.throw_on_fail = false;
  QuadResult<cdouble> r;
  try {
    r = integrate(h, 0.0, 2.0 * M_PI, opt);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (!r.converged) return std::nullopt;
  cdouble n = r.value / cdouble(0.0, 2.0 * M_PI);
  int inside = 0;
  for (const PolePoint& p : poles)
    if (std::abs(p.z - c) < rho) inside += p.order;
  double zc = n.real() + inside;
  long rounded = std::lround(zc);
  if (std::abs(n.imag()) > 0.1 || std::abs(zc - double(rounded)) > 0.15)
    return std::nullopt;
  return int(rounded);
}

// --- rectangle bookkeeping ----------------------------------------------------

struct Box {
  double x0, x1, y0, y1;
  int count;
  double w() const { return x1 - x0; }
  double h() const { return y1 - y0; }
  double diam() const { return std::hypot(w(), h()); }
  bool contains(cdouble z) const {
    return z.real() >= x0 && z.real() <= x1 && z.imag() >= y0 && z.imag() <= y1;
  }
};

// Keep horizontal/vertical lines away from poles so edge integrals stay tame.
double nudge_line(double c, bool vertical, const std::vector<PolePoint>& poles,
                  double scale) {
  for (int tries = 0; tries < 40; ++tries) {
    bool bad = false;
    for (const PolePoint& p : poles) {
      double d = vertical ? std::abs(p.z.real() - c) : std::abs(p.z.imag() - c);
      if (d < 2e-3 * scale) {
        bad = true;
        break;
      }
    }
    if (!bad) return c;
    c += 0.0137 * scale * ((tries % 2 == 0) ? 1.0 : -1.3);
  }
  return c;
}

// --- shared post-processing ----------------------------------------------------

struct Cluster {
  cdouble z;
  int mult;
};

std::vector<Cluster> cluster_points(std::vector<cdouble> pts) {
  std::vector<Cluster> out;
  std::sort(pts.begin(), pts.end(), [](cdouble a, cdouble b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  std::vector<bool> used(pts.size(), false);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (used[i]) continue;
    cdouble acc = pts[i];
    int n = 1;
    used[i] = true;
    bool grew = true;
    while (grew) {
      grew = false;
      cdouble c = acc / double(n);
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (used[j]) continue;
        if (std::abs(pts[j] - c) <= 1e-7 * (1.0 + std::abs(c))) {
          acc += pts[j];
          n += 1;
          used[j] = true;
          grew = true;
        }
      }
    }
    out.push_back({acc / double(n), n});
  }
  return out;
}

RootSet finish(const ModelSpec& m, double s, std::vector<Cluster> clusters,
               const Analytic& A, const std::vector<PolePoint>& poles,
               int n_target, bool add_zero_root) {
  // Verify multiplicities of merged clusters by a local circle count.
  for (const Cluster& c : clusters) {
    if (c.mult <= 1) continue;
    double rho = 1e-5 * (1.0 + std::abs(c.z));
    auto got = circle_count(A, c.z, rho, poles);
    int expect = 0;
    for (const Cluster& o : clusters)
      if (std::abs(o.z - c.z) < rho) expect += o.mult;
    if (got && *got != expect)
      fail(Err::PrecisionError,
           "local multiplicity check disagrees with cluster merge");
  }

  // Fold conjugate pairs so the stored set is exactly symmetric.
  std::vector<Cluster> sym;
  std::vector<bool> used(clusters.size(), false);
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    if (used[i]) continue;
    Cluster c = clusters[i];
    if (std::abs(c.z.imag()) <= 1e-8 * (1.0 + std::abs(c.z))) {
      c.z = cdouble(c.z.real(), 0.0);
      sym.push_back(c);
      used[i] = true;
      continue;
    }
    bool paired = false;
    for (std::size_t j = i + 1; j < clusters.size(); ++j) {
      if (used[j] || clusters[j].mult != c.mult) continue;
      if (std::abs(clusters[j].z - std::conj(c.z)) <=
          1e-6 * (1.0 + std::abs(c.z))) {
        cdouble zz = 0.5 * (c.z + std::conj(clusters[j].z));
        sym.push_back({zz, c.mult});
        sym.push_back({std::conj(zz), c.mult});
        used[i] = used[j] = true;
        paired = true;
        break;
      }
    }
    if (!paired)
      fail(Err::ConvergenceError,
           "complex root without a conjugate partner");
  }

  RootSet out;
  out.s = s;
  if (add_zero_root) out.roots.push_back({cdouble(0.0, 0.0), 1});
  for (const Cluster& c : sym) out.roots.push_back({-c.z, c.mult});
  std::sort(out.roots.begin(), out.roots.end(),
            [](const RootInfo& a, const RootInfo& b) {
              if (a.r.real() != b.r.real()) return a.r.real() < b.r.real();
              double ia = std::abs(a.r.imag()), ib = std::abs(b.r.imag());
              if (ia != ib) return ia < ib;
              return a.r.imag() > b.r.imag();
            });
  out.N = 0;
  for (const RootInfo& r : out.roots) out.N += r.multiplicity;
  if (out.N != n_target)
    fail(Err::RootCountMismatch,
         "expected " + std::to_string(n_target) + " roots, assembled " +
             std::to_string(out.N));

  // The smallest root must be real (it drives the infimum tail).
  require(std::abs(out.roots.front().r.imag()) <=
              1e-8 * (1.0 + std::abs(out.roots.front().r)),
          Err::PrecisionError, "leading root is not real");
  out.roots.front().r = cdouble(out.roots.front().r.real(), 0.0);
  require(out.roots.front().r.real() >= -1e-12, Err::PrecisionError,
          "leading root has negative real part");

  // Residual certificate on every root.
  for (const RootInfo& r : out.roots) {
    if (s == 0.0 && std::abs(r.r) == 0.0) continue;
    cdouble resid = cumulant(m, -r.r) - s;
    double bound = 1e-10 * std::max(1.0, std::abs(s));
    if (r.multiplicity > 1) bound *= 100.0;
    require(std::abs(resid) <= bound, Err::PrecisionError,
            "root residual " + std::to_string(std::abs(resid)) +
                " exceeds certificate");
  }
  return out;
}

// --- polynomial path ------------------------------------------------------------

std::vector<cdouble> poly_add(std::vector<cdouble> a,
                              const std::vector<cdouble>& b) {
  if (b.size() > a.size()) a.resize(b.size(), cdouble(0.0, 0.0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

std::vector<cdouble> poly_scale(std::vector<cdouble> a, cdouble c) {
  for (cdouble& v : a) v *= c;
  return a;
}

std::vector<cdouble> poly_pow(const std::vector<cdouble>& a, int e) {
  std::vector<cdouble> out{cdouble(1.0, 0.0)};
  for (int i = 0; i < e; ++i) out = poly_mul(out, a);
  return out;
}

std::vector<cdouble> companion_roots(std::vector<cdouble> c) {
  while (c.size() > 1 && std::abs(c.back()) == 0.0) c.pop_back();
  int n = int(c.size()) - 1;
  require(n >= 1, Err::EvaluationError, "degenerate root polynomial");
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) comp(i + 1, i) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[i] / c[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  require(es.info() == Eigen::Success, Err::ConvergenceError,
          "companion eigensolver failed");
  std::vector<cdouble> out;
  for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

RootSet rational_roots(const ModelSpec& m, double s, const Analytic& A,
                       const CaseInfo& info) {
  const double lp = m.pos.rate, lm = m.neg.rate;
  std::vector<cdouble> drift;
  drift.push_back(cdouble(-(lp + lm + s), 0.0));
  if (m.drift_a != 0.0 || m.sigma != 0.0) drift.push_back(cdouble(m.drift_a, 0.0));
  if (m.sigma != 0.0) drift.push_back(cdouble(0.5 * m.sigma * m.sigma, 0.0));

  std::vector<cdouble> Qp{cdouble(1.0, 0.0)}, Pp{cdouble(0.0, 0.0)};
  if (lp > 0.0) {
    switch (m.pos.kind) {
      case PosKind::Exponential:
        Qp = {cdouble(m.pos.beta, 0.0), cdouble(-1.0, 0.0)};
        Pp = {cdouble(m.pos.beta, 0.0)};
        break;
      case PosKind::Erlang:
        Qp = poly_pow({cdouble(m.pos.beta, 0.0), cdouble(-1.0, 0.0)}, m.pos.n);
        Pp = {cdouble(std::pow(m.pos.beta, m.pos.n), 0.0)};
        break;
      case PosKind::Hyperexponential: {
        Qp = {cdouble(1.0, 0.0)};
        for (double b : m.pos.rates)
          Qp = poly_mul(Qp, {cdouble(b, 0.0), cdouble(-1.0, 0.0)});
        Pp = {cdouble(0.0, 0.0)};
        for (std::size_t i = 0; i < m.pos.rates.size(); ++i) {
          std::vector<cdouble> t{cdouble(m.pos.weights[i] * m.pos.rates[i], 0.0)};
          for (std::size_t j = 0; j < m.pos.rates.size(); ++j)
            if (j != i)
              t = poly_mul(t, {cdouble(m.pos.rates[j], 0.0), cdouble(-1.0, 0.0)});
          Pp = poly_add(Pp, t);
        }
        break;
      }
      default:
        fail(Err::ConfigError, "rational root path needs a rational transform");
    }
  }

  std::vector<cdouble> Qm{cdouble(1.0, 0.0)}, Pm{cdouble(0.0, 0.0)};
  auto terms = pole_form(m.neg);
  if (lm > 0.0) {
    for (const PoleTerm& t : terms)
      Qm = poly_mul(Qm, poly_pow({t.b, cdouble(1.0, 0.0)}, t.k + 1));
    for (std::size_t i = 0; i < terms.size(); ++i) {
      std::vector<cdouble> other{cdouble(1.0, 0.0)};
      for (std::size_t j = 0; j < terms.size(); ++j)
        if (j != i)
          other = poly_mul(other,
                           poly_pow({terms[j].b, cdouble(1.0, 0.0)},
                                    terms[j].k + 1));
      for (int j = 0; j <= terms[i].k; ++j) {
        auto part = poly_pow({terms[i].b, cdouble(1.0, 0.0)}, terms[i].k - j);
        part = poly_scale(poly_mul(part, other),
                          terms[i].a[j] * factorial(j));
        Pm = poly_add(Pm, part);
      }
    }
  }

  std::vector<cdouble> F = poly_mul(drift, poly_mul(Qp, Qm));
  if (lp > 0.0) F = poly_add(F, poly_scale(poly_mul(Pp, Qm), lp));
  if (lm > 0.0) F = poly_add(F, poly_scale(poly_mul(Pm, Qp), lm));

  double fmax = 0.0;
  for (const cdouble& c : F) fmax = std::max(fmax, std::abs(c));
  for (cdouble& c : F) {
    require(std::abs(c.imag()) <= 1e-9 * fmax, Err::EvaluationError,
            "root polynomial has non-real coefficients");
    c = cdouble(c.real(), 0.0);
  }

  bool deflate = (s == 0.0);
  if (deflate) {
    require(std::abs(F[0]) <= 1e-8 * fmax, Err::EvaluationError,
            "constant term should vanish at s = 0");
    F.erase(F.begin());
  }

  std::vector<cdouble> raw = companion_roots(F);
  std::vector<cdouble> kept;
  for (cdouble z : raw) {
    if (z.real() > 1e-3 * (1.0 + std::abs(z))) continue;  // right half plane
    auto p = newton(A, z);
    cdouble zz = p ? *p : z;
    if (deflate && std::abs(zz) < 1e-12) continue;  // slid into the known zero
    if (zz.real() < 0.0) kept.push_back(zz);
  }
  int expect = info.N - (deflate ? 1 : 0);
  if (int(kept.size()) != expect)
    fail(Err::RootCountMismatch,
         "polynomial path found " + std::to_string(kept.size()) +
             " left-plane roots, expected " + std::to_string(expect));
  return finish(m, s, cluster_points(kept), A, cumulant_poles(m), info.N,
                deflate);
}

// --- contour path ----------------------------------------------------------------

RootSet contour_roots(const ModelSpec& m, double s, const Analytic& A,
                      const CaseInfo& info) {
  auto poles = cumulant_poles(m);
  double bm = 0.0;
  for (const PolePoint& p : poles) bm = std::max(bm, -p.z.real());
  double R = bm + 10.0 * (1.0 + std::abs(m.drift_a) + m.sigma * m.sigma +
                          m.pos.rate + m.neg.rate);
  double W = 10.0 * R;

  int n_target = info.N - (s == 0.0 ? 1 : 0);

  // Counts the zeros in the box, growing it slightly on failure (a zero or
  // pole sitting on an edge spoils the contour integral). Mutates the box to
  // whatever rectangle the successful count used.
  auto count_retry = [&](Box& B) -> std::optional<int> {
    for (int t = 0; t < 5; ++t) {
      auto c = try_count(A, B.x0, B.x1, B.y0, B.y1, poles);
      if (c) return c;
      double gx = 0.004 * (t + 1) * B.w();
      double gy = 0.004 * (t + 1) * B.h();
      B.x0 -= gx;
      B.y0 -= gy;
      B.y1 += gy;
      if (B.x1 < -1e-12) B.x1 += std::min(gx, -B.x1 * 0.5);
    }
    return std::nullopt;
  };

  // Outer box, doubled until the winding count matches the expected N.
  Box outer{};
  bool located = false;
  for (int attempt = 0; attempt < 4 && !located; ++attempt) {
    Box cand{nudge_line(-R, true, poles, 1.0 + R), 0.0,
             nudge_line(-W, false, poles, 1.0 + W),
             nudge_line(W, false, poles, 1.0 + W), 0};
    auto c = count_retry(cand);
    if (c && *c == n_target) {
      cand.count = n_target;
      outer = cand;
      located = true;
      break;
    }
    R *= 2.0;
    W *= 2.0;
  }
  if (!located)
    fail(Err::RootCountMismatch,
         "could not isolate the expected number of cumulant roots");

  // Seeds near each pole: the dominant singular term lam- a_k k!/(z+b)^p
  // balances the regular part, giving p first-guess zeros per pole.
  std::vector<cdouble> found;
  auto consider = [&](cdouble z) {
    if (!(z.real() < 0.0)) return;
    if (s == 0.0 && std::abs(z) < 1e-12) return;
    if (!outer.contains(z)) return;
    for (cdouble w : found)
      if (std::abs(w - z) < 1e-9 * (1.0 + std::abs(z))) return;
    found.push_back(z);
  };
  for (const PoleTerm& t : pole_form(m.neg)) {
    int p = t.k + 1;
    cdouble reg(0.0, 0.0);
    try {
      cdouble at = -t.b;
      cdouble bracket = m.drift_a * at + 0.5 * m.sigma * m.sigma * at * at -
                        m.pos.rate - m.neg.rate - s;
      if (m.pos.rate > 0.0)
        bracket += m.pos.rate * pos_mgf(m.pos, at);
      for (const PoleTerm& u : pole_form(m.neg)) {
        if (std::abs(u.b - t.b) < 1e-12) continue;
        for (int j = 0; j <= u.k; ++j)
          bracket += m.neg.rate * u.a[j] * factorial(j) /
                     cpow_int(at + u.b, j + 1);
      }
      reg = bracket;
    } catch (const Error&) {
      continue;
    }
    if (std::abs(reg) == 0.0) continue;
    cdouble rhs = -m.neg.rate * t.a[t.k] * factorial(t.k) / reg;
    double rho = std::pow(std::abs(rhs), 1.0 / p);
    double th0 = std::arg(rhs) / p;
    for (int l = 0; l < p; ++l) {
      cdouble delta = rho * std::exp(cdouble(0.0, th0 + 2.0 * M_PI * l / p));
      auto z = newton(A, -t.b + delta);
      if (z) consider(*z);
    }
  }

  // Count-driven bisection: split boxes whose count exceeds the roots already
  // found inside them; a count-1 box is first attacked with Newton directly.
  std::vector<Box> queue{outer};
  long guard = 0;
  while (!queue.empty()) {
    if (++guard > 4000)
      fail(Err::ConvergenceError, "root isolation exceeded its split budget");
    Box B = queue.back();
    queue.pop_back();
    int inside = 0;
    for (cdouble z : found)
      if (B.contains(z)) inside += 1;
    if (inside >= B.count) continue;
    if (B.diam() < 1e-7) {
      // Unresolvable cluster: a genuine multiple root. Record the center with
      // the missing multiplicity; the circle check below certifies it.
      cdouble c(0.5 * (B.x0 + B.x1), 0.5 * (B.y0 + B.y1));
      for (int q = inside; q < B.count; ++q) found.push_back(c);
      continue;
    }
    if (B.count - inside == 1) {
      cdouble ctr(0.5 * (B.x0 + B.x1), 0.5 * (B.y0 + B.y1));
      cdouble probes[5] = {ctr, cdouble(B.x0 + 0.23 * B.w(), B.y0 + 0.31 * B.h()),
                           cdouble(B.x0 + 0.77 * B.w(), B.y0 + 0.31 * B.h()),
                           cdouble(B.x0 + 0.23 * B.w(), B.y0 + 0.69 * B.h()),
                           cdouble(B.x0 + 0.77 * B.w(), B.y0 + 0.69 * B.h())};
      bool done = false;
      for (cdouble p0 : probes) {
        auto z = newton(A, p0);
        if (z && B.contains(*z)) {
          std::size_t before = found.size();
          consider(*z);
          if (found.size() > before) {
            done = true;
            break;
          }
        }
      }
      if (done) continue;
    }
    bool split_x = B.w() >= B.h();
    bool split_done = false;
    for (int attempt = 0; attempt < 6 && !split_done; ++attempt) {
      double frac = 0.5 + 0.061 * attempt * ((attempt % 2) ? -1.0 : 1.0);
      Box B1 = B, B2 = B;
      if (split_x) {
        double mid = nudge_line(B.x0 + frac * B.w(), true, poles, B.w());
        if (mid <= B.x0 || mid >= B.x1) continue;
        B1.x1 = mid;
        B2.x0 = mid;
      } else {
        double mid = nudge_line(B.y0 + frac * B.h(), false, poles, B.h());
        if (mid <= B.y0 || mid >= B.y1) continue;
        B1.y1 = mid;
        B2.y0 = mid;
      }
      auto c1 = try_count(A, B1.x0, B1.x1, B1.y0, B1.y1, poles);
      if (!c1) continue;
      auto c2 = try_count(A, B2.x0, B2.x1, B2.y0, B2.y1, poles);
      if (!c2) continue;
      if (*c1 + *c2 != B.count) continue;
      B1.count = *c1;
      B2.count = *c2;
      if (B1.count > 0) queue.push_back(B1);
      if (B2.count > 0) queue.push_back(B2);
      split_done = true;
    }
    if (!split_done)
      fail(Err::ConvergenceError, "could not split a root-bearing region");
  }

  if (int(found.size()) != n_target)
    fail(Err::RootCountMismatch,
         "contour path located " + std::to_string(found.size()) +
             " roots, expected " + std::to_string(n_target));
  return finish(m, s, cluster_points(found), A, poles, info.N, s == 0.0);
}

}  // namespace

RootSet find_roots(const ModelSpec& m, double s, RootMethod method) {
  require(std::isfinite(s) && s >= 0.0, Err::DomainError,
          "kill rate s must be nonnegative");
  validate(m);
  CaseInfo info = classify(m);
  if (s == 0.0)
    require(mean(m) < 0.0, Err::MeanNotNegative,
            "roots at s = 0 need a negative-mean model");
  Analytic A{&m, s, mean(m), variance(m)};

  RootSet out;
  if (info.N == 0) {
    out.s = s;
    return out;
  }
  if (s == 0.0 && info.N == 1) {
    // Only the known zero root.
    out.s = s;
    out.N = 1;
    out.roots.push_back({cdouble(0.0, 0.0), 1});
    return out;
  }

  bool rational = pos_is_rational(m.pos);
  if (method == RootMethod::Rational)
    require(rational, Err::ConfigError,
            "rational method requires a rational positive-jump transform");
  bool use_rational = (method == RootMethod::Rational) ||
                      (method == RootMethod::Auto && rational);
  return use_rational ? rational_roots(m, s, A, info)
                      : contour_roots(m, s, A, info);
}

double root_slope_at_zero(const ModelSpec& m) {
  double mu = mean(m);
  require(mu < 0.0, Err::MeanNotNegative,
          "slope limit needs a negative-mean model");
  return -1.0 / mu;
}

double lundberg_exponent(const ModelSpec& m) {
  validate(m);
  double mu = mean(m);
  require(mu < 0.0, Err::MeanNotNegative,
          "decay exponent needs a negative-mean model");
  auto k_real = [&](double r) -> double {
    return cumulant(m, cdouble(r, 0.0)).real();
  };
  double hi;
  bool capped_pole = false;
  if (m.pos.rate > 0.0 && pos_is_rational(m.pos)) {
    double bmin = m.pos.beta;
    if (m.pos.kind == PosKind::Hyperexponential)
      for (double b : m.pos.rates) bmin = std::min(bmin, b);
    hi = bmin * (1.0 - 1e-9);  // clear of the transform's pole guard
    capped_pole = true;
  } else {
    hi = 1.0;
    for (int i = 0; i < 80 && !(k_real(hi) > 0.0); ++i) hi *= 2.0;
    require(k_real(hi) > 0.0, Err::DomainError,
            "cumulant never becomes positive; no decay exponent exists");
  }
  double lo = 0.0;
  if (capped_pole)
    require(k_real(hi) > 0.0, Err::DomainError,
            "cumulant stays negative up to the transform pole");
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    double v = k_real(mid);
    if (!std::isfinite(v) || v > 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace levysup
