// Command-line front end for the supremum-law library. Data goes to stdout,
// diagnostics (including the run manifest) to stderr. Exit codes: 0 success,
// 1 bad input, 2 numerical failure.

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <json.hpp>
#include <string>
#include <vector>

#include "levysup/errors.hpp"
#include "levysup/infimum.hpp"
#include "levysup/json_io.hpp"
#include "levysup/mc.hpp"
#include "levysup/model.hpp"
#include "levysup/roots.hpp"
#include "levysup/supremum.hpp"
#include "levysup/transforms.hpp"

namespace {

using namespace levysup;
using nlohmann::json;

struct Global {
  std::string model_path;
  std::string format = "csv";
  std::uint64_t seed = 1;
  double tol_mult = 1.0;
};

std::vector<double> parse_grid(const std::string& spec) {
  double a = 0.0, b = 0.0;
  long n = 0;
  char tail = 0;
  int got = std::sscanf(spec.c_str(), "%lf:%lf:%ld%c", &a, &b, &n, &tail);
  require(got == 3 && n >= 1 && std::isfinite(a) && std::isfinite(b),
          Err::ConfigError, "grid must be a:b:n, got '" + spec + "'");
  require(n == 1 || b > a, Err::ConfigError,
          "grid needs b > a for more than one point");
  require(n <= 2000000, Err::ConfigError, "grid size capped at 2e6 points");
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i)
    xs[std::size_t(i)] = n == 1 ? a : a + (b - a) * double(i) / double(n - 1);
  return xs;
}

ModelSpec need_model(const Global& g) {
  require(!g.model_path.empty(), Err::ConfigError,
          "this subcommand needs --model FILE");
  return load_model(g.model_path);
}

// The bundled showcase model: Brownian part, half-normal upward jumps, and
// the damped-cosine downward density K (1 - cos 2 pi z) e^{-z} in pole form.
ModelSpec showcase_model() {
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

void print_manifest(const CLI::App& app, const CLI::App* sub,
                    const Global& g) {
  std::string flags;
  auto add_from = [&flags](const CLI::App* a) {
    for (const CLI::Option* o : a->get_options()) {
      if (o->count() == 0) continue;
      const std::string& name = o->get_name();
      if (name.rfind("--", 0) != 0) continue;
      flags += " " + name;
      if (!o->results().empty()) flags += "=" + o->results().front();
    }
  };
  std::string path = sub->get_name();
  for (const CLI::App* inner : sub->get_subcommands()) {
    path += " " + inner->get_name();
    add_from(inner);
  }
  add_from(sub);
  add_from(&app);
  std::fprintf(stderr,
               "# manifest subcommand=\"%s\" model=\"%s\" format=%s "
               "seed=%llu flags=[%s]\n",
               path.c_str(),
               g.model_path.empty() ? "(builtin)" : g.model_path.c_str(),
               g.format.c_str(), static_cast<unsigned long long>(g.seed),
               flags.empty() ? "" : flags.c_str() + 1);
}

void emit_table(const Global& g, const std::string& json_key,
                const std::vector<std::string>& cols,
                const std::vector<std::vector<double>>& rows) {
  if (g.format == "json") {
    json out;
    for (const auto& row : rows) {
      json r;
      for (std::size_t c = 0; c < cols.size(); ++c) r[cols[c]] = row[c];
      out[json_key].push_back(r);
    }
    std::printf("%s\n", out.dump(2).c_str());
    return;
  }
  std::string header;
  for (const auto& c : cols) header += (header.empty() ? "" : ",") + c;
  std::printf("%s\n", header.c_str());
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      std::printf("%s%.12g", c ? "," : "", row[c]);
    std::printf("\n");
  }
}

void emit_scalars(const Global& g,
                  const std::vector<std::pair<std::string, double>>& kv) {
  if (g.format == "json") {
    json out;
    for (const auto& [k, v] : kv) out[k] = v;
    std::printf("%s\n", out.dump(2).c_str());
    return;
  }
  std::printf("property,value\n");
  for (const auto& [k, v] : kv) std::printf("%s,%.12g\n", k.c_str(), v);
}

// --- subcommand bodies -------------------------------------------------------

int run_validate(const Global& g) {
  ModelSpec m = need_model(g);  // load_model validates
  CaseInfo ci = classify(m);
  emit_scalars(g, {{"valid", 1.0},
                   {"creeping_case", ci.tag == CaseTag::S ? 1.0 : 0.0},
                   {"root_count", double(ci.N)},
                   {"denominator_degree", double(ci.D)},
                   {"mean", mean(m)},
                   {"variance", variance(m)}});
  return 0;
}

int run_roots(const Global& g, double s) {
  ModelSpec m = need_model(g);
  RootSet rs = find_roots(m, s);
  std::vector<std::vector<double>> rows;
  for (const RootInfo& r : rs.roots)
    rows.push_back({r.r.real(), r.r.imag(), double(r.multiplicity)});
  emit_table(g, "roots", {"re", "im", "multiplicity"}, rows);
  return 0;
}

int run_infimum_density(const Global& g, double s, const std::string& grid,
                        const std::string& path) {
  ModelSpec m = need_model(g);
  std::vector<double> ys = parse_grid(grid);
  require(ys.back() <= 0.0, Err::ConfigError,
          "the infimum density lives on y <= 0; use a grid like -8:0:n");
  InfimumDensity d;
  if (s > 0.0) {
    RootSet rs = find_roots(m, s);
    d = path == "matrix" ? infimum_density_matrix(m, rs)
                         : infimum_density_residue(m, rs);
  } else {
    d = path == "matrix" ? limit_density_matrix(m) : limit_density(m);
  }
  if (g.format == "json") {
    json out;
    out["s"] = s;
    out["is_limit"] = d.is_limit;
    out["atom0"] = d.atom0;
    if (d.is_limit) out["constant"] = d.constant;
    for (double y : ys) {
      out["y"].push_back(y);
      out["density"].push_back(d.eval(y));
    }
    std::printf("%s\n", out.dump(2).c_str());
    return 0;
  }
  std::printf("# atom0=%.12g%s\n", d.atom0,
              d.is_limit ? " (limit object, not a probability law)" : "");
  if (d.is_limit) std::printf("# constant=%.12g\n", d.constant);
  std::printf("y,density\n");
  for (double y : ys) std::printf("%.12g,%.12g\n", y, d.eval(y));
  return 0;
}

int run_transform(const Global& g, const std::string& grid, double u, double w,
                  int deriv) {
  ModelSpec m = need_model(g);
  std::vector<double> xs = parse_grid(grid);
  require(xs.front() >= 0.0, Err::ConfigError,
          "the tail transform needs x >= 0");
  bool complex_tilt = w != 0.0;
  std::vector<std::vector<double>> rows;
  for (double x : xs) {
    cdouble v = pi_tilde_deriv(m, x, cdouble(u, w), deriv);
    if (complex_tilt)
      rows.push_back({x, v.real(), v.imag()});
    else
      rows.push_back({x, v.real()});
  }
  emit_table(g, "transform",
             complex_tilt ? std::vector<std::string>{"x", "re", "im"}
                          : std::vector<std::string>{"x", "value"},
             rows);
  return 0;
}

int run_sup_triplet(const Global& g) {
  SupremumLaw law = supremum_law(need_model(g));
  emit_scalars(g, {{"a_star", law.a_star},
                   {"direct_weight", law.direct_weight},
                   {"jump_mass", law.mass},
                   {"rho", law.rho},
                   {"one_minus_rho", 1.0 - law.rho},
                   {"c_star", law.c_star}});
  return 0;
}

int run_sup_mgf(const Global& g, const std::string& grid) {
  SupremumLaw law = supremum_law(need_model(g));
  std::vector<std::vector<double>> rows;
  for (double r : parse_grid(grid))
    rows.push_back({r, supremum_mgf(law, cdouble(r, 0.0)).real()});
  emit_table(g, "mgf", {"r", "mgf"}, rows);
  return 0;
}

int run_sup_cdf(const Global& g, const std::string& grid) {
  SupremumLaw law = supremum_law(need_model(g));
  std::vector<double> xs = parse_grid(grid);
  require(xs.front() >= 0.0, Err::ConfigError, "CDF grid needs x >= 0");
  std::vector<double> F = supremum_cdf(law, xs);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < xs.size(); ++i) rows.push_back({xs[i], F[i]});
  emit_table(g, "cdf", {"x", "cdf"}, rows);
  return 0;
}

int run_sup_sample(const Global& g, std::size_t n) {
  SupremumLaw law = supremum_law(need_model(g));
  std::vector<double> draws = sample_supremum(law, g.seed, n);
  std::vector<std::vector<double>> rows;
  for (double d : draws) rows.push_back({d});
  emit_table(g, "draws", {"x"}, rows);
  return 0;
}

int run_montecarlo(const Global& g, std::size_t paths, double horizon,
                   double step, int quantiles) {
  ModelSpec m = need_model(g);
  SupremumLaw law = supremum_law(m);
  SimConfig cfg;
  cfg.n_paths = paths;
  cfg.horizon_T = horizon;
  cfg.brownian_step = step;
  cfg.seed = g.seed;
  SimResult res = simulate_sup(m, cfg);
  std::fprintf(stderr, "# horizon=%g doublings=%d bias_bound=%.3g\n",
               res.horizon_T, res.doublings, res.bias_bound);
  std::vector<double> xs(static_cast<std::size_t>(quantiles));
  for (int i = 0; i < quantiles; ++i) {
    double q = double(i + 1) / double(quantiles + 1);
    xs[std::size_t(i)] = res.sups[std::size_t(q * double(res.sups.size()))];
  }
  std::vector<QuantileRow> emp = ecdf_rows(res, xs);
  std::vector<double> ana = supremum_cdf(law, xs);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double se = std::max(emp[i].se, 1e-12);
    rows.push_back({xs[i], emp[i].cdf, emp[i].se, ana[i],
                    (emp[i].cdf - ana[i]) / se});
  }
  emit_table(g, "montecarlo",
             {"x", "empirical_cdf", "se", "analytic_cdf", "z_score"}, rows);
  return 0;
}

// --- showcase reproduction -----------------------------------------------------

struct Check {
  std::string name;
  double value, target, tol;
  bool pass;
};

Check make_check(const std::string& name, double value, double target,
                 double tol) {
  return {name, value, target, tol, std::abs(value - target) <= tol};
}

int run_reproduce(const Global& g, bool with_mc) {
  ModelSpec m = showcase_model();
  const double t = g.tol_mult;
  std::vector<Check> checks;

  auto t0 = std::chrono::steady_clock::now();
  RootSet rs = find_roots(m, 0.0);
  double root_secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  double real_root = 0.0, pair_re = 0.0, pair_im = 0.0;
  for (const RootInfo& r : rs.roots) {
    if (std::abs(r.r) < 1e-12) continue;  // boundary root at the origin
    if (r.r.imag() == 0.0)
      real_root = r.r.real();
    else if (r.r.imag() > 0.0) {
      pair_re = r.r.real();
      pair_im = r.r.imag();
    }
  }
  checks.push_back(make_check("roots.real", real_root, 2.159, 0.005 * t));
  checks.push_back(make_check("roots.pair_re", pair_re, 1.023, 0.005 * t));
  checks.push_back(make_check("roots.pair_im", pair_im, 6.290, 0.005 * t));

  InfimumDensity lim = limit_density(m, rs);
  double mu_closed =
      (49.0 + 36.0 * M_PI * M_PI) / (-5.0 - 20.0 * M_PI * M_PI);
  checks.push_back(make_check("density.constant", lim.constant, 0.501,
                              0.005 * t));
  checks.push_back(make_check("density.constant_vs_mean", lim.constant,
                              1.0 / std::abs(mu_closed), 1e-6 * t));
  double real_coef = 0.0, cos_coef = 0.0, sin_coef = 0.0;
  for (const FusedTerm& f : fused_view(lim)) {
    if (f.w == 0.0)
      real_coef = f.cos_coef.at(0);
    else {
      cos_coef = f.cos_coef.at(0);
      sin_coef = f.sin_coef.at(0);
    }
  }
  checks.push_back(make_check("density.coef_real", real_coef, 0.582,
                              0.005 * t));
  checks.push_back(make_check("density.coef_cos", cos_coef, 0.002, 0.005 * t));
  checks.push_back(make_check("density.coef_sin", sin_coef, 0.008, 0.005 * t));

  SupremumLaw law = supremum_law(m);
  checks.push_back(make_check("supremum.a_star", law.a_star, 2.169, 0.01 * t));
  checks.push_back(
      make_check("supremum.one_minus_rho", 1.0 - law.rho, 0.418, 0.005 * t));
  checks.push_back(make_check("supremum.c_star", law.c_star, 1.104, 0.01 * t));

  std::vector<std::vector<double>> mc_rows;
  if (with_mc) {
    SimConfig cfg;
    cfg.n_paths = 20000;
    cfg.seed = g.seed;
    SimResult res = simulate_sup(m, cfg);
    std::vector<double> xs(20);
    for (int i = 0; i < 20; ++i) {
      double q = double(i + 1) / 21.0;
      xs[std::size_t(i)] = res.sups[std::size_t(q * double(res.sups.size()))];
    }
    auto emp = ecdf_rows(res, xs);
    auto ana = supremum_cdf(law, xs);
    double worst = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      double se = std::max(emp[i].se, 1e-12);
      double z = (emp[i].cdf - ana[i]) / se;
      worst = std::max(worst, std::abs(z));
      mc_rows.push_back({xs[i], emp[i].cdf, emp[i].se, ana[i], z});
    }
    checks.push_back({"mc.max_abs_z", worst, 0.0, 3.0 * t, worst <= 3.0 * t});
  }

  bool all_pass = true;
  for (const Check& c : checks) all_pass = all_pass && c.pass;

  const int grid_n = 161;
  std::vector<double> fx(grid_n), fv(grid_n);
  for (int i = 0; i < grid_n; ++i) {
    fx[std::size_t(i)] = 8.0 * double(i) / double(grid_n - 1);
    fv[std::size_t(i)] = law.f0(fx[std::size_t(i)]);
  }

  if (g.format == "json") {
    json out;
    out["roots_elapsed_seconds"] = root_secs;
    for (const Check& c : checks)
      out["checks"].push_back({{"name", c.name},
                               {"value", c.value},
                               {"target", c.target},
                               {"tolerance", c.tol},
                               {"pass", c.pass}});
    out["f0_grid"] = {{"x", fx}, {"density", fv}};
    if (with_mc) {
      for (const auto& row : mc_rows)
        out["mc"].push_back({{"x", row[0]},
                             {"empirical_cdf", row[1]},
                             {"se", row[2]},
                             {"analytic_cdf", row[3]},
                             {"z_score", row[4]}});
    }
    out["all_pass"] = all_pass;
    std::printf("%s\n", out.dump(2).c_str());
  } else {
    // comment header keeps the stdout stream gnuplot-friendly
    std::printf("# roots elapsed_seconds=%.3f\n", root_secs);
    for (const Check& c : checks)
      std::printf("# %-26s value=%12.6f target=%9.4f tol=%7.4g %s\n",
                  c.name.c_str(), c.value, c.target, c.tol,
                  c.pass ? "PASS" : "FAIL");
    if (with_mc) {
      std::printf("# mc x,empirical_cdf,se,analytic_cdf,z_score\n");
      for (const auto& row : mc_rows)
        std::printf("# mc %.6g,%.6f,%.6f,%.6f,%+.3f\n", row[0], row[1],
                    row[2], row[3], row[4]);
    }
    std::printf("x,f0_density\n");
    for (int i = 0; i < grid_n; ++i)
      std::printf("%.12g,%.12g\n", fx[std::size_t(i)], fv[std::size_t(i)]);
  }
  if (!all_pass) std::fprintf(stderr, "error: showcase checks failed\n");
  return all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"supremum law of a Levy process with rational downward jumps"};
  app.require_subcommand(1);

  Global g;
  app.add_option("--model", g.model_path, "model description (JSON file)");
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", g.seed, "seed for stochastic subcommands");
  app.add_option("--tolerance", g.tol_mult, "tolerance multiplier for checks");

  auto* c_validate =
      app.add_subcommand("validate", "load a model and report its class");

  double s = 1.0;
  auto* c_roots =
      app.add_subcommand("roots", "cumulant roots at kill rate s");
  c_roots->add_option("--s", s, "kill rate (s = 0: limit roots)")
      ->required()
      ->check(CLI::NonNegativeNumber);

  std::string grid, inf_path = "residue";
  auto* c_inf = app.add_subcommand(
      "infimum-density", "killed-infimum density on a grid of y <= 0");
  c_inf->add_option("--s", s, "kill rate (s = 0: limit object)")
      ->required()
      ->check(CLI::NonNegativeNumber);
  c_inf->add_option("--grid", grid, "y grid a:b:n")->required();
  c_inf->add_option("--path", inf_path, "evaluation route")
      ->check(CLI::IsMember({"residue", "matrix"}));

  double tilt_u = 0.0, tilt_w = 0.0;
  int deriv = 0;
  auto* c_tr = app.add_subcommand(
      "transform", "tilted tail transform of the upward jump measure");
  c_tr->add_option("--grid", grid, "x grid a:b:n")->required();
  c_tr->add_option("--u", tilt_u, "tilt, real part");
  c_tr->add_option("--w", tilt_w, "tilt, imaginary part");
  c_tr->add_option("--deriv", deriv, "tilt-derivative order")
      ->check(CLI::Range(0, 6));

  auto* c_sup = app.add_subcommand("supremum", "all-time supremum law");
  c_sup->require_subcommand(1);
  auto* c_trip = c_sup->add_subcommand(
      "triplet", "subordinator drift and geometric-compound constants");
  auto* c_mgf =
      c_sup->add_subcommand("mgf", "E exp(r sup X) on a real r grid");
  c_mgf->add_option("--grid", grid, "r grid a:b:n")->required();
  auto* c_cdf = c_sup->add_subcommand("cdf", "P{sup X <= x} on a grid");
  c_cdf->add_option("--grid", grid, "x grid a:b:n")->required();
  std::size_t n_draws = 1000;
  auto* c_sample = c_sup->add_subcommand("sample", "i.i.d. supremum draws");
  c_sample->add_option("--n", n_draws, "number of draws")
      ->check(CLI::Range(std::size_t(1), std::size_t(100000000)));

  std::size_t paths = 100000;
  double horizon = 0.0, step = 0.0;
  int quantiles = 20;
  auto* c_mc = app.add_subcommand(
      "montecarlo", "path simulation vs the analytic CDF at quantiles");
  c_mc->add_option("--paths", paths, "number of paths");
  c_mc->add_option("--horizon", horizon, "time horizon (0: auto)");
  c_mc->add_option("--step", step, "diffusion slice cap (0: auto)");
  c_mc->add_option("--quantiles", quantiles, "comparison points")
      ->check(CLI::Range(1, 1000));

  bool as_json = false, with_mc = false;
  auto* c_repro = app.add_subcommand(
      "reproduce-paper-example",
      "run the bundled showcase model against its reference constants");
  c_repro->add_flag("--json", as_json, "machine-readable report");
  c_repro->add_flag("--mc", with_mc, "append a Monte Carlo comparison");

  for (CLI::App* sub : app.get_subcommands(nullptr)) {
    sub->fallthrough();
    for (CLI::App* leaf : sub->get_subcommands(nullptr)) leaf->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }

  const CLI::App* active = app.get_subcommands().front();
  if (as_json) g.format = "json";
  print_manifest(app, active, g);

  try {
    if (active == c_validate) return run_validate(g);
    if (active == c_roots) return run_roots(g, s);
    if (active == c_inf) return run_infimum_density(g, s, grid, inf_path);
    if (active == c_tr) return run_transform(g, grid, tilt_u, tilt_w, deriv);
    if (active == c_sup) {
      const CLI::App* leaf = c_sup->get_subcommands().front();
      if (leaf == c_trip) return run_sup_triplet(g);
      if (leaf == c_mgf) return run_sup_mgf(g, grid);
      if (leaf == c_cdf) return run_sup_cdf(g, grid);
      if (leaf == c_sample) return run_sup_sample(g, n_draws);
    }
    if (active == c_mc)
      return run_montecarlo(g, paths, horizon, step, quantiles);
    if (active == c_repro) return run_reproduce(g, with_mc);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.exit_code();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;  // unreachable
}
