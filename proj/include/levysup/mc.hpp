#pragma once

#include <cstdint>
#include <vector>

#include "levysup/model.hpp"

namespace levysup {

struct SimConfig {
  double horizon_T = 0.0;      // 0: auto, 20 / |mean|
  double brownian_step = 0.0;  // 0: auto, 1e-3 * horizon_T (slice cap only;
                               // per-slice maxima are exact bridge draws)
  std::size_t n_paths = 100000;
  std::uint64_t seed = 1;
  int threads = 0;  // 0: LEVYSUP_THREADS env var, else 1
};

// Per-path stream rule: path i uses Rng(seed, i), so results are bit
// identical for any thread count. Draw order inside a path: inter-jump gap,
// then per-slice (normal, uniform) pairs while diffusing, then the jump-sign
// uniform and the jump draws.
struct SimResult {
  std::vector<double> sups;  // sorted per-path suprema over [0, T]
  double horizon_T = 0.0;    // horizon actually used (after any doubling)
  double bias_bound = 0.0;   // mean exp(-R gap_i): P{sup grows after T} cert
  int doublings = 0;         // horizon doublings spent pushing the bias down
  bool bias_warning = false;  // bound still above SE/3 after 3 doublings
};

SimResult simulate_sup(const ModelSpec& m, const SimConfig& cfg);

// One exact draw (negative value) from the matrix-exponential jump law;
// the batch form amortizes the rejection-envelope setup.
double sample_negative_jump(const NegativeJumps& neg, std::uint64_t seed);
std::vector<double> sample_negative_jumps(const NegativeJumps& neg,
                                          std::uint64_t seed, std::size_t n);
std::vector<double> sample_positive_jumps(const PositiveJumps& pos,
                                          std::uint64_t seed, std::size_t n);

// Empirical CDF with binomial standard errors at the requested points.
struct QuantileRow {
  double x = 0.0, cdf = 0.0, se = 0.0;
};
std::vector<QuantileRow> ecdf_rows(const SimResult& res,
                                   const std::vector<double>& xs);

}  // namespace levysup
