#pragma once

#include <cmath>
#include <cstdint>

namespace levysup {

// splitmix64 finalizer. Also the documented stream-split rule: the generator
// for logical stream k under seed s starts from state mix64(s) ^ mix64(k+1),
// so results are reproducible for a given (seed, stream) pair regardless of
// how work is divided across threads.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(mix64(seed)) {}
  Rng(std::uint64_t seed, std::uint64_t stream)
      : state_(mix64(seed) ^ mix64(stream + 1)) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform on the open interval (0,1); never returns 0 or 1, so logs are safe.
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double exponential(double rate) { return -std::log(uniform()) / rate; }

  // Box-Muller, cosine branch only. Wastes half a pair but keeps the draw
  // count per call fixed, which the stream-replay tests rely on.
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.28318530717958647692528676655900577 * u2);
  }

 private:
  std::uint64_t state_;
};

}  // namespace levysup
