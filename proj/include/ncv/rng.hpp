// rng.hpp — seeded random source with a reproducible transcript.
#pragma once

#include <cstdint>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

namespace ncv {

// Every sampling operation in the library draws through this wrapper. The
// engine is std::mt19937_64, whose output sequence is fixed by the standard,
// and all derived draws (uniform doubles, gaussians, weighted picks) use
// explicit arithmetic rather than the implementation-defined standard
// distributions. A seed therefore fixes the full transcript on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }

  // uniform in [0, 1), 53-bit resolution
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // unbiased integer in [0, n)
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % n;
    std::uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return v % n;
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u = 0.0;
    do {
      u = uniform01();
    } while (u <= 0.0);
    const double v = uniform01();
    constexpr double two_pi = 6.283185307179586476925286766559;
    const double r = std::sqrt(-2.0 * std::log(u));
    spare_ = r * std::sin(two_pi * v);
    have_spare_ = true;
    return r * std::cos(two_pi * v);
  }

  // index sampled proportionally to the (nonnegative) weights; weights need
  // not be normalized. Floating-point shortfall lands on the last positive
  // weight, so a zero-weight index is never returned.
  std::size_t pick(const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    const double u = uniform01() * total;
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] > 0.0) {
        acc += weights[i];
        last_positive = i;
        if (u < acc) return i;
      }
    }
    return last_positive;
  }

  // stable per-stream seed derivation (splitmix64 over seed and stream index);
  // used for independent optimizer restarts and parallel experiment lanes
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace ncv
