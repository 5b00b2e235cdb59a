#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace modcap {

// Mixes a root seed with a stream id so that every consumer of randomness
// (instance generator, tree builder, forward sampler, out-of-sample
// simulator, per-worker streams) gets an independent generator derived from
// one user-facing seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(0xA5A5A5A5ULL + stream));
}

// Inverse standard-normal CDF, Wichura's PPND16 (algorithm AS 241).
// Accurate to ~1e-15 over (0,1); used both for sampling and for the
// two-sided confidence quantile z_{alpha/2}.
double normal_quantile(double p);

// Deterministic random stream. mt19937_64 output is pinned by the standard
// and all variate transforms below are hand-rolled, so sequences are
// bit-reproducible across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() {
    // 53-bit mantissa in [0,1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // integer in [0, n)
  int uniform_int(int n) {
    if (n <= 0) throw std::invalid_argument("uniform_int: n must be positive");
    int v = static_cast<int>(uniform01() * n);
    return v < n ? v : n - 1;
  }

  double normal(double mean, double sd) {
    double u = uniform01();
    // avoid the exact 0 that inverse-CDF cannot handle
    if (u <= 0.0) u = 0x1.0p-53;
    return mean + sd * normal_quantile(u);
  }

  // Normal(mean, sd) truncated to [0, +inf), by rejection.
  double truncated_normal_nonneg(double mean, double sd) {
    for (int attempt = 0; attempt < 100000; ++attempt) {
      double v = normal(mean, sd);
      if (v >= 0.0) return v;
    }
    return 0.0;  // unreachable for the parameter ranges we use
  }

  // Poisson by CDF inversion; fine for the small rates used here.
  int poisson(double lambda) {
    if (lambda < 0.0) throw std::invalid_argument("poisson: lambda must be >= 0");
    if (lambda == 0.0) return 0;
    double u = uniform01();
    double p = std::exp(-lambda);
    double cum = p;
    int k = 0;
    while (u > cum && k < 10000) {
      ++k;
      p *= lambda / k;
      cum += p;
    }
    return k;
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace modcap
