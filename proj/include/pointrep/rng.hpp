#pragma once

#include <cstdint>

namespace pointrep {

/// Counter-based splitmix64 stream. Output i depends only on (seed, stream,
/// i), so replications can be handed independent streams and run in any
/// order or thread layout with identical results. Pure 64-bit integer
/// arithmetic, platform independent.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed, std::uint64_t stream = 0)
      : state_(mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ull))) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  /// Uniform on [0,1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on [0,len).
  double next_uniform(double len) { return next_double() * len; }

  /// Exact Poisson(mean) via chunked inverse-product sampling; the chunking
  /// keeps exp(-chunk) away from the underflow edge for large means.
  std::uint64_t next_poisson(double mean) {
    std::uint64_t total = 0;
    while (mean > 0.0) {
      const double chunk = mean > 500.0 ? 500.0 : mean;
      mean -= chunk;
      total += poisson_knuth(chunk);
    }
    return total;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t poisson_knuth(double mean) {
    // exp(-mean) with mean <= 500 stays well inside double range
    const double limit = fast_exp_neg(mean);
    std::uint64_t k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= next_double();
    } while (p > limit);
    return k - 1;
  }

  // exp(-x) computed via integer/fraction split so results do not depend on
  // libm rounding differences: exp(-x) = exp(-1)^floor(x) * series(-frac).
  static double fast_exp_neg(double x) {
    // exp(-1) to full double precision
    constexpr double inv_e = 0.36787944117144233;
    double result = 1.0;
    double base = inv_e;
    auto n = static_cast<unsigned long>(x);
    double frac = x - static_cast<double>(n);
    while (n > 0) {
      if (n & 1ul) result *= base;
      base *= base;
      n >>= 1;
    }
    // Taylor series for exp(-frac), frac in [0,1); converges fast
    double term = 1.0, sum = 1.0;
    for (int i = 1; i < 30; ++i) {
      term *= -frac / i;
      sum += term;
      if (term > -1e-18 && term < 1e-18) break;
    }
    return result * sum;
  }

  std::uint64_t state_;
};

}  // namespace pointrep
