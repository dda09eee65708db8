#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace mcmc_certify {

namespace detail {

// SplitMix64 finalizer (Stafford variant 13).
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

// Counter-based splittable stream. (seed, stream_id) fully determines the
// sequence; distinct stream_ids get distinct odd increments, so replicas can
// be handed one stream each and run in any order on any number of threads.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : state_(detail::mix64(seed + 0x9e3779b97f4a7c15ULL * stream_id)),
        gamma_(detail::mix64(detail::mix64(seed) ^ stream_id) | 1ULL) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    state_ += gamma_;
    return detail::mix64(state_);
  }

  // Uniform on (0,1), 53-bit resolution, never exactly 0 or 1.
  double uniform() {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Marsaglia polar method; caches the spare deviate.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
  }

  double exponential() { return -std::log(uniform()); }

  // Marsaglia-Tsang; `rate` parameterization (mean = shape/rate).
  double gamma(double shape, double rate = 1.0) {
    if (shape < 1.0) {
      const double g = gamma(shape + 1.0, 1.0);
      return g * std::pow(uniform(), 1.0 / shape) / rate;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
        return d * v / rate;
    }
  }

  double chi_square(double df) { return gamma(0.5 * df, 0.5); }

  // Ratio of a normal and the square root of a chi-square.
  double student_t(double df) {
    return normal() / std::sqrt(chi_square(df) / df);
  }

 private:
  std::uint64_t state_;
  std::uint64_t gamma_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace mcmc_certify
