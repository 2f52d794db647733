#ifndef DBSURV_RNG_HPP_
#define DBSURV_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace dbsurv {

// Deterministic random source. The uniform and normal maps are spelled out
// here (rather than using std::*_distribution) so that seeded runs are
// bit-identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on the open interval (0, 1); safe for log() and normal quantiles.
  double uniform_open() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; the sine branch is cached.
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 engine_;
  double cached_{};
  bool have_cached_{false};
};

}  // namespace dbsurv

#endif  // DBSURV_RNG_HPP_
