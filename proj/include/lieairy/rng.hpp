// Deterministic random streams for the Monte Carlo checks. Sub-streams are
// derived from (seed, stream index) through splitmix64, and gaussians come
// from an explicit Box-Muller on 53-bit uniforms, so a (seed, samples) pair
// reproduces bit-identical results on any platform.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace lieairy {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class RngStream {
public:
  RngStream(std::uint64_t seed, std::uint64_t stream = 0) {
    std::uint64_t s = seed;
    (void)splitmix64(s);
    s ^= 0xD1B54A32D192ED03ULL * (stream + 1);
    gen_.seed(splitmix64(s));
  }

  double uniform01() {  // in [0, 1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    double u2 = uniform01();
    if (u1 < 0x1.0p-100) u1 = 0x1.0p-100;
    double rad = std::sqrt(-2.0 * std::log(u1));
    double ang = 2.0 * std::numbers::pi * u2;
    spare_ = rad * std::sin(ang);
    have_spare_ = true;
    return rad * std::cos(ang);
  }

  std::complex<double> complex_gaussian() {
    double a = gaussian();
    double b = gaussian();
    return {a, b};
  }

private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace lieairy
