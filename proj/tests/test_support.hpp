#ifndef MRCF_TEST_SUPPORT_HPP
#define MRCF_TEST_SUPPORT_HPP

#include <cstdint>
#include <cmath>

#include "mrcf/harmonics.hpp"

namespace mrcf_test {

// Deterministic generator independent of the standard library's distribution
// internals: splitmix-seeded xorshift + Box-Muller.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  double uniform() {  // in (0, 1)
    state_ ^= state_ << 13;
    state_ ^= state_ >> 7;
    state_ ^= state_ << 17;
    return (double(state_ >> 11) + 0.5) / 9007199254740992.0;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    const double u = uniform(), v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * mrcf::kPi * v);
  }

 private:
  uint64_t state_;
};

// Random spectrum satisfying the real-field reality condition, coefficients
// scaled by amplitude / (l+1)^decay.
inline mrcf::HarmonicSpectrum random_real_spectrum(int l_max, Rng& rng,
                                                   double amplitude = 1.0,
                                                   double decay = 2.0,
                                                   int l_min = 0) {
  mrcf::HarmonicSpectrum spec(l_max);
  for (int l = l_min; l <= l_max; ++l) {
    const double s = amplitude / std::pow(l + 1.0, decay);
    spec.at(l, 0) = s * rng.normal();
    for (int m = 1; m <= l; ++m) {
      const mrcf::Complex v(s * rng.normal(), s * rng.normal());
      spec.at(l, m) = v;
      spec.at(l, -m) = ((m & 1) ? -1.0 : 1.0) * std::conj(v);
    }
  }
  return spec;
}

// Random complex spectrum without symmetry constraints.
inline mrcf::HarmonicSpectrum random_complex_spectrum(int l_max, Rng& rng,
                                                      double amplitude = 1.0,
                                                      double decay = 2.0) {
  mrcf::HarmonicSpectrum spec(l_max);
  for (int l = 0; l <= l_max; ++l) {
    const double s = amplitude / std::pow(l + 1.0, decay);
    for (int m = -l; m <= l; ++m)
      spec.at(l, m) = mrcf::Complex(s * rng.normal(), s * rng.normal());
  }
  return spec;
}

}  // namespace mrcf_test

#endif
