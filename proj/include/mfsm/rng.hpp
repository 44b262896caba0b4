#ifndef MFSM_RNG_HPP
#define MFSM_RNG_HPP

#include <cmath>
#include <cstdint>

#include "mfsm/errors.hpp"

namespace mfsm {

/// SplitMix64: tiny counter-style generator. A stream is fully determined by
/// its seed, so replicate streams derived via mix_seed are independent of
/// thread scheduling.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform on the open interval (0, 1); never returns an exact endpoint.
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

private:
  std::uint64_t state_;
};

/// Stream derivation for (seed, n, replicate) jobs. Documented contract:
/// adding replicates or resolutions never perturbs existing streams.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a,
                              std::uint64_t b) {
  std::uint64_t z = seed ^ (a * 0x9e3779b97f4a7c15ull) ^
                    (b * 0xc2b2ae3d27d4eb4full) ^ 0x632be59bd9b4e019ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Symmetric alpha-stable variate with characteristic function
/// exp(-scale^alpha |y|^alpha), via the Chambers-Mallows-Stuck transform.
/// At alpha = 2 this is a centered Gaussian with variance 2*scale^2.
/// Consumes exactly two uniforms per draw.
inline double sas_variate(double alpha, double scale, SplitMix64& rng) {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw domain_error("sas_variate: alpha must lie in (0, 2]");
  }
  if (!(scale > 0.0)) {
    throw domain_error("sas_variate: scale must be positive");
  }
  const double angle = M_PI * (rng.uniform01() - 0.5);  // (-pi/2, pi/2)
  const double expo = -std::log(rng.uniform01());       // Exp(1)
  if (alpha == 1.0) {
    return scale * std::tan(angle);
  }
  const double value = std::sin(alpha * angle) /
                       std::pow(std::cos(angle), 1.0 / alpha) *
                       std::pow(std::cos((1.0 - alpha) * angle) / expo,
                                (1.0 - alpha) / alpha);
  return scale * value;
}

} // namespace mfsm

#endif
