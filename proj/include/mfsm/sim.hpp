#ifndef MFSM_SIM_HPP
#define MFSM_SIM_HPP

#include <cstdint>

#include "mfsm/hurst.hpp"
#include "mfsm/path.hpp"

namespace mfsm {

/// Model of the moving-average process
///   X(t) = Int_R ( |t-s|^{H(t)-1/alpha} - |s|^{H(t)-1/alpha} ) M_alpha(ds)
/// driven by a symmetric alpha-stable measure with Lebesgue control measure,
/// discretized on midpoint cells of width 1/(n*refinement) over
/// [-R, t_max + R].
struct ModelSpec {
  double alpha = 2.0;
  HurstFunction hurst = HurstFunction::constant(0.5);
  double t_min = 0.0;  // domain U = [t_min, t_max]
  double t_max = 1.0;
  int n = 1024;                      // samples per unit time
  double truncation_radius = 8.0;    // R
  int refinement = 16;               // kernel cells per sample step
  std::uint64_t seed = 1;

  long first_grid_index() const;
  long last_grid_index() const;
  void validate() const;  // throws config_error
};

/// Path of the Gaussian case (alpha = 2) on the full domain grid.
/// Cell increments are Gaussian with variance 2/( n*m ), matching the
/// characteristic-function convention exp(-sigma^2 y^2). The exponent-zero
/// case H(t) = 1/2 uses the Brownian indicator kernel.
SamplePath simulate_mbm(const ModelSpec& spec);

/// Path of the heavy-tailed case (0 < alpha < 2) on the full domain grid.
/// A constant H = 1/alpha makes the kernel vanish identically and yields the
/// all-zero path.
SamplePath simulate_lmsm(const ModelSpec& spec);

/// Same scheme restricted to grid indices [first_index, last_index]; the
/// values agree bitwise with the corresponding slice of the full-grid path
/// (one measure realization per seed, independent of the window).
SamplePath simulate_window(const ModelSpec& spec, long first_index,
                           long last_index);

/// Exact fractional Brownian motion on {0, 1/n, ..., (count-1)/n} via dense
/// Cholesky factorization of the covariance
///   c * (|s|^{2H} + |t|^{2H} - |t-s|^{2H}),
/// with c chosen so the law matches the moving-average normalization above
/// (c = kernel norm of the single-increment filter). Cross-validation
/// baseline for simulate_mbm with constant H. Capacity: count <= 8193.
SamplePath simulate_fbm_exact(double hurst, int n, int count,
                              std::uint64_t seed);

} // namespace mfsm

#endif
