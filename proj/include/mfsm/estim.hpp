#ifndef MFSM_ESTIM_HPP
#define MFSM_ESTIM_HPP

#include <map>
#include <utility>
#include <vector>

#include "mfsm/filters.hpp"
#include "mfsm/path.hpp"

namespace mfsm {

/// Settings of the localized variation estimators.
struct EstimatorConfig {
  double t0 = 0.5;
  double gamma = 0.8;       // localization exponent, sup H < gamma < 1
  double beta = -0.3;       // regularity estimator exponent, in (-1/2, 0)
  double beta1 = -0.4;      // stability estimator pair, -1/2 < beta1 < beta2 < 0
  double beta2 = -0.2;
  FilterSeq filter = binomial_filter(2);
  double zero_guard = 1e-300;

  void validate() const;  // throws domain/config errors
};

/// Localization window: indices k with every sample time (k+p)/n within
/// n^{-gamma} of t0. The admissible k form a contiguous range.
struct Neighborhood {
  int n = 0;
  long first = 0;
  long last = 0;  // inclusive

  long count() const { return last - first + 1; }
  std::vector<long> indices() const;
};

/// Eq-driven window: first = ceil(n(t0 - n^{-gamma})), last + K =
/// floor(n(t0 + n^{-gamma})). Empty windows are a configuration error.
Neighborhood neighborhood(int n, double gamma, double t0, int filter_last_index);

struct VStat {
  double value = 0.0;
  long guard_hits = 0;
};

/// Localized negative-power variation (1/count) * sum |D_k|^beta with the
/// zero guard: |D| < eps is clamped to eps and counted. All-clamped windows
/// are a degenerate-path error.
VStat v_stat(const SamplePath& path, const FilterSeq& filter,
             const Neighborhood& nb, double beta, double zero_guard);

/// Diagnostic rescaling n^{beta H} * V for simulation studies with known H.
double w_stat(double v, int n, double beta, double hurst_true);

/// Regularity estimate (1/beta) log2( V_{n/2} / V_n ), the n/2 statistic
/// taken from the same record subsampled at every second point.
double estimate_h(const SamplePath& path, const EstimatorConfig& cfg);

/// Stability estimate phi(psi(V(beta1), V(beta2))) from the level-n window.
double estimate_alpha(const SamplePath& path, const EstimatorConfig& cfg);

/// The same composition applied to externally supplied variation statistics.
double alpha_from_variations(double beta1, double beta2, double v1, double v2);

/// Theoretical consistency-rate factors (reporting only).
double rate_dn_gaussian(int n, double hurst_t0, double gamma);
double rate_dn_stable(int n, double alpha, double hurst_t0, double gamma,
                      int vanishing_order);

/// log2 d_{2n} / d_n exponent, i.e. the n-exponent of the rate law.
double rate_exponent_gaussian(double hurst_t0, double gamma);
double rate_exponent_stable(double alpha, double hurst_t0, double gamma,
                            int vanishing_order);

/// Full estimation record for one path.
struct EstimationResult {
  double h_hat = 0.0;
  double alpha_hat = 0.0;
  // (resolution, beta) -> V
  std::map<std::pair<int, double>, double> v_values;
  std::map<int, long> counts;
  double d_n_reported = 0.0;  // NaN when not computable
  long guard_hits = 0;
};

/// Runs both estimators and collects diagnostics. d_n is evaluated at the
/// estimated (H, alpha) when they admit a rate, otherwise reported as NaN.
EstimationResult estimate_all(const SamplePath& path,
                              const EstimatorConfig& cfg);

} // namespace mfsm

#endif
