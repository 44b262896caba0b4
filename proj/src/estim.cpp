#include "mfsm/estim.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mfsm/errors.hpp"
#include "mfsm/specfun.hpp"

namespace mfsm {

void EstimatorConfig::validate() const {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw domain_error("estimator: gamma must lie in (0, 1), got " +
                       std::to_string(gamma));
  }
  if (!(beta > -0.5 && beta < 0.0)) {
    throw domain_error("estimator: beta must lie in (-1/2, 0), got " +
                       std::to_string(beta));
  }
  if (!(beta1 > -0.5 && beta1 < beta2 && beta2 < 0.0)) {
    throw domain_error(
        "estimator: need -1/2 < beta1 < beta2 < 0, got beta1=" +
        std::to_string(beta1) + " beta2=" + std::to_string(beta2));
  }
  if (zero_guard < 0.0) {
    throw domain_error("estimator: zero_guard must be >= 0");
  }
  if (!moments_ok(filter)) {
    throw config_error(
        "estimator: filter moments do not match its declared vanishing "
        "order");
  }
}

std::vector<long> Neighborhood::indices() const {
  std::vector<long> out;
  out.reserve(static_cast<std::size_t>(count()));
  for (long k = first; k <= last; ++k) {
    out.push_back(k);
  }
  return out;
}

Neighborhood neighborhood(int n, double gamma, double t0,
                          int filter_last_index) {
  if (n < 2) {
    throw config_error("neighborhood: need n >= 2");
  }
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw domain_error("neighborhood: gamma must lie in (0, 1)");
  }
  if (filter_last_index < 1) {
    throw domain_error("neighborhood: filter must have K >= 1");
  }
  const double radius = std::pow(static_cast<double>(n), -gamma);
  const double lo = std::ceil(static_cast<double>(n) * (t0 - radius));
  const double hi = std::floor(static_cast<double>(n) * (t0 + radius));
  Neighborhood nb;
  nb.n = n;
  nb.first = static_cast<long>(lo);
  nb.last = static_cast<long>(hi) - filter_last_index;
  if (nb.last < nb.first) {
    throw config_error(
        "neighborhood: window around t0=" + std::to_string(t0) + " at n=" +
        std::to_string(n) + ", gamma=" + std::to_string(gamma) +
        " admits no variation index; increase n or decrease gamma");
  }
  return nb;
}

VStat v_stat(const SamplePath& path, const FilterSeq& filter,
             const Neighborhood& nb, double beta, double zero_guard) {
  // The raw statistic is well defined at the boundary beta = -1/2 (only the
  // estimator theory needs the open interval), so admit it here.
  if (!(beta >= -0.5 && beta < 0.0)) {
    throw domain_error("v_stat: beta must lie in [-1/2, 0)");
  }
  const std::vector<double> variations =
      discrete_variations(path, filter, nb.indices());
  VStat stat;
  double acc = 0.0;
  for (double d : variations) {
    double mag = std::fabs(d);
    if (mag < zero_guard) {
      mag = zero_guard;
      ++stat.guard_hits;
    }
    acc += std::pow(mag, beta);
  }
  if (stat.guard_hits == static_cast<long>(variations.size())) {
    throw degenerate_error(
        "v_stat: every variation fell below the zero guard; the record "
        "looks constant or polynomial");
  }
  stat.value = acc / static_cast<double>(variations.size());
  return stat;
}

double w_stat(double v, int n, double beta, double hurst_true) {
  return std::pow(static_cast<double>(n), beta * hurst_true) * v;
}

namespace {

struct TwoLevelV {
  VStat fine;
  VStat coarse;
  Neighborhood nb_fine;
  Neighborhood nb_coarse;
};

TwoLevelV two_level_v(const SamplePath& path, const EstimatorConfig& cfg,
                      double beta) {
  if (path.n % 2 != 0) {
    throw config_error("estimate: resolution n=" + std::to_string(path.n) +
                       " must be even (the coarse statistic lives at n/2)");
  }
  TwoLevelV out;
  const int last = cfg.filter.last_index();
  out.nb_fine = neighborhood(path.n, cfg.gamma, cfg.t0, last);
  out.nb_coarse = neighborhood(path.n / 2, cfg.gamma, cfg.t0, last);
  out.fine = v_stat(path, cfg.filter, out.nb_fine, beta, cfg.zero_guard);
  const SamplePath half = path.subsample_half();
  out.coarse = v_stat(half, cfg.filter, out.nb_coarse, beta, cfg.zero_guard);
  return out;
}

} // namespace

double estimate_h(const SamplePath& path, const EstimatorConfig& cfg) {
  cfg.validate();
  const TwoLevelV v = two_level_v(path, cfg, cfg.beta);
  return std::log2(v.coarse.value / v.fine.value) / cfg.beta;
}

double alpha_from_variations(double beta1, double beta2, double v1,
                             double v2) {
  if (!(beta1 > -0.5 && beta1 < beta2 && beta2 < 0.0)) {
    throw domain_error("alpha_from_variations: need -1/2 < beta1 < beta2 < 0");
  }
  const specfun::ExponentPair pair(-beta1, -beta2);
  return specfun::phi(pair, specfun::psi(pair, v1, v2));
}

double estimate_alpha(const SamplePath& path, const EstimatorConfig& cfg) {
  cfg.validate();
  const Neighborhood nb =
      neighborhood(path.n, cfg.gamma, cfg.t0, cfg.filter.last_index());
  const VStat v1 = v_stat(path, cfg.filter, nb, cfg.beta1, cfg.zero_guard);
  const VStat v2 = v_stat(path, cfg.filter, nb, cfg.beta2, cfg.zero_guard);
  return alpha_from_variations(cfg.beta1, cfg.beta2, v1.value, v2.value);
}

double rate_exponent_gaussian(double hurst_t0, double gamma) {
  if (!(hurst_t0 > 0.0 && hurst_t0 < gamma && gamma < 1.0)) {
    throw domain_error(
        "rate_dn_gaussian: need 0 < H(t0) < gamma < 1, got H=" +
        std::to_string(hurst_t0) + " gamma=" + std::to_string(gamma));
  }
  if (gamma <= (1.0 + 2.0 * hurst_t0) / 3.0) {
    return hurst_t0 - gamma;
  }
  return 0.5 * (gamma - 1.0);
}

double rate_dn_gaussian(int n, double hurst_t0, double gamma) {
  return std::pow(static_cast<double>(n),
                  rate_exponent_gaussian(hurst_t0, gamma));
}

double rate_exponent_stable(double alpha, double hurst_t0, double gamma,
                            int vanishing_order) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw domain_error("rate_dn_stable: alpha must lie in (0, 2)");
  }
  if (vanishing_order < 1) {
    throw domain_error("rate_dn_stable: filter order L must be >= 1");
  }
  if (!(hurst_t0 > 0.0 && hurst_t0 < gamma && gamma < 1.0)) {
    throw domain_error("rate_dn_stable: need 0 < H(t0) < gamma < 1");
  }
  const double level = vanishing_order + 1.0 - 2.0 / alpha;
  if (hurst_t0 < level) {
    if (gamma <= (2.0 + alpha * hurst_t0) / (2.0 + alpha)) {
      return 0.25 * alpha * (hurst_t0 - gamma);
    }
    return 0.5 * (gamma - 1.0);
  }
  if (hurst_t0 > level) {
    if (gamma >= (vanishing_order + 1.0) /
                     (vanishing_order + 2.0 - hurst_t0)) {
      return 0.25 * alpha * (1.0 - gamma) *
             (hurst_t0 - (vanishing_order + 1.0));
    }
    return 0.25 * alpha * (hurst_t0 - gamma);
  }
  // Equality case H(t0) = L + 1 - 2/alpha.
  if (gamma < (vanishing_order + 1.0) * alpha / (2.0 + alpha)) {
    return 0.25 * alpha * (hurst_t0 - gamma);
  }
  return 0.5 * (gamma - 1.0);  // carries an extra sqrt(log n) factor
}

double rate_dn_stable(int n, double alpha, double hurst_t0, double gamma,
                      int vanishing_order) {
  const double nd = static_cast<double>(n);
  const double expo =
      rate_exponent_stable(alpha, hurst_t0, gamma, vanishing_order);
  const double level = vanishing_order + 1.0 - 2.0 / alpha;
  double value = std::pow(nd, expo);
  if (hurst_t0 == level &&
      gamma >= (vanishing_order + 1.0) * alpha / (2.0 + alpha)) {
    value *= std::sqrt(std::log(nd));
  }
  return value;
}

EstimationResult estimate_all(const SamplePath& path,
                              const EstimatorConfig& cfg) {
  cfg.validate();
  EstimationResult result;
  const TwoLevelV v = two_level_v(path, cfg, cfg.beta);
  result.h_hat = std::log2(v.coarse.value / v.fine.value) / cfg.beta;
  result.guard_hits = v.fine.guard_hits + v.coarse.guard_hits;
  result.v_values[{path.n, cfg.beta}] = v.fine.value;
  result.v_values[{path.n / 2, cfg.beta}] = v.coarse.value;
  result.counts[path.n] = v.nb_fine.count();
  result.counts[path.n / 2] = v.nb_coarse.count();

  const VStat v1 =
      v_stat(path, cfg.filter, v.nb_fine, cfg.beta1, cfg.zero_guard);
  const VStat v2 =
      v_stat(path, cfg.filter, v.nb_fine, cfg.beta2, cfg.zero_guard);
  result.v_values[{path.n, cfg.beta1}] = v1.value;
  result.v_values[{path.n, cfg.beta2}] = v2.value;
  result.alpha_hat =
      alpha_from_variations(cfg.beta1, cfg.beta2, v1.value, v2.value);

  result.d_n_reported = std::numeric_limits<double>::quiet_NaN();
  try {
    if (result.alpha_hat >= 2.0) {
      result.d_n_reported =
          rate_dn_gaussian(path.n, result.h_hat, cfg.gamma);
    } else if (result.alpha_hat > 0.0) {
      result.d_n_reported =
          rate_dn_stable(path.n, result.alpha_hat, result.h_hat, cfg.gamma,
                         cfg.filter.vanishing_order);
    }
  } catch (const error&) {
    // estimates outside every rate branch: leave NaN
  }
  return result;
}

} // namespace mfsm
