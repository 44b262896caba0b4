// Acceptance suite: one check per release criterion, each printing a single
// [PASS]/[FAIL] line with the measured quantities. Run with a criterion
// number (1..10) or no argument for the full battery. The exit code is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "mfsm/errors.hpp"
#include "mfsm/estim.hpp"
#include "mfsm/experiment.hpp"
#include "mfsm/filters.hpp"
#include "mfsm/hurst.hpp"
#include "mfsm/oracle.hpp"
#include "mfsm/rng.hpp"
#include "mfsm/sim.hpp"
#include "mfsm/specfun.hpp"

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

void note(Outcome& outcome, bool ok, const std::string& msg) {
  if (!ok) {
    outcome.pass = false;
    if (!outcome.detail.empty()) outcome.detail += "; ";
    outcome.detail += msg;
  }
}

std::string num(double v, const char* format = "%.4g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

// ---------------------------------------------------------------- criterion 1
Outcome filter_identities() {
  Outcome out;
  for (int order = 1; order <= 6; ++order) {
    const mfsm::FilterSeq filter = mfsm::binomial_filter(order);
    double scale = 0.0;
    for (double a : filter.coefficients) scale += std::fabs(a);
    const std::vector<double> sums = mfsm::verify_moments(filter);
    for (int q = 0; q <= order; ++q) {
      note(out, std::fabs(sums[static_cast<std::size_t>(q)]) <= 1e-10 * scale,
           "L=" + std::to_string(order) + " moment q=" + std::to_string(q) +
               " = " + num(sums[static_cast<std::size_t>(q)]));
    }
    note(out, std::fabs(sums.back()) > 1e-10 * scale,
         "L=" + std::to_string(order) + " top moment vanished");
  }
  if (out.pass) {
    out.detail = "moment sums vanish through L, L+1-st nonzero, L = 1..6";
  }
  return out;
}

// ---------------------------------------------------------------- criterion 2
Outcome special_function_fixtures() {
  Outcome out;
  const double c_half = mfsm::specfun::c_beta(-0.5);
  note(out, std::fabs(c_half - std::sqrt(2.0)) <= 1e-12,
       "c_beta(-1/2) = " + num(c_half, "%.15g"));
  const std::vector<std::pair<double, double>> pairs{
      {0.4, 0.2}, {0.45, 0.15}, {0.35, 0.3}};
  double worst = 0.0;
  for (const auto& [u, v] : pairs) {
    const mfsm::specfun::ExponentPair pair(u, v);
    for (double alpha : {0.3, 1.0, 1.7, 2.0}) {
      const double round =
          mfsm::specfun::phi(pair, mfsm::specfun::h(pair, alpha));
      worst = std::max(worst, std::fabs(round - alpha));
    }
  }
  note(out, worst <= 1e-9, "phi(h(alpha)) round-trip error " + num(worst));
  if (out.pass) {
    out.detail = "c_beta(-1/2)-sqrt2 = " + num(c_half - std::sqrt(2.0)) +
                 ", worst round-trip " + num(worst);
  }
  return out;
}

// ---------------------------------------------------------------- criterion 3
Outcome oracle_concordance() {
  Outcome out;
  double worst_pair = 0.0;
  double worst_gamma = 0.0;
  for (double alpha : {0.5, 1.0, 1.5, 2.0}) {
    for (double beta : {-0.1, -0.25, -0.4}) {
      const double quadrature =
          mfsm::oracle::m_t0_beta_quadrature(alpha, beta, 1.0);
      const double closed = mfsm::oracle::m_t0_beta_closed(alpha, beta, 1.0);
      worst_pair =
          std::max(worst_pair, std::fabs(quadrature - closed) / closed);
      const double integral = mfsm::oracle::gamma_tail_integral(alpha, beta);
      const double reference =
          2.0 / alpha * std::exp(std::lgamma(-beta / alpha));
      worst_gamma =
          std::max(worst_gamma, std::fabs(integral - reference) / reference);
    }
  }
  note(out, worst_pair < 1e-7,
       "quadrature/closed relative gap " + num(worst_pair));
  note(out, worst_gamma <= 1e-8,
       "Gamma-integral relative gap " + num(worst_gamma));
  if (out.pass) {
    out.detail = "two-route gap " + num(worst_pair) + ", Gamma-integral gap " +
                 num(worst_gamma);
  }
  return out;
}

// ---------------------------------------------------------------- criterion 4
Outcome stability_round_trip() {
  Outcome out;
  double worst = 0.0;
  for (double alpha : {0.5, 1.0, 1.5, 2.0}) {
    for (double m : {0.5, 1.0, 3.0}) {
      const double v1 = mfsm::oracle::m_t0_beta_closed(alpha, -0.4, m);
      const double v2 = mfsm::oracle::m_t0_beta_closed(alpha, -0.2, m);
      const double recovered =
          mfsm::alpha_from_variations(-0.4, -0.2, v1, v2);
      worst = std::max(worst, std::fabs(recovered - alpha));
    }
  }
  note(out, worst <= 1e-6, "noise-free recovery error " + num(worst));
  if (out.pass) out.detail = "worst |alpha_hat - alpha| = " + num(worst);
  return out;
}

// ---------------------------------------------------------------- criterion 5
Outcome exact_invariances() {
  Outcome out;
  mfsm::EstimatorConfig cfg;
  cfg.t0 = 0.5;
  cfg.gamma = 0.6;
  cfg.beta = -0.3;
  cfg.beta1 = -0.4;
  cfg.beta2 = -0.2;
  cfg.filter = mfsm::binomial_filter(2);
  double worst_h = 0.0;
  double worst_a = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    mfsm::ModelSpec model;
    model.n = 128;
    model.truncation_radius = 4.0;
    model.refinement = 4;
    model.seed = mfsm::mix_seed(505, 5, static_cast<std::uint64_t>(trial));
    switch (trial % 4) {
      case 0:
        model.alpha = 2.0;
        model.hurst = mfsm::HurstFunction::constant(0.45 + 0.01 * trial);
        break;
      case 1:
        model.alpha = 1.5;
        model.hurst = mfsm::HurstFunction::constant(0.7);
        break;
      case 2:
        model.alpha = 2.0;
        model.hurst = mfsm::HurstFunction::logistic(0.52, 0.68, 10.0, 0.5);
        break;
      default:
        model.alpha = 1.2;
        model.hurst = mfsm::HurstFunction::sinusoidal(0.55, 0.05, 1.0, 0.3);
        break;
    }
    const mfsm::SamplePath path = model.alpha == 2.0
                                      ? mfsm::simulate_mbm(model)
                                      : mfsm::simulate_lmsm(model);
    const double h_base = mfsm::estimate_h(path, cfg);
    const double a_base = mfsm::estimate_alpha(path, cfg);
    double magnitude = 0.0;
    for (double v : path.values) {
      magnitude = std::max(magnitude, std::fabs(v));
    }
    mfsm::SamplePath scaled = path;
    for (double& v : scaled.values) v *= 3.7;
    mfsm::SamplePath shifted = path;
    for (double& v : shifted.values) v += 0.25 * magnitude;
    worst_h = std::max(worst_h,
                       std::fabs(mfsm::estimate_h(scaled, cfg) - h_base));
    worst_h = std::max(worst_h,
                       std::fabs(mfsm::estimate_h(shifted, cfg) - h_base));
    worst_a = std::max(worst_a,
                       std::fabs(mfsm::estimate_alpha(scaled, cfg) - a_base));
    worst_a = std::max(worst_a,
                       std::fabs(mfsm::estimate_alpha(shifted, cfg) - a_base));
  }
  note(out, worst_h <= 1e-12, "H_hat drift " + num(worst_h));
  note(out, worst_a <= 1e-12, "alpha_hat drift " + num(worst_a));
  if (out.pass) {
    out.detail = "max drift: H " + num(worst_h) + ", alpha " + num(worst_a) +
                 " over 20 paths";
  }
  return out;
}

// ---------------------------------------------------------------- criterion 6
Outcome neighborhood_law() {
  Outcome out;
  mfsm::SplitMix64 rng(606);
  int checked = 0;
  while (checked < 500 && out.pass) {
    const int n = 16 + static_cast<int>(rng.uniform01() * 200000);
    const double gamma = 0.15 + 0.75 * rng.uniform01();
    const double t0 = 0.25 + 0.5 * rng.uniform01();
    const int order = 1 + static_cast<int>(rng.uniform01() * 5);
    mfsm::Neighborhood nb;
    try {
      nb = mfsm::neighborhood(n, gamma, t0, order);
    } catch (const mfsm::config_error&) {
      continue;
    }
    const long floor_bound = static_cast<long>(
        std::floor(2.0 * std::pow(n, 1.0 - gamma) - order));
    note(out, nb.count() == floor_bound || nb.count() == floor_bound + 1,
         "count " + std::to_string(nb.count()) + " vs bound " +
             std::to_string(floor_bound) + " at n=" + std::to_string(n) +
             " gamma=" + num(gamma) + " K=" + std::to_string(order));
    ++checked;
  }
  if (out.pass) out.detail = "500 random windows within the two-value law";
  return out;
}

mfsm::ExperimentConfig consistency_config(double alpha,
                                          mfsm::HurstFunction hurst, int n,
                                          double gamma, int replicates,
                                          std::uint64_t seed) {
  mfsm::ExperimentConfig cfg;
  cfg.model.alpha = alpha;
  cfg.model.hurst = hurst;
  cfg.model.n = n;
  cfg.estimator.t0 = 0.5;
  cfg.estimator.gamma = gamma;
  cfg.estimator.beta = -0.3;
  cfg.estimator.beta1 = -0.4;
  cfg.estimator.beta2 = -0.2;
  cfg.estimator.filter = mfsm::binomial_filter(2);
  cfg.n_values = {n};
  cfg.replicates = replicates;
  cfg.seed = seed;
  cfg.workers = 2;
  return cfg;
}

// ---------------------------------------------------------------- criterion 7
Outcome gaussian_consistency() {
  Outcome out;
  {
    const auto records = mfsm::run_experiment(consistency_config(
        2.0, mfsm::HurstFunction::constant(0.5), 4096, 0.7, 100, 7001));
    int within = 0;
    double alpha_sum = 0.0;
    long valid = 0;
    for (const auto& r : records) {
      if (r.failed) continue;
      ++valid;
      if (std::fabs(r.h_hat - 0.5) <= 0.05) ++within;
      alpha_sum += r.alpha_hat;
    }
    const double rate = 100.0 * within / std::max<long>(valid, 1);
    const double alpha_mean = alpha_sum / std::max<long>(valid, 1);
    note(out, rate >= 90.0,
         "constant H: |H_hat-0.5|<=0.05 in " + num(rate) + "% (need >=90%)");
    note(out, std::fabs(alpha_mean - 2.0) <= 0.3,
         "constant H: mean alpha_hat " + num(alpha_mean) + " (need 2+-0.3)");
  }
  {
    const auto records = mfsm::run_experiment(consistency_config(
        2.0, mfsm::HurstFunction::logistic(0.52, 0.68, 10.0, 0.5), 4096, 0.7,
        100, 7002));
    int within = 0;
    long valid = 0;
    for (const auto& r : records) {
      if (r.failed) continue;
      ++valid;
      if (std::fabs(r.h_hat - 0.6) <= 0.08) ++within;
    }
    const double rate = 100.0 * within / std::max<long>(valid, 1);
    note(out, rate >= 85.0,
         "logistic H: |H_hat-0.6|<=0.08 in " + num(rate) + "% (need >=85%)");
  }
  if (out.pass) out.detail = "both Gaussian scenarios inside tolerance";
  return out;
}

// ---------------------------------------------------------------- criterion 8
Outcome stable_consistency() {
  Outcome out;
  const auto records = mfsm::run_experiment(consistency_config(
      1.5, mfsm::HurstFunction::constant(0.7), 4096, 0.7, 100, 8001));
  std::vector<double> h_err;
  std::vector<double> alphas;
  for (const auto& r : records) {
    if (r.failed) continue;
    h_err.push_back(std::fabs(r.h_hat - 0.7));
    alphas.push_back(r.alpha_hat);
  }
  std::sort(h_err.begin(), h_err.end());
  std::sort(alphas.begin(), alphas.end());
  const double med_h = h_err[h_err.size() / 2];
  const double med_a = alphas[alphas.size() / 2];
  note(out, med_h <= 0.08,
       "median |H_hat-0.7| = " + num(med_h) + " (need <=0.08)");
  note(out, med_a >= 1.1 && med_a <= 1.9,
       "median alpha_hat = " + num(med_a) + " (need in [1.1, 1.9])");
  if (out.pass) out.detail = "stable scenario inside tolerance";
  return out;
}

// ---------------------------------------------------------------- criterion 9
Outcome rate_trend() {
  Outcome out;
  mfsm::ExperimentConfig cfg = consistency_config(
      2.0, mfsm::HurstFunction::constant(0.5), 8192, 0.55, 50, 1);
  cfg.n_values = {512, 1024, 2048, 4096, 8192};
  const auto records = mfsm::run_experiment(cfg);
  const mfsm::ExperimentSummary summary = mfsm::summarize(cfg, records);
  std::string ladder;
  bool monotone = true;
  for (std::size_t i = 0; i < summary.per_n.size(); ++i) {
    if (!ladder.empty()) ladder += " ";
    ladder += num(summary.per_n[i].rmse_h);
    if (i > 0 && summary.per_n[i].rmse_h > summary.per_n[i - 1].rmse_h) {
      monotone = false;
    }
  }
  note(out, monotone, "RMSE ladder not monotone: " + ladder);
  note(out, summary.empirical_log2_rmse_slope < 0.0,
       "log2 RMSE slope " + num(summary.empirical_log2_rmse_slope));
  if (out.pass) {
    out.detail = "RMSE " + ladder + "; empirical slope " +
                 num(summary.empirical_log2_rmse_slope) +
                 ", theoretical d_n exponent " +
                 num(summary.theoretical_rate_exponent) +
                 " (upper rate, matching not required)";
  }
  return out;
}

// --------------------------------------------------------------- criterion 10
Outcome local_scale_diagnostic() {
  Outcome out;
  mfsm::oracle::KernelSpec kernel;
  kernel.alpha = 2.0;
  kernel.filter = mfsm::binomial_filter(2);
  kernel.hurst_function = mfsm::HurstFunction::logistic(0.52, 0.68, 10.0, 0.5);
  kernel.hurst_at_t0 = (*kernel.hurst_function)(0.5);
  const double m = mfsm::oracle::m_t0(kernel);
  const double t0 = 0.5;
  std::string ladder;
  double previous = -1.0;
  bool decreasing = true;
  for (int n : {256, 512, 1024, 2048, 4096}) {
    const mfsm::Neighborhood nb = mfsm::neighborhood(n, 0.8, t0, 3);
    double worst = 0.0;
    for (long k = nb.first; k <= nb.last; ++k) {
      worst = std::max(
          worst, std::fabs(mfsm::oracle::sigma_kn(k, n, t0, kernel) - m));
    }
    if (!ladder.empty()) ladder += " ";
    ladder += num(worst);
    if (previous >= 0.0 && worst >= previous) decreasing = false;
    previous = worst;
  }
  note(out, decreasing,
       "max_k |sigma_kn - M| ladder not decreasing: " + ladder);
  if (out.pass) {
    out.detail = "max_k |sigma_kn - M| over n = 2^8..2^12: " + ladder;
  }
  return out;
}

struct Criterion {
  int id;
  const char* name;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "filter identities", filter_identities},
    {2, "special-function fixtures", special_function_fixtures},
    {3, "oracle concordance", oracle_concordance},
    {4, "noise-free stability round trip", stability_round_trip},
    {5, "exact invariances", exact_invariances},
    {6, "neighborhood cardinality law", neighborhood_law},
    {7, "Gaussian consistency at desk scale", gaussian_consistency},
    {8, "stable consistency at desk scale", stable_consistency},
    {9, "rate trend across resolutions", rate_trend},
    {10, "local-scale diagnostic", local_scale_diagnostic},
};

} // namespace

int main(int argc, char** argv) {
  int requested = 0;
  if (argc > 1) {
    requested = std::atoi(argv[1]);
    if (requested < 1 || requested > 10) {
      std::fprintf(stderr, "usage: %s [1..10]\n", argv[0]);
      return 2;
    }
  }
  int failures = 0;
  for (const Criterion& criterion : kCriteria) {
    if (requested != 0 && criterion.id != requested) continue;
    const auto started = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      started)
            .count();
    std::printf("[%s] criterion %d (%s): %s  [%.1fs]\n",
                outcome.pass ? "PASS" : "FAIL", criterion.id, criterion.name,
                outcome.detail.c_str(), seconds);
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  return failures;
}
