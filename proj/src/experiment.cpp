#include "mfsm/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "mfsm/errors.hpp"
#include "mfsm/rng.hpp"

namespace mfsm {

void ExperimentConfig::validate() const {
  model.validate();
  estimator.validate();
  if (n_values.empty()) {
    throw config_error("experiment: n_values must not be empty");
  }
  for (int n : n_values) {
    if (n < 2 || n % 2 != 0) {
      throw config_error("experiment: every n must be even and >= 2, got " +
                         std::to_string(n));
    }
  }
  if (replicates < 1) {
    throw config_error("experiment: replicates must be >= 1");
  }
  if (workers < 1) {
    throw config_error("experiment: workers must be >= 1");
  }
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Grid window containing every sample the two-level estimator reads.
std::pair<long, long> needed_window(const ExperimentConfig& cfg, int n) {
  const int last = cfg.estimator.filter.last_index();
  const Neighborhood fine = neighborhood(n, cfg.estimator.gamma,
                                         cfg.estimator.t0, last);
  const Neighborhood coarse = neighborhood(n / 2, cfg.estimator.gamma,
                                           cfg.estimator.t0, last);
  const long lo = std::min(fine.first, 2 * coarse.first);
  const long hi = std::max(fine.last + last, 2 * (coarse.last + last));
  return {lo, hi};
}

ExperimentRecord run_one(const ExperimentConfig& cfg, int n, int replicate) {
  ExperimentRecord record;
  record.n = n;
  record.replicate = replicate;
  record.seed_used = mix_seed(cfg.seed, static_cast<std::uint64_t>(n),
                              static_cast<std::uint64_t>(replicate));
  record.alpha_true = cfg.model.alpha;
  record.h_true_at_t0 = cfg.model.hurst(cfg.estimator.t0);
  const auto started = std::chrono::steady_clock::now();
  try {
    ModelSpec model = cfg.model;
    model.n = n;
    model.seed = record.seed_used;
    const auto [lo, hi] = needed_window(cfg, n);
    const long grid_lo = std::max(lo, model.first_grid_index());
    const long grid_hi = std::min(hi, model.last_grid_index());
    const SamplePath path = simulate_window(model, grid_lo, grid_hi);
    const EstimationResult est = estimate_all(path, cfg.estimator);
    record.h_hat = est.h_hat;
    record.alpha_hat = est.alpha_hat;
    record.v_beta1 = est.v_values.at({n, cfg.estimator.beta1});
    record.v_beta2 = est.v_values.at({n, cfg.estimator.beta2});
    record.upsilon = est.counts.at(n);
    record.guard_hits = est.guard_hits;
  } catch (const std::exception& e) {
    record.failed = true;
    record.fail_reason = e.what();
    record.h_hat = std::numeric_limits<double>::quiet_NaN();
    record.alpha_hat = std::numeric_limits<double>::quiet_NaN();
    record.v_beta1 = std::numeric_limits<double>::quiet_NaN();
    record.v_beta2 = std::numeric_limits<double>::quiet_NaN();
  }
  try {
    if (cfg.model.alpha == 2.0) {
      record.d_n_theoretical =
          rate_dn_gaussian(n, record.h_true_at_t0, cfg.estimator.gamma);
    } else {
      record.d_n_theoretical =
          rate_dn_stable(n, cfg.model.alpha, record.h_true_at_t0,
                         cfg.estimator.gamma,
                         cfg.estimator.filter.vanishing_order);
    }
  } catch (const error&) {
    record.d_n_theoretical = std::numeric_limits<double>::quiet_NaN();
  }
  const auto finished = std::chrono::steady_clock::now();
  record.wall_ms =
      std::chrono::duration<double, std::milli>(finished - started).count();
  return record;
}

} // namespace

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::size_t jobs =
      cfg.n_values.size() * static_cast<std::size_t>(cfg.replicates);
  std::vector<ExperimentRecord> records(jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t job = next.fetch_add(1);
      if (job >= jobs) {
        return;
      }
      const int n =
          cfg.n_values[job / static_cast<std::size_t>(cfg.replicates)];
      const int replicate =
          static_cast<int>(job % static_cast<std::size_t>(cfg.replicates));
      records[job] = run_one(cfg, n, replicate);
    }
  };
  const int thread_count =
      std::max(1, std::min<int>(cfg.workers, static_cast<int>(jobs)));
  if (thread_count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(thread_count));
    for (int i = 0; i < thread_count; ++i) {
      pool.emplace_back(worker);
    }
    for (std::thread& t : pool) {
      t.join();
    }
  }
  return records;
}

ExperimentSummary summarize(const ExperimentConfig& cfg,
                            const std::vector<ExperimentRecord>& records) {
  ExperimentSummary summary;
  for (int n : cfg.n_values) {
    SummaryRow row;
    row.n = n;
    double sum_h = 0.0, sum_h2 = 0.0, sum_a = 0.0, sum_a2 = 0.0;
    for (const ExperimentRecord& r : records) {
      if (r.n != n || r.failed) continue;
      ++row.valid;
      const double dh = r.h_hat - r.h_true_at_t0;
      const double da = r.alpha_hat - r.alpha_true;
      sum_h += dh;
      sum_h2 += dh * dh;
      sum_a += da;
      sum_a2 += da * da;
    }
    if (row.valid > 0) {
      row.bias_h = sum_h / row.valid;
      row.rmse_h = std::sqrt(sum_h2 / row.valid);
      row.bias_alpha = sum_a / row.valid;
      row.rmse_alpha = std::sqrt(sum_a2 / row.valid);
    } else {
      row.bias_h = row.rmse_h = row.bias_alpha = row.rmse_alpha =
          std::numeric_limits<double>::quiet_NaN();
    }
    summary.per_n.push_back(row);
  }
  // log2-log2 regression of RMSE(H) against n.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  long m = 0;
  for (const SummaryRow& row : summary.per_n) {
    if (row.valid == 0 || !(row.rmse_h > 0.0)) continue;
    const double x = std::log2(static_cast<double>(row.n));
    const double y = std::log2(row.rmse_h);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  summary.empirical_log2_rmse_slope =
      (m >= 2) ? (m * sxy - sx * sy) / (m * sxx - sx * sx)
               : std::numeric_limits<double>::quiet_NaN();
  try {
    const double h_true = cfg.model.hurst(cfg.estimator.t0);
    summary.theoretical_rate_exponent =
        cfg.model.alpha == 2.0
            ? rate_exponent_gaussian(h_true, cfg.estimator.gamma)
            : rate_exponent_stable(cfg.model.alpha, h_true,
                                   cfg.estimator.gamma,
                                   cfg.estimator.filter.vanishing_order);
  } catch (const error&) {
    summary.theoretical_rate_exponent =
        std::numeric_limits<double>::quiet_NaN();
  }
  return summary;
}

std::string record_to_csv(const ExperimentRecord& r) {
  std::ostringstream out;
  out << r.n << ',' << r.replicate << ',' << r.seed_used << ','
      << fmt(r.h_true_at_t0) << ',' << fmt(r.h_hat) << ','
      << fmt(r.alpha_true) << ',' << fmt(r.alpha_hat) << ','
      << fmt(r.v_beta1) << ',' << fmt(r.v_beta2) << ',' << r.upsilon << ','
      << r.guard_hits << ',' << fmt(r.d_n_theoretical) << ','
      << fmt(r.wall_ms) << ',' << (r.failed ? 1 : 0);
  return out.str();
}

void write_experiment_csv(std::ostream& out, const ExperimentConfig& cfg,
                          const std::vector<ExperimentRecord>& records) {
  out << "n,replicate,seed_used,H_true_at_t0,H_hat,alpha_true,alpha_hat,"
         "V_beta1,V_beta2,upsilon,guard_hits,d_n_theoretical,wall_ms,failed\n";
  for (const ExperimentRecord& r : records) {
    out << record_to_csv(r) << '\n';
  }
  const ExperimentSummary summary = summarize(cfg, records);
  for (const SummaryRow& row : summary.per_n) {
    out << "# n=" << row.n << " valid=" << row.valid
        << " bias_H=" << fmt(row.bias_h) << " rmse_H=" << fmt(row.rmse_h)
        << " bias_alpha=" << fmt(row.bias_alpha)
        << " rmse_alpha=" << fmt(row.rmse_alpha) << '\n';
  }
  out << "# empirical_log2_rmse_slope = "
      << fmt(summary.empirical_log2_rmse_slope) << '\n';
  out << "# theoretical_rate_exponent = "
      << fmt(summary.theoretical_rate_exponent) << '\n';
}

std::vector<ExperimentRecord> parse_experiment_csv(std::istream& in) {
  std::vector<ExperimentRecord> records;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (first) {
      first = false;
      if (line.rfind("n,replicate", 0) == 0) continue;
    }
    std::istringstream row(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) {
      fields.push_back(field);
    }
    if (fields.size() != 14) {
      throw config_error("experiment CSV: expected 14 fields, got " +
                         std::to_string(fields.size()) + " in: " + line);
    }
    ExperimentRecord r;
    r.n = std::stoi(fields[0]);
    r.replicate = std::stoi(fields[1]);
    r.seed_used = std::stoull(fields[2]);
    r.h_true_at_t0 = std::stod(fields[3]);
    r.h_hat = std::stod(fields[4]);
    r.alpha_true = std::stod(fields[5]);
    r.alpha_hat = std::stod(fields[6]);
    r.v_beta1 = std::stod(fields[7]);
    r.v_beta2 = std::stod(fields[8]);
    r.upsilon = std::stol(fields[9]);
    r.guard_hits = std::stol(fields[10]);
    r.d_n_theoretical = std::stod(fields[11]);
    r.wall_ms = std::stod(fields[12]);
    r.failed = fields[13] == "1";
    records.push_back(r);
  }
  return records;
}

namespace {

HurstFunction hurst_from_config(const ConfigFile& cfg) {
  if (!cfg.has("model", "hurst")) {
    return HurstFunction::constant(cfg.get_double_or("model", "h_const", 0.5));
  }
  // An explicit kind makes its parameters mandatory; lookups name the
  // missing field.
  const std::string kind = cfg.get_string("model", "hurst");
  if (kind == "constant") {
    return HurstFunction::constant(cfg.get_double("model", "h_const"));
  }
  if (kind == "affine") {
    const double intercept = cfg.get_double("model", "h_intercept");
    const double slope = cfg.get_double("model", "h_slope");
    const double lo = cfg.get_double("model", "h_lo");
    const double hi = cfg.get_double("model", "h_hi");
    return HurstFunction::affine_clipped(intercept, slope, lo, hi);
  }
  if (kind == "logistic") {
    const double lo = cfg.get_double("model", "h_lo");
    const double hi = cfg.get_double("model", "h_hi");
    const double rate = cfg.get_double("model", "h_rate");
    const double center = cfg.get_double("model", "h_center");
    return HurstFunction::logistic(lo, hi, rate, center);
  }
  if (kind == "sinusoidal") {
    const double mid = cfg.get_double("model", "h_mid");
    const double amplitude = cfg.get_double("model", "h_amplitude");
    const double frequency = cfg.get_double("model", "h_frequency");
    const double phase = cfg.get_double("model", "h_phase");
    return HurstFunction::sinusoidal(mid, amplitude, frequency, phase);
  }
  throw config_error(cfg.origin() + ": unknown hurst kind '" + kind +
                     "' in [model] (want constant, affine, logistic or "
                     "sinusoidal)");
}

FilterSeq filter_from_config(const ConfigFile& cfg) {
  if (cfg.has("estimator", "filter_coefficients")) {
    FilterSeq filter;
    const std::vector<double> coef =
        cfg.get_double_list("estimator", "filter_coefficients");
    filter.coefficients = coef;
    filter.vanishing_order =
        static_cast<int>(cfg.get_long_or("estimator", "filter_L", 1));
    if (!moments_ok(filter)) {
      throw config_error(cfg.origin() +
                         ": filter_coefficients do not have the declared "
                         "number of vanishing moments (filter_L)");
    }
    return filter;
  }
  return binomial_filter(
      static_cast<int>(cfg.get_long_or("estimator", "filter_L", 2)));
}

} // namespace

ModelSpec model_from_config(const ConfigFile& cfg) {
  ModelSpec model;
  model.alpha = cfg.get_double_or("model", "alpha", 2.0);
  model.hurst = hurst_from_config(cfg);
  model.t_min = cfg.get_double_or("model", "domain_min", 0.0);
  model.t_max = cfg.get_double_or("model", "domain_max", 1.0);
  model.n = static_cast<int>(cfg.get_long_or("model", "n", 1024));
  model.truncation_radius =
      cfg.get_double_or("model", "truncation_radius", 8.0);
  model.refinement = static_cast<int>(cfg.get_long_or("model", "refinement", 16));
  model.seed = cfg.get_u64_or("model", "seed", 1);
  return model;
}

EstimatorConfig estimator_from_config(const ConfigFile& cfg) {
  EstimatorConfig est;
  est.t0 = cfg.get_double_or("estimator", "t0", 0.5);
  est.gamma = cfg.get_double_or("estimator", "gamma", 0.8);
  est.beta = cfg.get_double_or("estimator", "beta", -0.3);
  est.beta1 = cfg.get_double_or("estimator", "beta1", -0.4);
  est.beta2 = cfg.get_double_or("estimator", "beta2", -0.2);
  est.filter = filter_from_config(cfg);
  est.zero_guard = cfg.get_double_or("estimator", "zero_guard", 1e-300);
  return est;
}

ExperimentConfig experiment_from_config(const ConfigFile& cfg) {
  ExperimentConfig exp;
  exp.model = model_from_config(cfg);
  exp.estimator = estimator_from_config(cfg);
  if (cfg.has("experiment", "n_values")) {
    exp.n_values = cfg.get_int_list("experiment", "n_values");
  } else {
    exp.n_values = {exp.model.n};
  }
  exp.replicates =
      static_cast<int>(cfg.get_long_or("experiment", "replicates", 1));
  exp.seed = cfg.get_u64_or("experiment", "seed",
                            cfg.get_u64_or("model", "seed", 1));
  exp.workers = static_cast<int>(cfg.get_long_or("experiment", "workers", 1));
  exp.out_path =
      cfg.get_string_or("experiment", "out", "experiment.csv");
  return exp;
}

} // namespace mfsm
