#ifndef MFSM_EXPERIMENT_HPP
#define MFSM_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mfsm/config.hpp"
#include "mfsm/estim.hpp"
#include "mfsm/sim.hpp"

namespace mfsm {

/// Monte Carlo experiment: for every resolution in n_values and replicate r,
/// simulate one path with the stream derived from (seed, n, r) and run both
/// estimators at t0.
struct ExperimentConfig {
  ModelSpec model;
  EstimatorConfig estimator;
  std::vector<int> n_values;
  int replicates = 1;
  std::uint64_t seed = 1;
  int workers = 1;
  std::string out_path = "experiment.csv";

  void validate() const;
};

struct ExperimentRecord {
  int n = 0;
  int replicate = 0;
  std::uint64_t seed_used = 0;
  double h_true_at_t0 = 0.0;
  double h_hat = 0.0;
  double alpha_true = 0.0;
  double alpha_hat = 0.0;
  double v_beta1 = 0.0;
  double v_beta2 = 0.0;
  long upsilon = 0;
  long guard_hits = 0;
  double d_n_theoretical = 0.0;
  double wall_ms = 0.0;     // diagnostic; varies run to run
  bool failed = false;
  std::string fail_reason;  // not serialized in the CSV body
};

struct SummaryRow {
  int n = 0;
  long valid = 0;
  double bias_h = 0.0;
  double rmse_h = 0.0;
  double bias_alpha = 0.0;
  double rmse_alpha = 0.0;
};

struct ExperimentSummary {
  std::vector<SummaryRow> per_n;
  double empirical_log2_rmse_slope = 0.0;  // regression of log2 RMSE(H) on log2 n
  double theoretical_rate_exponent = 0.0;  // n-exponent of d_n
};

/// Deterministic in (config, seed): records are identical for any worker
/// count except the wall_ms timing column.
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg);

ExperimentSummary summarize(const ExperimentConfig& cfg,
                            const std::vector<ExperimentRecord>& records);

/// CSV schema, in order:
/// n,replicate,seed_used,H_true_at_t0,H_hat,alpha_true,alpha_hat,
/// V_beta1,V_beta2,upsilon,guard_hits,d_n_theoretical,wall_ms,failed
/// followed by '#'-prefixed summary footer lines.
void write_experiment_csv(std::ostream& out,
                          const ExperimentConfig& cfg,
                          const std::vector<ExperimentRecord>& records);

/// Parses the data rows back (header and '#' lines skipped).
std::vector<ExperimentRecord> parse_experiment_csv(std::istream& in);

/// Serializes one record as a CSV row (no newline).
std::string record_to_csv(const ExperimentRecord& record);

/// Builders from the flat config format ([model], [estimator], [experiment]).
ModelSpec model_from_config(const ConfigFile& cfg);
EstimatorConfig estimator_from_config(const ConfigFile& cfg);
ExperimentConfig experiment_from_config(const ConfigFile& cfg);

} // namespace mfsm

#endif
