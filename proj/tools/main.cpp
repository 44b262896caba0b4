#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mfsm/config.hpp"
#include "mfsm/errors.hpp"
#include "mfsm/estim.hpp"
#include "mfsm/experiment.hpp"
#include "mfsm/oracle.hpp"
#include "mfsm/path.hpp"
#include "mfsm/sim.hpp"
#include "mfsm/specfun.hpp"

namespace {

using nlohmann::json;

struct CommonFlags {
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int workers = 0;
};

mfsm::ConfigFile load_config(const std::string& path) {
  if (path.empty()) {
    return mfsm::ConfigFile::parse_string("", "<defaults>");
  }
  return mfsm::ConfigFile::parse_file(path);
}

int cmd_simulate(const CommonFlags& flags, int n_override,
                 double alpha_override) {
  mfsm::ConfigFile cfg = load_config(flags.config_path);
  mfsm::ModelSpec model = mfsm::model_from_config(cfg);
  if (n_override > 0) model.n = n_override;
  if (alpha_override > 0.0) model.alpha = alpha_override;
  if (flags.seed_set) model.seed = flags.seed;
  const std::string out =
      flags.out_path.empty() ? std::string("path.txt") : flags.out_path;
  const mfsm::SamplePath path = model.alpha == 2.0 ? mfsm::simulate_mbm(model)
                                                   : mfsm::simulate_lmsm(model);
  mfsm::write_path_file(path, out);
  std::cout << "n=" << path.n << " samples=" << path.values.size()
            << " seed=" << path.seed << " checksum=" << std::hex
            << mfsm::path_checksum(path) << std::dec << " out=" << out
            << '\n';
  return 0;
}

json v_values_to_json(const mfsm::EstimationResult& result) {
  json out = json::object();
  for (const auto& [key, value] : result.v_values) {
    out[std::to_string(key.first) + ":" + std::to_string(key.second)] = value;
  }
  return out;
}

int cmd_estimate(const CommonFlags& flags, const std::string& path_file) {
  mfsm::ConfigFile cfg = load_config(flags.config_path);
  const mfsm::EstimatorConfig est = mfsm::estimator_from_config(cfg);
  const mfsm::SamplePath path = mfsm::read_path_file(path_file);
  const mfsm::EstimationResult result = mfsm::estimate_all(path, est);
  json out;
  out["H_hat"] = result.h_hat;
  out["alpha_hat"] = result.alpha_hat;
  out["V_values"] = v_values_to_json(result);
  json counts = json::object();
  for (const auto& [n, count] : result.counts) {
    counts[std::to_string(n)] = count;
  }
  out["counts"] = counts;
  out["guard_hits"] = result.guard_hits;
  if (std::isfinite(result.d_n_reported)) {
    out["d_n_reported"] = result.d_n_reported;
  } else {
    out["d_n_reported"] = nullptr;
  }
  const std::string line = out.dump();
  std::cout << line << '\n';
  if (!flags.out_path.empty()) {
    std::ofstream file(flags.out_path);
    if (!file) {
      throw mfsm::config_error("cannot open '" + flags.out_path +
                               "' for writing");
    }
    file << line << '\n';
  }
  return 0;
}

int cmd_experiment(const CommonFlags& flags) {
  mfsm::ConfigFile cfg = load_config(flags.config_path);
  mfsm::ExperimentConfig exp = mfsm::experiment_from_config(cfg);
  if (flags.seed_set) exp.seed = flags.seed;
  if (flags.workers > 0) exp.workers = flags.workers;
  if (!flags.out_path.empty()) exp.out_path = flags.out_path;
  const std::vector<mfsm::ExperimentRecord> records =
      mfsm::run_experiment(exp);
  std::ofstream out(exp.out_path);
  if (!out) {
    throw mfsm::config_error("cannot open '" + exp.out_path +
                             "' for writing");
  }
  mfsm::write_experiment_csv(out, exp, records);
  const mfsm::ExperimentSummary summary = mfsm::summarize(exp, records);
  for (const mfsm::SummaryRow& row : summary.per_n) {
    std::cout << "n=" << row.n << " valid=" << row.valid
              << " bias_H=" << row.bias_h << " rmse_H=" << row.rmse_h
              << " bias_alpha=" << row.bias_alpha
              << " rmse_alpha=" << row.rmse_alpha << '\n';
  }
  std::cout << "empirical_log2_rmse_slope=" << summary.empirical_log2_rmse_slope
            << " theoretical_rate_exponent=" << summary.theoretical_rate_exponent
            << '\n';
  std::cout << "wrote " << records.size() << " records to " << exp.out_path
            << '\n';
  return 0;
}

int cmd_oracle(const CommonFlags& flags, double alpha, double beta,
               double beta2, double hurst, int filter_order) {
  mfsm::oracle::KernelSpec kernel;
  kernel.alpha = alpha;
  kernel.hurst_at_t0 = hurst;
  kernel.filter = mfsm::binomial_filter(filter_order);
  const double m = mfsm::oracle::m_t0(kernel);
  std::ostringstream table;
  table.precision(12);
  table << "alpha=" << alpha << " H_t0=" << hurst
        << " filter_L=" << filter_order << '\n';
  table << "M_t0 = " << m << '\n';
  std::vector<double> betas{beta};
  if (beta2 < 0.0) betas.push_back(beta2);
  for (double b : betas) {
    const double quadrature = mfsm::oracle::m_t0_beta_quadrature(alpha, b, m);
    const double closed = mfsm::oracle::m_t0_beta_closed(alpha, b, m);
    const double rel = std::fabs(quadrature - closed) / closed;
    table << "beta=" << b << " M_beta_quadrature=" << quadrature
          << " M_beta_closed=" << closed << " relative_difference=" << rel
          << " C_beta=" << mfsm::specfun::c_beta(b) << '\n';
  }
  if (beta2 < 0.0) {
    const mfsm::specfun::ExponentPair pair(-beta, -beta2);
    const double lhs = mfsm::specfun::psi(
        pair, mfsm::oracle::m_t0_beta_closed(alpha, beta, m),
        mfsm::oracle::m_t0_beta_closed(alpha, beta2, m));
    const double residual = std::fabs(lhs - mfsm::specfun::h(pair, alpha));
    table << "fixed_point_residual = " << residual << '\n';
  }
  std::cout << table.str();
  if (!flags.out_path.empty()) {
    std::ofstream file(flags.out_path);
    if (!file) {
      throw mfsm::config_error("cannot open '" + flags.out_path +
                               "' for writing");
    }
    file << table.str();
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "mfsm: simulation and local regularity/stability estimation for "
      "multifractional Brownian and linear multifractional stable motion"};
  app.require_subcommand(1);

  CommonFlags flags;

  auto* sim = app.add_subcommand(
      "simulate", "generate a sample path and write the columnar path file");
  int sim_n = 0;
  double sim_alpha = 0.0;
  sim->add_option("--config", flags.config_path, "flat key=value config file");
  sim->add_option("--out", flags.out_path, "output path file");
  sim->add_option("--n", sim_n, "override samples per unit");
  sim->add_option("--alpha", sim_alpha, "override stability index");
  auto* sim_seed = sim->add_option("--seed", flags.seed, "override seed");

  sim->add_option("--workers", flags.workers,
                  "accepted everywhere; used by 'experiment'");

  auto* est = app.add_subcommand(
      "estimate", "estimate H(t0) and alpha from a stored path file");
  std::string path_file;
  est->add_option("--path", path_file, "columnar path file")->required();
  est->add_option("--config", flags.config_path,
                  "config file with an [estimator] section");
  est->add_option("--out", flags.out_path,
                  "also write the JSON result to this file");
  auto* est_seed = est->add_option("--seed", flags.seed,
                                   "accepted for interface uniformity");
  est->add_option("--workers", flags.workers,
                  "accepted everywhere; used by 'experiment'");

  auto* exp = app.add_subcommand(
      "experiment", "Monte Carlo experiment over resolutions and replicates");
  exp->add_option("--config", flags.config_path, "experiment config file");
  exp->add_option("--out", flags.out_path, "output CSV path");
  exp->add_option("--workers", flags.workers, "parallel workers");
  auto* exp_seed = exp->add_option("--seed", flags.seed, "override seed");

  auto* ora = app.add_subcommand(
      "oracle", "evaluate the limiting constants by quadrature and closed form");
  double ora_alpha = 2.0;
  double ora_beta = -0.3;
  double ora_beta2 = 0.0;
  double ora_hurst = 0.7;
  int ora_filter = 2;
  ora->add_option("--alpha", ora_alpha, "stability index in (0, 2]");
  ora->add_option("--beta", ora_beta, "moment exponent in (-1/2, 0)");
  ora->add_option("--beta2", ora_beta2,
                  "second exponent (enables the fixed-point residual)");
  ora->add_option("--H", ora_hurst, "local regularity H(t0)");
  ora->add_option("--filter-L", ora_filter, "binomial filter order");
  ora->add_option("--out", flags.out_path,
                  "also write the table to this file");
  auto* ora_seed = ora->add_option("--seed", flags.seed,
                                   "accepted for interface uniformity");
  ora->add_option("--workers", flags.workers,
                  "accepted everywhere; used by 'experiment'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  flags.seed_set = sim_seed->count() > 0 || exp_seed->count() > 0 ||
                   est_seed->count() > 0 || ora_seed->count() > 0;

  try {
    if (sim->parsed()) {
      return cmd_simulate(flags, sim_n, sim_alpha);
    }
    if (est->parsed()) {
      return cmd_estimate(flags, path_file);
    }
    if (exp->parsed()) {
      return cmd_experiment(flags);
    }
    if (ora->parsed()) {
      return cmd_oracle(flags, ora_alpha, ora_beta, ora_beta2, ora_hurst,
                        ora_filter);
    }
  } catch (const mfsm::error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
