#include "mfsm/sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mfsm/errors.hpp"
#include "mfsm/filters.hpp"
#include "mfsm/oracle.hpp"
#include "mfsm/rng.hpp"

namespace mfsm {

long ModelSpec::first_grid_index() const {
  return static_cast<long>(std::ceil(t_min * n - 1e-9));
}

long ModelSpec::last_grid_index() const {
  return static_cast<long>(std::floor(t_max * n + 1e-9));
}

void ModelSpec::validate() const {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw config_error("model: alpha must lie in (0, 2], got " +
                       std::to_string(alpha));
  }
  if (n < 2) {
    throw config_error("model: need n >= 2 samples per unit");
  }
  if (refinement < 1) {
    throw config_error("model: refinement must be >= 1");
  }
  if (!(t_max > t_min)) {
    throw config_error("model: empty domain interval");
  }
  const double min_radius = 2.0 * ((t_max - t_min) + 1.0);
  if (truncation_radius < min_radius) {
    throw config_error("model: truncation radius " +
                       std::to_string(truncation_radius) +
                       " too small for the domain; need at least " +
                       std::to_string(min_radius));
  }
  hurst.validate(t_min, t_max);
}

namespace {

// Cell geometry: midpoints s_j = (j + 0.5) * delta - R_eff with
// R_eff = base * delta (the radius is rounded up to a whole number of
// cells), so every |t_i - s_j| and |s_j| lies on the half-offset lattice
// {(r + 0.5) * delta, r >= 0} and never reaches a kernel singularity.
struct CellGrid {
  double delta = 0.0;
  long base = 0;   // number of cells left of zero
  long count = 0;  // total number of cells

  // r with |t_i - s_j| = (r + 0.5) delta, where q = i*m + base - j.
  static long time_lattice(long q) { return q >= 1 ? q - 1 : -q; }
  // r with |s_j| = (r + 0.5) delta, where q = j - base.
  static long cell_lattice(long q) { return q >= 0 ? q : -q - 1; }
};

CellGrid make_grid(const ModelSpec& spec) {
  CellGrid grid;
  const double cells_per_unit = static_cast<double>(spec.n) * spec.refinement;
  grid.delta = 1.0 / cells_per_unit;
  grid.base = static_cast<long>(
      std::ceil(spec.truncation_radius * cells_per_unit - 1e-9));
  const long right = static_cast<long>(
      std::ceil(std::max(spec.t_max, 0.0) * cells_per_unit - 1e-9));
  grid.count = 2 * grid.base + right;
  return grid;
}

// One measure realization per (seed); cell j consumes exactly two uniforms,
// so the draw sequence is independent of the evaluation window.
std::vector<double> draw_measure(const ModelSpec& spec, const CellGrid& grid) {
  SplitMix64 rng(spec.seed);
  const double cell_scale = std::pow(grid.delta, 1.0 / spec.alpha);
  std::vector<double> increments(static_cast<std::size_t>(grid.count));
  for (long j = 0; j < grid.count; ++j) {
    increments[static_cast<std::size_t>(j)] =
        sas_variate(spec.alpha, cell_scale, rng);
  }
  return increments;
}

// Brownian value at grid index i from the indicator kernel 1{0 < s < t}
// (the alpha = 2, H = 1/2 limit): a signed block sum of cell increments.
double brownian_value(const CellGrid& grid, const std::vector<double>& prefix,
                      long i, int m) {
  const long split = grid.base - 1;  // last cell with s_j < 0
  const long upto = i * static_cast<long>(m) + grid.base - 1;
  auto cum = [&prefix](long j) {
    if (j < 0) return 0.0;
    const long last = static_cast<long>(prefix.size()) - 1;
    return prefix[static_cast<std::size_t>(std::min(j, last))];
  };
  return cum(upto) - cum(split);
}

} // namespace

SamplePath simulate_window(const ModelSpec& spec, long first_index,
                           long last_index) {
  spec.validate();
  if (first_index < spec.first_grid_index() ||
      last_index > spec.last_grid_index() || first_index > last_index) {
    throw config_error("simulate_window: requested indices [" +
                       std::to_string(first_index) + ", " +
                       std::to_string(last_index) +
                       "] fall outside the model domain grid [" +
                       std::to_string(spec.first_grid_index()) + ", " +
                       std::to_string(spec.last_grid_index()) + "]");
  }
  const CellGrid grid = make_grid(spec);
  const std::vector<double> dm = draw_measure(spec, grid);
  const long m = spec.refinement;
  const double inv_alpha = 1.0 / spec.alpha;

  SamplePath path;
  path.n = spec.n;
  path.first_index = first_index;
  path.alpha = spec.alpha;
  path.seed = spec.seed;
  path.values.assign(static_cast<std::size_t>(last_index - first_index + 1),
                     0.0);

  // Exponents per requested grid point.
  std::vector<double> exponent(path.values.size());
  bool all_zero_exponent = true;
  bool constant_exponent = true;
  for (std::size_t idx = 0; idx < exponent.size(); ++idx) {
    const long i = first_index + static_cast<long>(idx);
    const double t = static_cast<double>(i) / spec.n;
    exponent[idx] = spec.hurst(t) - inv_alpha;
    if (exponent[idx] != 0.0) all_zero_exponent = false;
    if (exponent[idx] != exponent[0]) constant_exponent = false;
  }

  // Largest lattice offset that can appear in the kernel tables.
  const long max_pos_i = std::max(last_index, 0L);
  const long min_neg_i = std::min(first_index, 0L);
  const long table_size =
      std::max({max_pos_i * m + grid.base, grid.count - min_neg_i * m -
                grid.base, grid.count - grid.base, grid.base}) + 2;

  std::vector<double> prefix;  // built on demand for Brownian evaluations
  auto ensure_prefix = [&]() {
    if (!prefix.empty()) return;
    prefix.resize(dm.size());
    double acc = 0.0;
    for (std::size_t j = 0; j < dm.size(); ++j) {
      acc += dm[j];
      prefix[j] = acc;
    }
  };

  if (all_zero_exponent) {
    // Constant H = 1/alpha. Heavy-tailed case: the kernel vanishes
    // identically, so the path is exactly zero. Gaussian case: Brownian
    // motion via the indicator kernel.
    if (spec.alpha == 2.0) {
      ensure_prefix();
      for (std::size_t idx = 0; idx < path.values.size(); ++idx) {
        const long i = first_index + static_cast<long>(idx);
        path.values[idx] = brownian_value(grid, prefix, i, spec.refinement);
      }
    }
    return path;
  }

  if (constant_exponent) {
    // Shared power table over the offset lattice; the anchored term
    // sum_j |s_j|^a dM_j is computed once.
    const double a = exponent[0];
    std::vector<double> table(static_cast<std::size_t>(table_size));
    for (long r = 0; r < table_size; ++r) {
      table[static_cast<std::size_t>(r)] =
          std::pow((static_cast<double>(r) + 0.5) * grid.delta, a);
    }
    double anchor = 0.0;
    for (long j = 0; j < grid.count; ++j) {
      anchor +=
          table[static_cast<std::size_t>(CellGrid::cell_lattice(j - grid.base))] *
          dm[static_cast<std::size_t>(j)];
    }
    for (std::size_t idx = 0; idx < path.values.size(); ++idx) {
      const long i = first_index + static_cast<long>(idx);
      if (i == 0) {
        path.values[idx] = 0.0;  // kernel vanishes identically at t = 0
        continue;
      }
      const long shift = i * m + grid.base;
      double acc = 0.0;
      for (long j = 0; j < grid.count; ++j) {
        acc += table[static_cast<std::size_t>(CellGrid::time_lattice(shift - j))] *
               dm[static_cast<std::size_t>(j)];
      }
      path.values[idx] = acc - anchor;
    }
    return path;
  }

  // Varying exponent: shared log-magnitude table, two exponentials per cell.
  std::vector<double> log_table(static_cast<std::size_t>(table_size));
  for (long r = 0; r < table_size; ++r) {
    log_table[static_cast<std::size_t>(r)] =
        std::log((static_cast<double>(r) + 0.5) * grid.delta);
  }
  for (std::size_t idx = 0; idx < path.values.size(); ++idx) {
    const long i = first_index + static_cast<long>(idx);
    const double a = exponent[idx];
    if (i == 0) {
      path.values[idx] = 0.0;
      continue;
    }
    if (a == 0.0) {
      // Isolated exponent-zero point: Brownian limit for the Gaussian case,
      // vanishing kernel otherwise.
      if (spec.alpha == 2.0) {
        ensure_prefix();
        path.values[idx] =
            brownian_value(grid, prefix, i, spec.refinement);
      } else {
        path.values[idx] = 0.0;
      }
      continue;
    }
    const long shift = i * m + grid.base;
    double acc = 0.0;
    for (long j = 0; j < grid.count; ++j) {
      const double lt = log_table[static_cast<std::size_t>(
          CellGrid::time_lattice(shift - j))];
      const double ls = log_table[static_cast<std::size_t>(
          CellGrid::cell_lattice(j - grid.base))];
      acc += (std::exp(a * lt) - std::exp(a * ls)) *
             dm[static_cast<std::size_t>(j)];
    }
    path.values[idx] = acc;
  }
  return path;
}

SamplePath simulate_lmsm(const ModelSpec& spec) {
  if (!(spec.alpha < 2.0)) {
    throw config_error(
        "simulate_lmsm: alpha must be < 2; use simulate_mbm for the "
        "Gaussian case");
  }
  return simulate_window(spec, spec.first_grid_index(),
                         spec.last_grid_index());
}

SamplePath simulate_mbm(const ModelSpec& spec) {
  if (spec.alpha != 2.0) {
    throw config_error("simulate_mbm: alpha must equal 2, got " +
                       std::to_string(spec.alpha));
  }
  return simulate_window(spec, spec.first_grid_index(),
                         spec.last_grid_index());
}

SamplePath simulate_fbm_exact(double hurst, int n, int count,
                              std::uint64_t seed) {
  if (!(hurst > 0.0 && hurst < 1.0)) {
    throw config_error("simulate_fbm_exact: H must lie in (0, 1)");
  }
  if (n < 1 || count < 2) {
    throw config_error("simulate_fbm_exact: need n >= 1 and count >= 2");
  }
  if (count > 8193) {
    throw config_error(
        "simulate_fbm_exact: count " + std::to_string(count) +
        " exceeds the dense-factorization capacity (8193 grid points)");
  }
  // Marginal normalization matching the moving-average convention.
  oracle::KernelSpec kernel;
  kernel.alpha = 2.0;
  kernel.hurst_at_t0 = hurst;
  kernel.filter = binomial_filter(0);
  const double m_single = oracle::m_t0(kernel);
  const double c = m_single * m_single;

  const int dim = count - 1;  // X(0) = 0 handled separately
  const double two_h = 2.0 * hurst;
  std::vector<double> cov(static_cast<std::size_t>(dim) * dim);
  for (int i = 0; i < dim; ++i) {
    const double ti = static_cast<double>(i + 1) / n;
    for (int j = 0; j <= i; ++j) {
      const double tj = static_cast<double>(j + 1) / n;
      const double value = c * (std::pow(ti, two_h) + std::pow(tj, two_h) -
                                std::pow(ti - tj, two_h));
      cov[static_cast<std::size_t>(i) * dim + j] = value;
    }
  }
  // In-place lower Cholesky.
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j <= i; ++j) {
      double sum = cov[static_cast<std::size_t>(i) * dim + j];
      for (int k = 0; k < j; ++k) {
        sum -= cov[static_cast<std::size_t>(i) * dim + k] *
               cov[static_cast<std::size_t>(j) * dim + k];
      }
      if (i == j) {
        if (!(sum > 0.0)) {
          throw numeric_error(
              "simulate_fbm_exact: covariance factorization lost positive "
              "definiteness at pivot " + std::to_string(i));
        }
        cov[static_cast<std::size_t>(i) * dim + j] = std::sqrt(sum);
      } else {
        cov[static_cast<std::size_t>(i) * dim + j] =
            sum / cov[static_cast<std::size_t>(j) * dim + j];
      }
    }
  }
  SplitMix64 rng(seed);
  std::vector<double> normals(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    normals[static_cast<std::size_t>(i)] = sas_variate(2.0, M_SQRT1_2, rng);
  }
  SamplePath path;
  path.n = n;
  path.first_index = 0;
  path.alpha = 2.0;
  path.seed = seed;
  path.values.assign(static_cast<std::size_t>(count), 0.0);
  for (int i = 0; i < dim; ++i) {
    double acc = 0.0;
    for (int k = 0; k <= i; ++k) {
      acc += cov[static_cast<std::size_t>(i) * dim + k] *
             normals[static_cast<std::size_t>(k)];
    }
    path.values[static_cast<std::size_t>(i + 1)] = acc;
  }
  return path;
}

} // namespace mfsm
