#include "mfsm/filters.hpp"

#include <cmath>
#include <cstdint>
#include <string>

#include "mfsm/errors.hpp"

namespace mfsm {

FilterSeq binomial_filter(int vanishing_order) {
  if (vanishing_order < 0) {
    throw domain_error("binomial_filter: vanishing order must be >= 0");
  }
  if (vanishing_order > 20) {
    throw config_error(
        "binomial_filter: order " + std::to_string(vanishing_order) +
        " exceeds the exact-coefficient capacity (L <= 20)");
  }
  const int order = vanishing_order + 1;  // K
  FilterSeq filter;
  filter.vanishing_order = vanishing_order;
  filter.coefficients.resize(static_cast<std::size_t>(order) + 1);
  std::uint64_t binom = 1;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) {
      binom = binom * static_cast<std::uint64_t>(order - k + 1) /
              static_cast<std::uint64_t>(k);
    }
    const bool negative = ((order - k) % 2) != 0;
    filter.coefficients[static_cast<std::size_t>(k)] =
        negative ? -static_cast<double>(binom) : static_cast<double>(binom);
  }
  return filter;
}

std::vector<double> verify_moments(const FilterSeq& filter) {
  const int count = filter.vanishing_order + 2;
  std::vector<double> sums(static_cast<std::size_t>(count), 0.0);
  for (int q = 0; q < count; ++q) {
    double acc = 0.0;
    for (std::size_t k = 0; k < filter.coefficients.size(); ++k) {
      // 0^0 = 1 by convention.
      const double kq = (q == 0) ? 1.0
                                 : std::pow(static_cast<double>(k),
                                            static_cast<double>(q));
      acc += kq * filter.coefficients[k];
    }
    sums[static_cast<std::size_t>(q)] = acc;
  }
  return sums;
}

bool moments_ok(const FilterSeq& filter, double tol) {
  double scale = 0.0;
  for (double a : filter.coefficients) scale += std::fabs(a);
  if (scale == 0.0) {
    return false;
  }
  const std::vector<double> sums = verify_moments(filter);
  for (int q = 0; q <= filter.vanishing_order; ++q) {
    if (std::fabs(sums[static_cast<std::size_t>(q)]) > tol * scale) {
      return false;
    }
  }
  return std::fabs(sums.back()) > tol * scale;
}

std::vector<double> discrete_variations(const SamplePath& path,
                                        const FilterSeq& filter,
                                        const std::vector<long>& indices) {
  std::vector<double> out;
  out.reserve(indices.size());
  const int order = filter.last_index();
  for (long k : indices) {
    if (!path.contains(k) || !path.contains(k + order)) {
      throw config_error("discrete_variations: index k=" + std::to_string(k) +
                         " needs samples up to " + std::to_string(k + order) +
                         " outside the stored window");
    }
    double acc = 0.0;
    for (int p = 0; p <= order; ++p) {
      acc += filter.coefficients[static_cast<std::size_t>(p)] *
             path.at_index(k + p);
    }
    out.push_back(acc);
  }
  return out;
}

} // namespace mfsm
