#ifndef MFSM_FILTERS_HPP
#define MFSM_FILTERS_HPP

#include <vector>

#include "mfsm/path.hpp"

namespace mfsm {

/// Coefficient sequence a_0..a_K with L vanishing moments:
/// sum_k k^q a_k = 0 for q = 0..L (0^0 = 1) and sum_k k^{L+1} a_k != 0.
struct FilterSeq {
  int vanishing_order = 0;  // L
  std::vector<double> coefficients;

  int last_index() const {
    return static_cast<int>(coefficients.size()) - 1;  // K
  }
};

/// The order-(L+1) difference filter: K = L+1,
/// a_k = (-1)^{L+1-k} (L+1)! / (k! (L+1-k)!). Exact up to L = 20.
FilterSeq binomial_filter(int vanishing_order);

/// Moment sums sum_k k^q a_k for q = 0..L+1 (reports only, caller decides).
std::vector<double> verify_moments(const FilterSeq& filter);

/// True when the first L+1 moment sums vanish within tol * sum|a_k| and the
/// (L+1)-th does not.
bool moments_ok(const FilterSeq& filter, double tol = 1e-10);

/// Variations D_k = sum_p a_p X((k+p)/n), one per requested k, in order.
std::vector<double> discrete_variations(const SamplePath& path,
                                        const FilterSeq& filter,
                                        const std::vector<long>& indices);

} // namespace mfsm

#endif
