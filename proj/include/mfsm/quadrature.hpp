#ifndef MFSM_QUADRATURE_HPP
#define MFSM_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <utility>

namespace mfsm::quad {

// 15-point Kronrod rule with embedded 7-point Gauss rule (positive nodes;
// even indices are the Gauss points).
inline constexpr double kGK15Nodes[8] = {
    0.99145537112081263921, 0.94910791234275852453, 0.86486442335976907279,
    0.74153118559939443986, 0.58608723546769113029, 0.40584515137739716691,
    0.20778495500789846760, 0.0,
};
inline constexpr double kGK15Weights[8] = {
    0.02293532201052922496, 0.06309209262997855329, 0.10479001032225018384,
    0.14065325971552591875, 0.16900472663926790283, 0.19035057806478540991,
    0.20443294007529889241, 0.20948214108472782801,
};
inline constexpr double kGauss7Weights[4] = {
    0.12948496616886969327, 0.27970539148927666790, 0.38183005050511894495,
    0.41795918367346938776,
};

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

template <class F>
Estimate gk15(F&& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double kronrod = 0.0;
  double gauss = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double offset = half * kGK15Nodes[i];
    double fsum = f(center + offset);
    if (i < 7) {
      fsum += f(center - offset);
    }
    kronrod += kGK15Weights[i] * fsum;
    if (i % 2 == 1) {
      gauss += kGauss7Weights[i / 2] * fsum;
    }
  }
  Estimate est;
  est.value = kronrod * half;
  est.error = std::fabs((kronrod - gauss) * half);
  return est;
}

namespace detail {

template <class F>
Estimate adaptive_impl(F& f, double a, double b, double tol, int depth,
                       int max_depth) {
  const Estimate whole = gk15(f, a, b);
  if (whole.error <= tol || depth >= max_depth ||
      b - a < 1e-15 * (std::fabs(a) + std::fabs(b))) {
    return whole;
  }
  const double mid = 0.5 * (a + b);
  const Estimate left = adaptive_impl(f, a, mid, 0.5 * tol, depth + 1,
                                      max_depth);
  const Estimate right = adaptive_impl(f, mid, b, 0.5 * tol, depth + 1,
                                       max_depth);
  return {left.value + right.value, left.error + right.error};
}

} // namespace detail

/// Adaptive GK15 on [a, b] for an integrand with at most mild interior
/// roughness. `tol` is an absolute error budget; the achieved estimate is
/// returned alongside the value.
template <class F>
Estimate adaptive(F&& f, double a, double b, double tol, int max_depth = 52) {
  if (!(b > a)) {
    return {0.0, 0.0};
  }
  return detail::adaptive_impl(f, a, b, tol, 0, max_depth);
}

/// Integral of f over (0, length] when f(w) ~ w^c as w -> 0+ with c > -1
/// (c < 0: unbounded endpoint; 0 < c < 3: endpoint cusp). The substitution
/// w = z^kappa with kappa*(min(c,0)+1) >= 3 and kappa*c >= 3 for cusps makes
/// the transformed integrand smooth enough for the adaptive rule.
template <class F>
Estimate from_singular_endpoint(F&& f, double length, double c, double tol,
                                int max_depth = 52) {
  int kappa = 1;
  if (c < 0.0) {
    kappa = static_cast<int>(std::ceil(3.0 / (1.0 + c)));
  } else if (c < 3.0) {
    kappa = static_cast<int>(std::ceil(3.0 / std::max(c, 0.05)));
  }
  kappa = std::min(kappa, 64);
  if (kappa <= 1) {
    return adaptive(std::forward<F>(f), 0.0, length, tol, max_depth);
  }
  const double kd = static_cast<double>(kappa);
  auto transformed = [&f, kd](double z) {
    const double w = std::pow(z, kd);
    if (w < 1e-300) {
      return 0.0;  // integrand vanishes at least like z^2 here
    }
    return f(w) * kd * std::pow(z, kd - 1.0);
  };
  return adaptive(transformed, 0.0, std::pow(length, 1.0 / kd), tol,
                  max_depth);
}

} // namespace mfsm::quad

#endif
