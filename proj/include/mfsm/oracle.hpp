#ifndef MFSM_ORACLE_HPP
#define MFSM_ORACLE_HPP

#include <optional>

#include "mfsm/filters.hpp"
#include "mfsm/hurst.hpp"

namespace mfsm::oracle {

/// Kernel description for the limiting constants: stability index, local
/// regularity H(t0), variation filter, and (for local_scale with varying H)
/// the full H function.
struct KernelSpec {
  double alpha = 2.0;
  double hurst_at_t0 = 0.5;
  FilterSeq filter;
  std::optional<HurstFunction> hurst_function;

  void validate() const;
};

/// Filtered-kernel norm
///   M = ( Int_R | sum_p a_p |p - s|^{H - 1/alpha} |^alpha ds )^{1/alpha}
/// by singularity-split adaptive quadrature, relative accuracy ~1e-8.
/// The exponent-zero case H = 1/alpha is degenerate for alpha < 2 (the
/// kernel vanishes and every limit constant would be 0, reported as an
/// error); for alpha = 2 it is evaluated in the Brownian indicator limit.
double m_t0(const KernelSpec& spec);

/// Int_R e^{-|y|^alpha} / |y|^{1+beta} dy by quadrature (equals
/// (2/alpha) Gamma(-beta/alpha); the closed form is used only in tests).
double gamma_tail_integral(double alpha, double beta);

/// Limiting beta-th absolute moment of the rescaled variations,
/// quadrature route: M^beta * k(beta)/sqrt(2 pi) * gamma_tail_integral.
double m_t0_beta_quadrature(double alpha, double beta, double m);

/// Same constant in closed form:
///   M^beta 2^beta Gamma((beta+1)/2) Gamma(1 - beta/alpha)
///   / ( sqrt(pi) Gamma(1 - beta/2) ).
double m_t0_beta_closed(double alpha, double beta, double m);

/// Scale of the normalized variation n^{H(t0)} D_{k,n}X computed from the
/// exact kernel with time-varying H; converges to m_t0 as n grows.
/// Requires spec.hurst_function.
double sigma_kn(long k, int n, double t0, const KernelSpec& spec);

} // namespace mfsm::oracle

#endif
