#ifndef MFSM_SPECFUN_HPP
#define MFSM_SPECFUN_HPP

namespace mfsm::specfun {

/// ln Gamma(x) for x > 0 (Lanczos approximation, ~1e-15 relative accuracy).
double ln_gamma(double x);

/// Pair of moment exponents (u, v) with 0 < v < u < 1/2.
/// For the stability estimator u = -beta1, v = -beta2 with
/// -1/2 < beta1 < beta2 < 0.
struct ExponentPair {
  double u;
  double v;
  ExponentPair(double u_, double v_);
};

/// 2^{beta+1} Gamma((beta+1)/2) / Gamma(-beta/2) for beta in (-1, 0).
double c_beta(double beta);

/// Constant k(beta) in the moment identity
///   E|Z|^beta = k(beta)/sqrt(2*pi) * Int_R E[e^{iyZ}] |y|^{-1-beta} dy
/// valid for any symmetric random variable Z and beta in (-1/2, 0).
/// Equals c_beta(beta)/sqrt(2).
double moment_transform_constant(double beta);

/// The additive Gamma offset C(u, v) used by psi.
double psi_offset(const ExponentPair& p);

/// psi(x, y) = -v ln x + u ln y + C(u, v) for x, y > 0.
double psi(const ExponentPair& p, double x, double y);

/// h(x) = u ln Gamma(1 + v/x) - v ln Gamma(1 + u/x) for x > 0.
/// Strictly increasing on (0, inf) with range (-inf, 0).
double h(const ExponentPair& p, double x);

/// phi(x) = 0 for x >= 0, otherwise the unique root of h(.) = x.
/// Bracketed in [1e-12, 1e12]; throws numeric_error when x is below the
/// attainable range.
double phi(const ExponentPair& p, double x);

} // namespace mfsm::specfun

#endif
