#include <cmath>
#include <vector>

#include <doctest.h>

#include "mfsm/errors.hpp"
#include "mfsm/estim.hpp"
#include "mfsm/filters.hpp"
#include "mfsm/hurst.hpp"
#include "mfsm/oracle.hpp"
#include "mfsm/specfun.hpp"

namespace {

mfsm::oracle::KernelSpec make_kernel(double alpha, double hurst, int order) {
  mfsm::oracle::KernelSpec spec;
  spec.alpha = alpha;
  spec.hurst_at_t0 = hurst;
  spec.filter = mfsm::binomial_filter(order);
  return spec;
}

} // namespace

TEST_CASE("kernel norm fixtures, Gaussian case") {
  // Independent closed-form values via the fractional covariance identity
  // M^2(filter) = M^2(single) * (-1/2) sum_{p,q} a_p a_q |p-q|^{2H}.
  CHECK(mfsm::oracle::m_t0(make_kernel(2.0, 0.7, 0)) ==
        doctest::Approx(0.5660641327019709).epsilon(1e-7));
  CHECK(mfsm::oracle::m_t0(make_kernel(2.0, 0.7, 1)) ==
        doctest::Approx(0.6603773603762858).epsilon(1e-7));
  CHECK(mfsm::oracle::m_t0(make_kernel(2.0, 0.6, 2)) ==
        doctest::Approx(0.6471039031965563).epsilon(1e-7));
  CHECK(mfsm::oracle::m_t0(make_kernel(2.0, 0.3, 0)) ==
        doctest::Approx(0.8462938950210444).epsilon(1e-7));
  CHECK(mfsm::oracle::m_t0(make_kernel(2.0, 0.35, 1)) ==
        doctest::Approx(0.889712996032962).epsilon(1e-7));
}

TEST_CASE("kernel norm fixture, stable case") {
  // Frozen from an independent midpoint-rule refinement study of the direct
  // integral (piecewise with power-transformed tails).
  CHECK(mfsm::oracle::m_t0(make_kernel(1.5, 0.7, 1)) ==
        doctest::Approx(0.15049307593).epsilon(5e-5));
}

TEST_CASE("kernel norm symmetry under filter reversal") {
  mfsm::oracle::KernelSpec fwd = make_kernel(1.5, 0.4, 2);
  mfsm::oracle::KernelSpec rev = fwd;
  rev.filter.coefficients = {1.0, -3.0, 3.0, -1.0};
  CHECK(mfsm::oracle::m_t0(fwd) ==
        doctest::Approx(mfsm::oracle::m_t0(rev)).epsilon(1e-8));
}

TEST_CASE("kernel norm degeneracy at exponent zero") {
  CHECK_THROWS_AS(mfsm::oracle::m_t0(make_kernel(1.5, 1.0 / 1.5, 1)),
                  mfsm::degenerate_error);
  // Gaussian case: Brownian indicator limit.
  CHECK(mfsm::oracle::m_t0(make_kernel(2.0, 0.5, 0)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mfsm::oracle::m_t0(make_kernel(2.0, 0.5, 1)) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("moment integral matches the Gamma closed form") {
  for (double alpha : {0.5, 1.0, 1.5, 2.0}) {
    for (double beta : {-0.1, -0.25, -0.4}) {
      const double expected =
          2.0 / alpha *
          std::exp(mfsm::specfun::ln_gamma(-beta / alpha));
      CHECK(mfsm::oracle::gamma_tail_integral(alpha, beta) ==
            doctest::Approx(expected).epsilon(1e-8));
    }
  }
  CHECK(mfsm::oracle::gamma_tail_integral(2.0, -0.25) ==
        doctest::Approx(7.533941598797611).epsilon(1e-8));
}

TEST_CASE("two routes to the limiting moment agree") {
  for (double alpha : {0.5, 1.0, 1.5, 2.0}) {
    for (double beta : {-0.1, -0.25, -0.4}) {
      for (double m : {1.0, 2.3}) {
        const double quadrature =
            mfsm::oracle::m_t0_beta_quadrature(alpha, beta, m);
        const double closed = mfsm::oracle::m_t0_beta_closed(alpha, beta, m);
        CHECK(std::fabs(quadrature - closed) / closed < 1e-7);
      }
    }
  }
}

TEST_CASE("closed moment simplifies at alpha = 2") {
  for (double beta : {-0.45, -0.2, -0.05}) {
    const double simplified =
        std::pow(2.0, beta) *
        std::exp(mfsm::specfun::ln_gamma(0.5 * (beta + 1.0))) /
        std::sqrt(M_PI);
    CHECK(mfsm::oracle::m_t0_beta_closed(2.0, beta, 1.0) ==
          doctest::Approx(simplified).epsilon(1e-13));
  }
}

TEST_CASE("boundary exponent beta = -1/2 is admitted") {
  // Gamma-integral at the boundary: (2/alpha) Gamma(1/(2 alpha)).
  CHECK(mfsm::oracle::gamma_tail_integral(2.0, -0.5) ==
        doctest::Approx(std::exp(std::lgamma(0.25))).epsilon(1e-8));
  const double quadrature = mfsm::oracle::m_t0_beta_quadrature(2.0, -0.5, 1.0);
  const double closed = mfsm::oracle::m_t0_beta_closed(2.0, -0.5, 1.0);
  CHECK(std::fabs(quadrature - closed) / closed < 1e-7);
}

TEST_CASE("limiting moment scales as M^beta") {
  const double base = mfsm::oracle::m_t0_beta_quadrature(1.5, -0.3, 1.0);
  for (double m : {0.4, 2.0, 9.0}) {
    CHECK(mfsm::oracle::m_t0_beta_quadrature(1.5, -0.3, m) ==
          doctest::Approx(base * std::pow(m, -0.3)).epsilon(1e-13));
  }
}

TEST_CASE("psi applied to the closed moments recovers h(alpha)") {
  const std::vector<std::pair<double, double>> pairs{
      {-0.4, -0.2}, {-0.45, -0.15}, {-0.35, -0.3}};
  for (double alpha : {0.5, 1.0, 1.5, 2.0}) {
    for (const auto& [beta1, beta2] : pairs) {
      const mfsm::specfun::ExponentPair pair(-beta1, -beta2);
      for (double m : {0.5, 1.0, 3.0}) {
        const double lhs = mfsm::specfun::psi(
            pair, mfsm::oracle::m_t0_beta_closed(alpha, beta1, m),
            mfsm::oracle::m_t0_beta_closed(alpha, beta2, m));
        CHECK(std::fabs(lhs - mfsm::specfun::h(pair, alpha)) < 1e-9);
      }
    }
  }
}

TEST_CASE("local scale equals the kernel norm for constant H") {
  mfsm::oracle::KernelSpec spec = make_kernel(2.0, 0.65, 2);
  spec.hurst_function = mfsm::HurstFunction::constant(0.65);
  const double m = mfsm::oracle::m_t0(spec);
  const int n = 128;
  const long k = static_cast<long>(0.5 * n);
  const double sigma = mfsm::oracle::sigma_kn(k, n, 0.5, spec);
  CHECK(std::fabs(sigma - m) / m < 1e-6);
  // Stationarity: independent of k for constant H.
  const double sigma_shift = mfsm::oracle::sigma_kn(k + 3, n, 0.5, spec);
  CHECK(std::fabs(sigma_shift - sigma) / sigma < 1e-8);
}

TEST_CASE("local scale drifts toward the kernel norm as n grows") {
  mfsm::oracle::KernelSpec spec = make_kernel(2.0, 0.6, 2);
  spec.hurst_function = mfsm::HurstFunction::logistic(0.52, 0.68, 10.0, 0.5);
  spec.hurst_at_t0 = (*spec.hurst_function)(0.5);
  const double m = mfsm::oracle::m_t0(spec);
  double previous = -1.0;
  for (int n : {256, 4096}) {
    const long k = static_cast<long>(0.5 * n);
    const double sigma = mfsm::oracle::sigma_kn(k, n, 0.5, spec);
    const double gap = std::fabs(sigma - m);
    if (previous >= 0.0) {
      CHECK(gap < previous);
    }
    previous = gap;
  }
}

TEST_CASE("stable-case local scale for constant H") {
  mfsm::oracle::KernelSpec spec = make_kernel(1.5, 0.7, 1);
  spec.hurst_function = mfsm::HurstFunction::constant(0.7);
  const double m = mfsm::oracle::m_t0(spec);
  const double sigma = mfsm::oracle::sigma_kn(64, 128, 0.5, spec);
  CHECK(std::fabs(sigma - m) / m < 1e-6);
}
