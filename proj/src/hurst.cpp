#include "mfsm/hurst.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mfsm/errors.hpp"

namespace mfsm {

HurstFunction::HurstFunction(Kind kind, double p0, double p1, double p2,
                             double p3, double h_minus, double h_plus,
                             double derivative_bound)
    : kind_(kind),
      params_{p0, p1, p2, p3},
      h_minus_(h_minus),
      h_plus_(h_plus),
      derivative_bound_(derivative_bound) {
  if (!(h_minus_ > 0.0 && h_minus_ <= h_plus_ && h_plus_ < 1.0)) {
    throw config_error("HurstFunction: bounds must satisfy 0 < h- <= h+ < 1");
  }
}

HurstFunction HurstFunction::constant(double value) {
  return HurstFunction(Kind::constant, value, 0, 0, 0, value, value, 0.0);
}

HurstFunction HurstFunction::affine_clipped(double intercept, double slope,
                                            double lo, double hi) {
  if (!(lo <= hi)) {
    throw config_error("HurstFunction::affine_clipped: lo > hi");
  }
  return HurstFunction(Kind::affine_clipped, intercept, slope, lo, hi, lo, hi,
                       std::fabs(slope));
}

HurstFunction HurstFunction::logistic(double lo, double hi, double rate,
                                      double center) {
  if (!(lo < hi)) {
    throw config_error("HurstFunction::logistic: need lo < hi");
  }
  return HurstFunction(Kind::logistic, lo, hi, rate, center, lo, hi,
                       std::fabs(rate) * (hi - lo) * 0.25);
}

HurstFunction HurstFunction::sinusoidal(double mid, double amplitude,
                                        double frequency, double phase) {
  const double amp = std::fabs(amplitude);
  return HurstFunction(Kind::sinusoidal, mid, amplitude, frequency, phase,
                       mid - amp, mid + amp,
                       2.0 * M_PI * std::fabs(frequency) * amp);
}

double HurstFunction::operator()(double t) const {
  switch (kind_) {
    case Kind::constant:
      return params_[0];
    case Kind::affine_clipped:
      return std::clamp(params_[0] + params_[1] * t, params_[2], params_[3]);
    case Kind::logistic: {
      const double lo = params_[0];
      const double hi = params_[1];
      return lo + (hi - lo) / (1.0 + std::exp(-params_[2] * (t - params_[3])));
    }
    case Kind::sinusoidal:
      return params_[0] +
             params_[1] * std::sin(2.0 * M_PI * params_[2] * t + params_[3]);
  }
  return params_[0];
}

void HurstFunction::validate(double t_min, double t_max) const {
  const int samples = 2000;
  const double step = (t_max - t_min) / samples;
  double prev = (*this)(t_min);
  for (int i = 0; i <= samples; ++i) {
    const double t = t_min + i * step;
    const double value = (*this)(t);
    if (!(value >= h_minus_ - 1e-12 && value <= h_plus_ + 1e-12 &&
          value > 0.0 && value < 1.0)) {
      std::ostringstream msg;
      msg << "HurstFunction: H(" << t << ") = " << value
          << " violates bounds (" << h_minus_ << ", " << h_plus_ << ")";
      throw config_error(msg.str());
    }
    if (i > 0 && step > 0.0) {
      const double slope = std::fabs(value - prev) / step;
      if (slope > derivative_bound_ * (1.0 + 1e-6) + 1e-9) {
        std::ostringstream msg;
        msg << "HurstFunction: finite-difference slope " << slope << " near t="
            << t << " exceeds the declared bound " << derivative_bound_;
        throw config_error(msg.str());
      }
    }
    prev = value;
  }
}

std::string HurstFunction::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case Kind::constant:
      out << "constant(" << params_[0] << ")";
      break;
    case Kind::affine_clipped:
      out << "affine_clipped(intercept=" << params_[0]
          << ", slope=" << params_[1] << ", lo=" << params_[2]
          << ", hi=" << params_[3] << ")";
      break;
    case Kind::logistic:
      out << "logistic(lo=" << params_[0] << ", hi=" << params_[1]
          << ", rate=" << params_[2] << ", center=" << params_[3] << ")";
      break;
    case Kind::sinusoidal:
      out << "sinusoidal(mid=" << params_[0] << ", amplitude=" << params_[1]
          << ", frequency=" << params_[2] << ", phase=" << params_[3] << ")";
      break;
  }
  return out.str();
}

} // namespace mfsm
