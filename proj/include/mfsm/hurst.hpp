#ifndef MFSM_HURST_HPP
#define MFSM_HURST_HPP

#include <string>

namespace mfsm {

/// Time-varying regularity exponent H: U -> (0, 1) with explicit bounds
/// 0 < h_minus <= H(t) <= h_plus < 1 and a derivative bound on U.
class HurstFunction {
public:
  enum class Kind { constant, affine_clipped, logistic, sinusoidal };

  static HurstFunction constant(double value);
  /// clamp(intercept + slope * t, lo, hi)
  static HurstFunction affine_clipped(double intercept, double slope,
                                      double lo, double hi);
  /// lo + (hi - lo) / (1 + exp(-rate * (t - center)))
  static HurstFunction logistic(double lo, double hi, double rate,
                                double center);
  /// mid + amplitude * sin(2*pi*frequency*t + phase)
  static HurstFunction sinusoidal(double mid, double amplitude,
                                  double frequency, double phase);

  double operator()(double t) const;

  Kind kind() const { return kind_; }
  double h_minus() const { return h_minus_; }
  double h_plus() const { return h_plus_; }
  double derivative_bound() const { return derivative_bound_; }
  bool is_constant() const { return kind_ == Kind::constant; }

  /// Dense-sampling check of the range and derivative bounds over [t_min, t_max].
  /// Throws config_error on violation.
  void validate(double t_min, double t_max) const;

  std::string describe() const;

  double param(int i) const { return params_[i]; }

private:
  HurstFunction(Kind kind, double p0, double p1, double p2, double p3,
                double h_minus, double h_plus, double derivative_bound);

  Kind kind_;
  double params_[4];
  double h_minus_;
  double h_plus_;
  double derivative_bound_;
};

} // namespace mfsm

#endif
