#pragma once

#include <cstddef>

namespace ptc {

/// The exponential time-scale map mu(t) = tau (1 - exp(-alpha t)) from
/// [0, inf) onto [0, tau), and its inverse kappa(mu) = -(1/alpha) ln(1 - mu/tau).
class TimeScale {
 public:
  /// Throws ParameterError unless alpha > 0 and tau > 0.
  TimeScale(double alpha, double tau);

  double alpha() const noexcept { return alpha_; }
  double tau() const noexcept { return tau_; }

  double mu(double t) const;
  double mu_dot(double t) const;
  /// i-th derivative of mu, i >= 1: (-alpha)^(i-1) mu_dot(t).
  double mu_derivative(std::size_t i, double t) const;

  double kappa(double mu) const;
  /// d kappa / d mu = (1/alpha) / (tau - mu).
  double kappa_prime(double mu) const;
  /// i-th derivative of kappa, i >= 1: alpha^(i-1) (i-1)! kappa'(mu)^i.
  double kappa_derivative(std::size_t i, double mu) const;

 private:
  double alpha_;
  double tau_;
};

}  // namespace ptc
