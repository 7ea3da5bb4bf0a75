#include "ptc/timescale.hpp"

#include <cmath>

#include "ptc/error.hpp"

namespace ptc {

TimeScale::TimeScale(double alpha, double tau) : alpha_(alpha), tau_(tau) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ParameterError("alpha must be positive");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ParameterError("tau must be positive");
}

double TimeScale::mu(double t) const { return -tau_ * std::expm1(-alpha_ * t); }

double TimeScale::mu_dot(double t) const { return alpha_ * tau_ * std::exp(-alpha_ * t); }

double TimeScale::mu_derivative(std::size_t i, double t) const {
  if (i == 0) return mu(t);
  return std::pow(-alpha_, static_cast<double>(i - 1)) * mu_dot(t);
}

double TimeScale::kappa(double mu) const {
  if (mu >= tau_) throw SingularityError("kappa is unbounded at mu >= tau");
  return -std::log1p(-mu / tau_) / alpha_;
}

double TimeScale::kappa_prime(double mu) const {
  if (mu >= tau_) throw SingularityError("kappa' is unbounded at mu >= tau");
  return 1.0 / (alpha_ * (tau_ - mu));
}

double TimeScale::kappa_derivative(std::size_t i, double mu) const {
  if (i == 0) return kappa(mu);
  double factorial = 1.0;
  for (std::size_t k = 2; k < i; ++k) factorial *= static_cast<double>(k);
  return std::pow(alpha_, static_cast<double>(i - 1)) * factorial *
         std::pow(kappa_prime(mu), static_cast<double>(i));
}

}  // namespace ptc
