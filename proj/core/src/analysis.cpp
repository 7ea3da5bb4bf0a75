#include "ptc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ptc/combinatorics.hpp"
#include "ptc/error.hpp"
#include "ptc/sim.hpp"
#include "ptc/timescale.hpp"

namespace ptc {

double triangular_fn(double s) { return std::max(1.0 - s, 0.0); }

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::triangularly_stable: return "triangularly_stable";
    case Verdict::triangularly_attractive: return "triangularly_attractive";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

StabilityCertificate certify(std::span<const double> times, std::span<const double> norms, double x0_norm,
                             double tau, const CertifyOptions& options) {
  if (times.empty()) throw ParameterError("cannot certify an empty trace");
  if (times.size() != norms.size()) throw ParameterError("times and norms differ in length");
  if (!(tau > 0.0)) throw ParameterError("tau must be positive");
  if (!(x0_norm > 0.0) || !std::isfinite(x0_norm)) throw ParameterError("x0_norm must be positive");

  StabilityCertificate cert;
  cert.final_norm = norms.back();
  cert.final_time = times.back();

  std::vector<std::size_t> fitted;
  fitted.reserve(times.size());
  for (std::size_t k = 0; k < times.size(); ++k)
    if (triangular_fn(times[k] / tau) >= options.lambda_floor) fitted.push_back(k);
  cert.samples_fitted = fitted.size();

  bool all_finite = true;
  for (double v : norms) all_finite = all_finite && std::isfinite(v);

  for (std::size_t k : fitted)
    cert.sigma_fit = std::max(cert.sigma_fit, norms[k] / (x0_norm * triangular_fn(times[k] / tau)));
  cert.sigma = std::max(cert.sigma_fit, 1.0 + 1e-9);

  const bool converged = all_finite && cert.final_norm <= options.final_norm_fraction * x0_norm;
  if (!all_finite || fitted.empty()) {
    cert.sigma_fit = all_finite ? cert.sigma_fit : std::numeric_limits<double>::infinity();
    cert.sigma = std::max(cert.sigma_fit, 1.0 + 1e-9);
    return cert;
  }

  if (converged && cert.sigma_fit < options.sigma_limit) {
    cert.verdict = Verdict::triangularly_stable;
    cert.varsigma = cert.sigma * x0_norm;
    cert.t0 = times[fitted.front()];
    cert.margin = std::numeric_limits<double>::infinity();
    for (std::size_t k : fitted)
      cert.margin = std::min(cert.margin, cert.sigma * x0_norm * triangular_fn(times[k] / tau) - norms[k]);
    return cert;
  }

  // Suffix maxima of |x| / Lambda give the tightest varsigma for each onset.
  std::vector<double> suffix(fitted.size());
  double running = 0.0;
  for (std::size_t m = fitted.size(); m-- > 0;) {
    const std::size_t k = fitted[m];
    running = std::max(running, norms[k] / triangular_fn(times[k] / tau));
    suffix[m] = running;
  }

  cert.margin = std::numeric_limits<double>::infinity();
  for (std::size_t k : fitted)
    cert.margin = std::min(cert.margin, cert.sigma * x0_norm * triangular_fn(times[k] / tau) - norms[k]);

  if (!converged) return cert;
  for (std::size_t m = 0; m < fitted.size(); ++m) {
    if (suffix[m] / x0_norm >= options.sigma_limit) continue;
    const double onset = times[fitted[m]];
    if (!(onset < tau)) break;
    cert.verdict = Verdict::triangularly_attractive;
    cert.varsigma = suffix[m];
    cert.t0 = onset;
    cert.margin = std::numeric_limits<double>::infinity();
    for (std::size_t q = m; q < fitted.size(); ++q) {
      const std::size_t k = fitted[q];
      cert.margin = std::min(cert.margin, suffix[m] * triangular_fn(times[k] / tau) - norms[k]);
    }
    break;
  }
  return cert;
}

StabilityCertificate certify(const SimTrace& trace, double x0_norm, double tau, const CertifyOptions& options) {
  return certify(trace.times, trace.norms, x0_norm, tau, options);
}

namespace {

double relative_error(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace

MappingReport verify_mapping(std::size_t n, double alpha, double tau, std::span<const double> sample_times,
                             double epsilon_fraction) {
  const TimeScale scale(alpha, tau);
  MappingReport report;
  report.order = n;
  for (double t : sample_times) {
    const TransformMatrices tm = build_transform_matrices(n, alpha, tau, t, epsilon_fraction);
    const double mu = tm.mu;

    report.max_roundtrip_error =
        std::max(report.max_roundtrip_error, std::abs(scale.kappa(mu) - t) / std::max(1.0, t));
    report.max_chain_rule_error = std::max(report.max_chain_rule_error, std::abs(tm.mu_dot * tm.kappa_prime - 1.0));

    // Closed forms: mu^(i)(t) = -tau (-alpha)^i e^{-alpha t};
    // kappa^(i)(mu) = (i-1)! / (alpha (tau - mu)^i).
    double factorial = 1.0;
    for (std::size_t i = 1; i <= n; ++i) {
      if (i > 1) factorial *= static_cast<double>(i - 1);
      const double mu_closed = -tau * std::pow(-alpha, static_cast<double>(i)) * std::exp(-alpha * t);
      report.max_mu_derivative_error =
          std::max(report.max_mu_derivative_error, relative_error(scale.mu_derivative(i, t), mu_closed));
      const double kappa_closed = factorial / (alpha * std::pow(tau - mu, static_cast<double>(i)));
      report.max_kappa_derivative_error = std::max(
          report.max_kappa_derivative_error,
          std::abs(scale.kappa_derivative(i, mu) - kappa_closed) / std::max(1.0, std::abs(kappa_closed)));
    }

    const Matrix product = tm.forward_map() * tm.inverse_map();
    report.max_transform_identity_error =
        std::max(report.max_transform_identity_error, max_abs_entry(product - Matrix::identity(n)));
  }
  report.ok = report.max_roundtrip_error <= report.tolerance && report.max_chain_rule_error <= report.tolerance &&
              report.max_mu_derivative_error <= report.tolerance &&
              report.max_kappa_derivative_error <= report.tolerance &&
              report.max_transform_identity_error <= report.tolerance;
  return report;
}

InputBoundednessReport check_input_boundedness(const SimTrace& trace, double split, double safety_factor) {
  InputBoundednessReport r;
  r.finite = !trace.inputs.empty();
  for (std::size_t k = 0; k < trace.inputs.size(); ++k) {
    const double u = std::abs(trace.inputs[k]);
    if (!std::isfinite(u)) r.finite = false;
    r.max_abs_input = std::max(r.max_abs_input, u);
    if (trace.times[k] < split * trace.tau) r.head_max = std::max(r.head_max, u);
    else r.tail_max = std::max(r.tail_max, u);
  }
  r.tail_bounded = r.finite && r.tail_max <= safety_factor * r.head_max;
  return r;
}

}  // namespace ptc
