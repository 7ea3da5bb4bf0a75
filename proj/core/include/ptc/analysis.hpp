#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace ptc {

struct SimTrace;

/// Lambda(s) = max{1 - s, 0}.
double triangular_fn(double s);

enum class Verdict { triangularly_stable, triangularly_attractive, inconclusive };

std::string_view to_string(Verdict v);

struct CertifyOptions {
  /// sigma (and varsigma / |x0|) at or above this counts as unbounded.
  double sigma_limit = 1e6;
  /// Final |x| must not exceed this fraction of |x0|.
  double final_norm_fraction = 1e-2;
  /// Samples with Lambda below this are on the clamped branch and skipped.
  double lambda_floor = 1e-9;
};

/// Empirical check of |x(t)| <= sigma |x0| Lambda(t/tau) (stable) or
/// |x(t)| <= varsigma Lambda(t/tau) on [t0, tau) (attractive) at the
/// sample points of a trace. Nothing is extrapolated between samples.
struct StabilityCertificate {
  Verdict verdict = Verdict::inconclusive;
  double sigma_fit = 0.0;  ///< max |x_k| / (|x0| Lambda_k), reported even when large
  double sigma = 0.0;      ///< certified sigma, max(sigma_fit, 1 + 1e-9)
  std::optional<double> varsigma;
  std::optional<double> t0;
  double margin = 0.0;  ///< min over fitted samples of bound - |x|
  double final_norm = 0.0;
  double final_time = 0.0;
  std::size_t samples_fitted = 0;

  friend bool operator==(const StabilityCertificate&, const StabilityCertificate&) = default;
};

/// Throws ParameterError for an empty trace, mismatched spans,
/// non-positive tau or x0_norm.
StabilityCertificate certify(std::span<const double> times, std::span<const double> norms, double x0_norm,
                             double tau, const CertifyOptions& options = {});
StabilityCertificate certify(const SimTrace& trace, double x0_norm, double tau, const CertifyOptions& options = {});

/// Worst deviations of the time-scale identities over a set of samples.
struct MappingReport {
  std::size_t order = 0;
  double max_roundtrip_error = 0.0;       ///< |kappa(mu(t)) - t|
  double max_chain_rule_error = 0.0;      ///< |mu_dot(t) kappa'(mu(t)) - 1|
  double max_mu_derivative_error = 0.0;   ///< relative, i = 1..n
  double max_kappa_derivative_error = 0.0;  ///< relative, i = 1..n
  double max_transform_identity_error = 0.0;  ///< max entry of F G - I
  double tolerance = 1e-10;
  bool ok = false;
};

/// Throws ParameterError for bad alpha/tau and SingularityError for a
/// sample whose mu(t) falls inside the guard band.
MappingReport verify_mapping(std::size_t n, double alpha, double tau, std::span<const double> sample_times,
                             double epsilon_fraction = 1e-3);

/// Empirical proxy for bounded control: max |u| on [0, split tau) versus
/// [split tau, end].
struct InputBoundednessReport {
  double max_abs_input = 0.0;
  double head_max = 0.0;
  double tail_max = 0.0;
  bool finite = false;
  bool tail_bounded = false;  ///< tail_max <= safety_factor * head_max
};

InputBoundednessReport check_input_boundedness(const SimTrace& trace, double split = 0.9, double safety_factor = 10.0);

}  // namespace ptc
