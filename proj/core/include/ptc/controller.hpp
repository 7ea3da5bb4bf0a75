#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ptc/linalg.hpp"

namespace ptc {

enum class StabilityMode { attractive, stable };

std::string_view to_string(StabilityMode mode);

/// Relative shave applied to the attractivity bound so the strict
/// inequality on alpha holds.
inline constexpr double kAlphaStrictness = 1e-9;
inline constexpr double kDefaultGuardFraction = 1e-3;

struct AlphaSelection {
  double alpha = 0.0;
  StabilityMode mode = StabilityMode::attractive;
  double bound_attractive = 0.0;
  std::optional<double> bound_stable;
};

/// Largest admissible alpha for the given Lyapunov solution.
///
/// bound_attractive = min{ l_min / (n l_max l_min + n! l_max^2), 1/tau }.
/// With phi0 = 0 the stability bound
/// l_min / (l_min + n! l_max^2 (tau phi + 1)) also applies and the design
/// is stable; otherwise only attractivity is certified.
AlphaSelection select_alpha(const LyapunovSolution& lyap, std::size_t n, double tau, double phi, double phi0);

struct DesignRequest {
  std::vector<double> c;
  double tau = 0.0;
  double gamma_min = 1.0;
  double phi = 0.0;
  double phi0 = 0.0;
  std::optional<double> alpha;  ///< Explicit alpha; checked against the bounds.
  double epsilon_fraction = kDefaultGuardFraction;
};

struct ControllerDesign {
  std::size_t n = 0;
  std::vector<double> c;
  double tau = 0.0;
  double alpha = 0.0;
  LyapunovSolution lyap;
  StabilityMode mode = StabilityMode::attractive;
  double bound_attractive = 0.0;
  std::optional<double> bound_stable;
  double gamma_min = 1.0;
  double phi = 0.0;
  double phi0 = 0.0;
  double epsilon_fraction = kDefaultGuardFraction;

  /// Last admissible evaluation time, tau (1 - epsilon_fraction).
  double guard_time() const noexcept { return tau * (1.0 - epsilon_fraction); }
};

/// Full pipeline: Hurwitz check, Lyapunov solve, alpha selection.
/// Throws InfeasibleDesign for a non-Hurwitz c or an explicit alpha that
/// violates the attractivity bound, ParameterError for bad scalars.
ControllerDesign design_controller(const DesignRequest& request);

/// One monomial multiplier * c_j / alpha^alpha_power; c_index = 0 marks a
/// pure constant.
struct GainTerm {
  std::int64_t multiplier = 0;
  std::size_t c_index = 0;
  int alpha_power = 0;

  friend bool operator==(const GainTerm&, const GainTerm&) = default;
};

/// p_i(t, tau) = (sum of terms) / (tau - t)^tau_power.
struct StateGain {
  std::size_t state = 0;  ///< 1-based
  int tau_power = 0;
  std::vector<GainTerm> terms;

  double coefficient(std::span<const double> c, double alpha) const;
  std::string to_string() const;
};

/// Exact per-state gains of pi(x, t, tau) for order n; depends on n only.
std::vector<StateGain> symbolic_gains(std::size_t n);

/// Gain table for a concrete design: symbolic rows plus their numeric
/// numerators, evaluated lazily against (tau - t).
class GainSchedule {
 public:
  explicit GainSchedule(const ControllerDesign& design);

  std::size_t order() const noexcept { return rows_.size(); }
  const std::vector<StateGain>& rows() const noexcept { return rows_; }
  /// Numerators q_i with p_i = q_i / (tau - t)^(n-i+1).
  const std::vector<double>& numerators() const noexcept { return numerators_; }
  double tau() const noexcept { return tau_; }

  void gains_at(double t, std::span<double> out) const;
  std::vector<double> gains_at(double t) const;
  /// pi(x, t, tau) = sum_i p_i(t, tau) x_i.
  double pi(std::span<const double> x, double t) const;

 private:
  std::vector<StateGain> rows_;
  std::vector<double> numerators_;
  double tau_;
};

GainSchedule build_gain_schedule(const ControllerDesign& design);

/// u = pi(x, t, tau) / (gamma_min g(t)). Throws SingularityError past the
/// guard time, InvalidPlant for g(t) = 0, ShapeError for a wrong-sized x.
double control_input(const ControllerDesign& design, const GainSchedule& schedule, std::span<const double> x,
                     double t, double g_t);

}  // namespace ptc
