#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ptc/controller.hpp"
#include "ptc/error.hpp"
#include "ptc/plant.hpp"

namespace ptc {

struct SimConfig {
  double dt_base = 1e-2;
  /// Integration halts at tau (1 - epsilon_fraction).
  double epsilon_fraction = 1e-3;
  /// Step never exceeds (tau - t) / shrink_divisor.
  double shrink_divisor = 50.0;
  /// Step never exceeds stiffness_safety * (tau - t) / R, where R is the
  /// largest root modulus of the time-normalised closed-loop polynomial.
  double stiffness_safety = 0.5;
  std::vector<double> x0;
  std::size_t record_stride = 1;
  /// |x_i| or |u| above this aborts the run.
  double divergence_limit = 1e20;
  bool audit = true;

  void validate(std::size_t n) const;
};

/// Recorded samples of one closed-loop run. Row k of states is x(times[k]).
struct SimTrace {
  std::size_t n = 0;
  double tau = 0.0;
  double x0_norm = 0.0;
  std::vector<double> times;
  std::vector<double> states;
  std::vector<double> inputs;
  std::vector<double> norms;
  std::vector<double> lambda_bounds;  ///< |x0| Lambda(t/tau)

  std::size_t steps_taken = 0;
  double min_step = 0.0;
  double stiffness_radius = 0.0;
  std::string design_fingerprint;
  std::string plant_fingerprint;
  std::string config_fingerprint;

  std::size_t size() const noexcept { return times.size(); }
  bool empty() const noexcept { return times.empty(); }
  std::span<const double> state(std::size_t k) const { return {states.data() + k * n, n}; }

  friend bool operator==(const SimTrace&, const SimTrace&) = default;
};

/// Run blew up (non-finite value or the divergence limit); carries the
/// samples recorded so far plus the last finite state.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, SimTrace partial) : Error(what), partial_(std::move(partial)) {}
  const SimTrace& partial() const noexcept { return partial_; }

 private:
  SimTrace partial_;
};

/// Largest root modulus of nu^n - rho sum_i q_i nu^(i-1), q_i the schedule
/// numerators. Frozen closed-loop eigenvalues are these roots divided by (tau - t).
double closed_loop_stiffness(const GainSchedule& schedule, double rho);

/// Classical RK4 on [0, tau(1-eps)] with step
/// min(dt_base, (tau-t)/max(shrink_divisor, R/stiffness_safety)); u is
/// recomputed from the state at every stage.
///
/// Throws DivergenceError, AuditError (declared bound violated),
/// ShapeError / ParameterError for inconsistent inputs.
SimTrace run(const PlantSpec& plant, const ControllerDesign& design, const SimConfig& cfg);

/// One design and run per tau, sharing x0 and seed. Runs are spread over up
/// to max_threads threads; results keep the order of taus.
std::vector<SimTrace> sweep(const PlantSpec& plant, const DesignRequest& design_template,
                            std::span<const double> taus, const SimConfig& cfg, unsigned max_threads = 1);

}  // namespace ptc
