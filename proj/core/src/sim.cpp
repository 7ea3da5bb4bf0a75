#include "ptc/sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <sstream>
#include <thread>

#include "ptc/analysis.hpp"
#include "ptc/linalg.hpp"

namespace ptc {

void SimConfig::validate(std::size_t n) const {
  if (!(dt_base > 0.0) || !std::isfinite(dt_base)) throw ParameterError("dt_base must be positive");
  if (!(epsilon_fraction > 0.0 && epsilon_fraction < 1.0))
    throw ParameterError("epsilon_fraction must lie in (0, 1)");
  if (!(shrink_divisor >= 1.0)) throw ParameterError("shrink_divisor must be at least 1");
  if (!(stiffness_safety > 0.0)) throw ParameterError("stiffness_safety must be positive");
  if (record_stride == 0) throw ParameterError("record_stride must be positive");
  if (!(divergence_limit > 0.0)) throw ParameterError("divergence_limit must be positive");
  if (x0.size() != n) throw ShapeError("x0 has " + std::to_string(x0.size()) + " entries, plant order is " + std::to_string(n));
  for (double v : x0)
    if (!std::isfinite(v)) throw ParameterError("x0 must be finite");
}

namespace {

class Fingerprint {
 public:
  Fingerprint& add(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g;", v);
    return add(std::string_view(buf));
  }
  Fingerprint& add(std::string_view s) {
    for (unsigned char c : s) {
      hash_ ^= c;
      hash_ *= 0x100000001b3ULL;
    }
    hash_ ^= 0xff;
    hash_ *= 0x100000001b3ULL;
    return *this;
  }
  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash_));
    return buf;
  }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

std::string fingerprint(const ControllerDesign& d) {
  Fingerprint f;
  f.add(static_cast<double>(d.n)).add(d.tau).add(d.alpha).add(d.gamma_min).add(to_string(d.mode));
  for (double c : d.c) f.add(c);
  return f.hex();
}

std::string fingerprint(const PlantSpec& p) {
  Fingerprint f;
  f.add(p.name).add(static_cast<double>(p.n)).add(p.gamma).add(p.gamma_min).add(p.phi).add(p.phi0);
  f.add(static_cast<double>(p.rng_seed)).add(p.disturbance_text).add(p.gain_text);
  for (double w : p.weights) f.add(w);
  return f.hex();
}

std::string fingerprint(const SimConfig& c) {
  Fingerprint f;
  f.add(c.dt_base).add(c.epsilon_fraction).add(c.shrink_divisor).add(c.stiffness_safety);
  f.add(static_cast<double>(c.record_stride)).add(c.divergence_limit).add(c.audit ? "audit" : "noaudit");
  for (double v : c.x0) f.add(v);
  return f.hex();
}

bool out_of_range(std::span<const double> x, double limit) {
  for (double v : x)
    if (!std::isfinite(v) || std::abs(v) > limit) return true;
  return false;
}

std::string describe_state(std::span<const double> x) {
  std::ostringstream os;
  os.precision(6);
  os << "(";
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  return os.str();
}

}  // namespace

double closed_loop_stiffness(const GainSchedule& schedule, double rho) {
  std::vector<double> c(schedule.order());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = rho * schedule.numerators()[i];
  const auto roots = polynomial_roots(CompanionMatrix(std::move(c)).characteristic_polynomial());
  double r = 0.0;
  for (const auto& z : roots) r = std::max(r, std::abs(z));
  return r;
}

SimTrace run(const PlantSpec& plant, const ControllerDesign& design_in, const SimConfig& cfg) {
  plant.validate();
  if (plant.n != design_in.n) throw ShapeError("plant order does not match the controller order");
  cfg.validate(plant.n);

  // The simulator's guard band is authoritative for where control is evaluated.
  ControllerDesign design = design_in;
  design.epsilon_fraction = cfg.epsilon_fraction;
  const GainSchedule schedule(design);

  const std::size_t n = plant.n;
  const double tau = design.tau;
  const double t_end = tau * (1.0 - cfg.epsilon_fraction);
  const double rho = plant.gamma / design.gamma_min;

  SimTrace trace;
  trace.n = n;
  trace.tau = tau;
  trace.x0_norm = vector_norm(cfg.x0);
  trace.stiffness_radius = closed_loop_stiffness(schedule, rho);
  trace.design_fingerprint = fingerprint(design_in);
  trace.plant_fingerprint = fingerprint(plant);
  trace.config_fingerprint = fingerprint(cfg);
  const double divisor = std::max(cfg.shrink_divisor, trace.stiffness_radius / cfg.stiffness_safety);

  auto control = [&](std::span<const double> x, double t) {
    return control_input(design, schedule, x, t, plant.g(t));
  };
  auto record = [&](double t, std::span<const double> x, double u) {
    trace.times.push_back(t);
    trace.states.insert(trace.states.end(), x.begin(), x.end());
    trace.inputs.push_back(u);
    trace.norms.push_back(vector_norm(x));
    trace.lambda_bounds.push_back(trace.x0_norm * triangular_fn(t / tau));
  };
  auto diverge = [&](const std::string& what, double t, std::span<const double> x) -> DivergenceError {
    std::ostringstream msg;
    msg.precision(6);
    msg << "divergence at t = " << t << ": " << what << ", x = " << describe_state(x);
    return DivergenceError(msg.str(), trace);
  };

  std::vector<double> x = cfg.x0;
  std::vector<double> stage(n);
  std::array<std::vector<double>, 4> k;
  for (auto& v : k) v.assign(n, 0.0);

  double t = 0.0;
  record(t, x, control(x, t));
  trace.min_step = t_end;

  std::size_t step = 0;
  while (t < t_end) {
    double h = std::min({cfg.dt_base, (tau - t) / divisor, t_end - t});
    const bool last = (t_end - (t + h)) <= 1e-12 * tau;
    if (last) h = t_end - t;

    const double u1 = control(x, t);
    if (!std::isfinite(u1) || std::abs(u1) > cfg.divergence_limit) throw diverge("control input out of range", t, x);
    if (cfg.audit) {
      const AuditSample a = audit_assumption(plant, x, u1, t);
      if (!a.ok) {
        std::ostringstream msg;
        msg.precision(10);
        msg << "disturbance bound violated at t = " << t << ": |f| = " << a.f_abs << " > phi|x| + phi0 = " << a.bound
            << ", x = " << describe_state(x);
        throw AuditError(msg.str());
      }
    }
    derivative(plant, x, u1, t, k[0]);

    for (std::size_t i = 0; i < n; ++i) stage[i] = x[i] + 0.5 * h * k[0][i];
    derivative(plant, stage, control(stage, t + 0.5 * h), t + 0.5 * h, k[1]);
    for (std::size_t i = 0; i < n; ++i) stage[i] = x[i] + 0.5 * h * k[1][i];
    derivative(plant, stage, control(stage, t + 0.5 * h), t + 0.5 * h, k[2]);
    for (std::size_t i = 0; i < n; ++i) stage[i] = x[i] + h * k[2][i];
    derivative(plant, stage, control(stage, t + h), t + h, k[3]);

    std::vector<double> next(n);
    for (std::size_t i = 0; i < n; ++i) next[i] = x[i] + h / 6.0 * (k[0][i] + 2.0 * k[1][i] + 2.0 * k[2][i] + k[3][i]);
    if (out_of_range(next, cfg.divergence_limit)) throw diverge("state out of range", t, x);

    x = std::move(next);
    t = last ? t_end : t + h;
    trace.min_step = std::min(trace.min_step, h);
    ++step;
    if (last || step % cfg.record_stride == 0) {
      const double u = control(x, t);
      if (!std::isfinite(u) || std::abs(u) > cfg.divergence_limit) throw diverge("control input out of range", t, x);
      record(t, x, u);
    }
  }
  trace.steps_taken = step;
  return trace;
}

std::vector<SimTrace> sweep(const PlantSpec& plant, const DesignRequest& design_template,
                            std::span<const double> taus, const SimConfig& cfg, unsigned max_threads) {
  std::vector<SimTrace> out(taus.size());
  std::vector<std::exception_ptr> errors(taus.size());
  auto job = [&](std::size_t i) {
    try {
      DesignRequest req = design_template;
      req.tau = taus[i];
      out[i] = run(plant, design_controller(req), cfg);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(max_threads, taus.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < taus.size(); ++i) job(i);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < taus.size(); i += workers) job(i);
      });
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace ptc
