#include "cli/report.hpp"

#include <cmath>

namespace ptc::cli {

using nlohmann::json;

namespace {

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json optional_number(const std::optional<double>& v) { return v ? finite_or_null(*v) : json(nullptr); }

}  // namespace

json to_json(const ControllerDesign& d) {
  json p = json::array();
  for (std::size_t i = 0; i < d.lyap.P.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < d.lyap.P.cols(); ++j) row.push_back(d.lyap.P(i, j));
    p.push_back(row);
  }
  return json{{"n", d.n},
              {"c", d.c},
              {"tau", d.tau},
              {"hurwitz", true},
              {"P", p},
              {"lambda_min", d.lyap.lambda_min},
              {"lambda_max", d.lyap.lambda_max},
              {"lyapunov_residual", d.lyap.residual},
              {"bound_attractive", d.bound_attractive},
              {"bound_stable", optional_number(d.bound_stable)},
              {"alpha", d.alpha},
              {"mode", std::string(to_string(d.mode))},
              {"gamma_min", d.gamma_min},
              {"phi", d.phi},
              {"phi0", d.phi0},
              {"epsilon_fraction", d.epsilon_fraction}};
}

json to_json(const StabilityCertificate& c) {
  return json{{"verdict", std::string(to_string(c.verdict))},
              {"sigma_fit", finite_or_null(c.sigma_fit)},
              {"sigma", finite_or_null(c.sigma)},
              {"varsigma", optional_number(c.varsigma)},
              {"t0", optional_number(c.t0)},
              {"margin", finite_or_null(c.margin)},
              {"final_norm", finite_or_null(c.final_norm)},
              {"final_time", c.final_time},
              {"samples_fitted", c.samples_fitted}};
}

json to_json(const InputBoundednessReport& r) {
  return json{{"max_abs_input", finite_or_null(r.max_abs_input)},
              {"head_max", finite_or_null(r.head_max)},
              {"tail_max", finite_or_null(r.tail_max)},
              {"finite", r.finite},
              {"tail_bounded", r.tail_bounded}};
}

json to_json(const PlantSpec& p) {
  json j{{"name", p.name},       {"n", p.n},     {"disturbance", p.disturbance_text},
         {"g", p.gain_text},     {"gamma", p.gamma}, {"gamma_min", p.gamma_min},
         {"phi", p.phi},         {"phi0", p.phi0},   {"seed", p.rng_seed}};
  if (!p.weights.empty()) j["weights"] = p.weights;
  return j;
}

json trace_summary(const SimTrace& t) {
  return json{{"samples", t.size()},
              {"steps", t.steps_taken},
              {"min_step", t.min_step},
              {"stiffness_radius", t.stiffness_radius},
              {"final_time", t.empty() ? 0.0 : t.times.back()},
              {"design_fingerprint", t.design_fingerprint},
              {"plant_fingerprint", t.plant_fingerprint},
              {"config_fingerprint", t.config_fingerprint}};
}

}  // namespace ptc::cli
