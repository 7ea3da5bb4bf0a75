#include "cli/scenario.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

namespace ptc::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::string_view section, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw ScenarioError("unknown key '" + key + "' in section '" + std::string(section) + "'");
  }
}

const json& object_at(const json& doc, std::string_view key) {
  const auto& v = doc.at(std::string(key));
  if (!v.is_object()) throw ScenarioError("section '" + std::string(key) + "' must be an object");
  return v;
}

double number(const json& obj, std::string_view section, std::string_view key) {
  const auto& v = obj.at(std::string(key));
  if (!v.is_number()) throw ScenarioError(std::string(section) + "." + std::string(key) + " must be a number");
  return v.get<double>();
}

std::vector<double> number_list(const json& v, std::string_view what) {
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) throw ScenarioError(std::string(what) + " must be a number or an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw ScenarioError(std::string(what) + " must contain numbers only");
    out.push_back(e.get<double>());
  }
  return out;
}

std::size_t count(const json& obj, std::string_view section, std::string_view key) {
  const auto& v = obj.at(std::string(key));
  if (!v.is_number_integer() || v.get<long long>() < 1)
    throw ScenarioError(std::string(section) + "." + std::string(key) + " must be a positive integer");
  return v.get<std::size_t>();
}

}  // namespace

Scenario parse_scenario(const json& doc) {
  if (!doc.is_object()) throw ScenarioError("scenario must be a JSON object");
  reject_unknown(doc, "root", {"plant", "controller", "sim", "output"});
  if (!doc.contains("plant")) throw ScenarioError("scenario is missing the 'plant' section");
  if (!doc.contains("controller")) throw ScenarioError("scenario is missing the 'controller' section");

  Scenario s;
  try {
    const json& plant = object_at(doc, "plant");
    if (plant.contains("builtin")) {
      reject_unknown(plant, "plant", {"builtin", "seed"});
      if (!plant["builtin"].is_string()) throw ScenarioError("plant.builtin must be a string");
      s.plant.builtin = plant["builtin"].get<std::string>();
    } else {
      reject_unknown(plant, "plant", {"n", "disturbance", "g", "gamma", "gamma_min", "phi", "phi0", "seed"});
      for (auto key : {"n", "disturbance", "gamma_min", "phi", "phi0"})
        if (!plant.contains(key)) throw ScenarioError(std::string("plant.") + key + " is required for a custom plant");
      s.plant.n = count(plant, "plant", "n");
      if (!plant["disturbance"].is_string()) throw ScenarioError("plant.disturbance must be a string");
      s.plant.disturbance = plant["disturbance"].get<std::string>();
      if (plant.contains("g")) {
        if (!plant["g"].is_string()) throw ScenarioError("plant.g must be a string");
        s.plant.g = plant["g"].get<std::string>();
      }
      s.plant.gamma_min = number(plant, "plant", "gamma_min");
      s.plant.gamma = plant.contains("gamma") ? number(plant, "plant", "gamma") : s.plant.gamma_min;
      s.plant.phi = number(plant, "plant", "phi");
      s.plant.phi0 = number(plant, "plant", "phi0");
    }
    if (plant.contains("seed")) {
      if (!plant["seed"].is_number_unsigned()) throw ScenarioError("plant.seed must be a non-negative integer");
      s.plant.seed = plant["seed"].get<std::uint64_t>();
    }

    const json& ctrl = object_at(doc, "controller");
    reject_unknown(ctrl, "controller", {"c", "tau", "alpha"});
    if (!ctrl.contains("c")) throw ScenarioError("controller.c is required");
    s.controller.c = number_list(ctrl["c"], "controller.c");
    if (ctrl.contains("tau")) s.controller.taus = number_list(ctrl["tau"], "controller.tau");
    if (ctrl.contains("alpha")) s.controller.alpha = number(ctrl, "controller", "alpha");

    if (doc.contains("sim")) {
      const json& sim = object_at(doc, "sim");
      reject_unknown(sim, "sim", {"x0", "dt_base", "epsilon_fraction", "record_stride", "shrink_divisor",
                                  "stiffness_safety", "divergence_limit", "audit"});
      s.sim.present = true;
      if (sim.contains("x0")) s.sim.x0 = number_list(sim["x0"], "sim.x0");
      if (sim.contains("dt_base")) s.sim.dt_base = number(sim, "sim", "dt_base");
      if (sim.contains("epsilon_fraction")) s.sim.epsilon_fraction = number(sim, "sim", "epsilon_fraction");
      if (sim.contains("record_stride")) s.sim.record_stride = count(sim, "sim", "record_stride");
      if (sim.contains("shrink_divisor")) s.sim.shrink_divisor = number(sim, "sim", "shrink_divisor");
      if (sim.contains("stiffness_safety")) s.sim.stiffness_safety = number(sim, "sim", "stiffness_safety");
      if (sim.contains("divergence_limit")) s.sim.divergence_limit = number(sim, "sim", "divergence_limit");
      if (sim.contains("audit")) {
        if (!sim["audit"].is_boolean()) throw ScenarioError("sim.audit must be a boolean");
        s.sim.audit = sim["audit"].get<bool>();
      }
    }

    if (doc.contains("output")) {
      const json& out = object_at(doc, "output");
      reject_unknown(out, "output", {"dir", "trace", "report"});
      for (auto key : {"dir", "trace", "report"})
        if (out.contains(key) && !out[key].is_string()) throw ScenarioError(std::string("output.") + key + " must be a string");
      if (out.contains("dir")) s.output.dir = out["dir"].get<std::string>();
      if (out.contains("trace")) s.output.trace = out["trace"].get<std::string>();
      if (out.contains("report")) s.output.report = out["report"].get<std::string>();
    }
  } catch (const json::exception& e) {
    throw ScenarioError(std::string("malformed scenario: ") + e.what());
  }

  const std::size_t n = s.plant.builtin ? s.make_plant().n : *s.plant.n;
  if (s.controller.c.size() != n)
    throw ScenarioError("controller.c has " + std::to_string(s.controller.c.size()) + " entries, plant order is " +
                        std::to_string(n));
  for (double tau : s.controller.taus)
    if (!(tau > 0.0)) throw ScenarioError("controller.tau must be positive");
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ScenarioError("scenario '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_scenario(doc);
}

PlantSpec Scenario::make_plant() const {
  try {
    if (plant.builtin) return builtin_plant(*plant.builtin, plant.seed);
    return expression_plant(*plant.n, plant.disturbance, plant.g, plant.gamma, plant.gamma_min, plant.phi,
                            plant.phi0, plant.seed);
  } catch (const ParameterError& e) {
    throw ScenarioError(e.what());
  } catch (const InvalidPlant& e) {
    throw ScenarioError(e.what());
  }
}

DesignRequest Scenario::design_request(double tau) const {
  const PlantSpec p = make_plant();
  DesignRequest r;
  r.c = controller.c;
  r.tau = tau;
  r.gamma_min = p.gamma_min;
  r.phi = p.phi;
  r.phi0 = p.phi0;
  r.alpha = controller.alpha;
  r.epsilon_fraction = sim.epsilon_fraction;
  return r;
}

SimConfig Scenario::sim_config() const {
  SimConfig c;
  c.x0 = sim.x0;
  c.dt_base = sim.dt_base;
  c.epsilon_fraction = sim.epsilon_fraction;
  c.record_stride = sim.record_stride;
  c.shrink_divisor = sim.shrink_divisor;
  c.stiffness_safety = sim.stiffness_safety;
  c.divergence_limit = sim.divergence_limit;
  c.audit = sim.audit;
  return c;
}

void Scenario::require_simulation() const {
  if (!sim.present || sim.x0.empty()) throw ScenarioError("sim.x0 is required to simulate");
  if (sim.x0.size() != controller.c.size()) throw ScenarioError("sim.x0 length does not match the plant order");
  if (controller.taus.empty()) throw ScenarioError("controller.tau is required");
}

}  // namespace ptc::cli
