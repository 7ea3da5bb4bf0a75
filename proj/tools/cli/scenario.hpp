#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ptc/controller.hpp"
#include "ptc/error.hpp"
#include "ptc/plant.hpp"
#include "ptc/sim.hpp"

namespace ptc::cli {

class ScenarioError : public Error {
 public:
  using Error::Error;
};

struct PlantSection {
  std::optional<std::string> builtin;
  std::optional<std::size_t> n;
  std::string disturbance;
  std::string g = "1";
  double gamma = 1.0;
  double gamma_min = 1.0;
  double phi = 0.0;
  double phi0 = 0.0;
  std::uint64_t seed = kDefaultPlantSeed;
};

struct ControllerSection {
  std::vector<double> c;
  std::vector<double> taus;
  std::optional<double> alpha;
};

struct SimSection {
  std::vector<double> x0;
  double dt_base = 1e-2;
  double epsilon_fraction = 1e-3;
  std::size_t record_stride = 1;
  double shrink_divisor = 50.0;
  double stiffness_safety = 0.5;
  double divergence_limit = 1e20;
  bool audit = true;
  bool present = false;
};

struct OutputSection {
  std::string dir = ".";
  std::string trace = "trace.csv";
  std::string report = "report.json";
};

/// Scenario file: JSON object with sections plant, controller, sim, output.
/// Unknown keys anywhere are rejected.
struct Scenario {
  PlantSection plant;
  ControllerSection controller;
  SimSection sim;
  OutputSection output;

  PlantSpec make_plant() const;
  /// Design request for one tau, bounds taken from the plant section.
  DesignRequest design_request(double tau) const;
  SimConfig sim_config() const;
  /// Throws ScenarioError unless every field needed to simulate is present.
  void require_simulation() const;
};

/// Throws ScenarioError on malformed or incomplete content.
Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace ptc::cli
