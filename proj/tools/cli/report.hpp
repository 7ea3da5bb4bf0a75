#pragma once

#include <json.hpp>

#include "ptc/analysis.hpp"
#include "ptc/controller.hpp"
#include "ptc/plant.hpp"
#include "ptc/sim.hpp"

namespace ptc::cli {

nlohmann::json to_json(const ControllerDesign& design);
nlohmann::json to_json(const StabilityCertificate& cert);
nlohmann::json to_json(const InputBoundednessReport& report);
nlohmann::json to_json(const PlantSpec& plant);
nlohmann::json trace_summary(const SimTrace& trace);

}  // namespace ptc::cli
