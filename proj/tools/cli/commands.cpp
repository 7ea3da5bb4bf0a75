#include "cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "cli/report.hpp"
#include "cli/scenario.hpp"
#include "cli/trace_csv.hpp"
#include "ptc/analysis.hpp"
#include "ptc/controller.hpp"
#include "ptc/error.hpp"
#include "ptc/sim.hpp"

namespace ptc::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

Scenario load_with_overrides(const std::string& path, const Overrides& o) {
  Scenario s = load_scenario(path);
  if (!o.taus.empty()) s.controller.taus = o.taus;
  if (o.seed) s.plant.seed = *o.seed;
  if (o.out_dir) s.output.dir = *o.out_dir;
  if (o.epsilon) s.sim.epsilon_fraction = *o.epsilon;
  if (o.dt) s.sim.dt_base = *o.dt;
  for (double tau : s.controller.taus)
    if (!(tau > 0.0)) throw ScenarioError("tau must be positive");
  return s;
}

std::string tau_tag(double tau) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", tau);
  return buf;
}

fs::path trace_path(const Scenario& s, double tau, bool sweep) {
  fs::path name = s.output.trace;
  if (sweep) name = name.stem().string() + "_tau" + tau_tag(tau) + name.extension().string();
  return fs::path(s.output.dir) / name;
}

void write_json(const fs::path& path, const json& doc) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path.string());
  f << doc.dump(2) << '\n';
}

void print_certificate(std::ostream& out, double tau, const StabilityCertificate& c) {
  out << "tau=" << tau << " verdict=" << to_string(c.verdict) << " sigma=" << c.sigma;
  if (c.varsigma) out << " varsigma=" << *c.varsigma;
  if (c.t0) out << " t0=" << *c.t0;
  out << " final_norm=" << c.final_norm << '\n';
}

}  // namespace

unsigned sweep_threads(std::size_t runs) {
  unsigned limit = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PTC_LAB_THREADS")) {
    unsigned v = 0;
    const char* end = env + std::char_traits<char>::length(env);
    auto [p, ec] = std::from_chars(env, end, v);
    if (ec == std::errc() && p == end && v > 0) limit = v;
  }
  return static_cast<unsigned>(std::min<std::size_t>(limit, std::max<std::size_t>(runs, 1)));
}

int cmd_design(const std::string& scenario_path, const Overrides& overrides, std::ostream& out, std::ostream& err) {
  try {
    const Scenario s = load_with_overrides(scenario_path, overrides);
    if (s.controller.taus.empty()) throw ScenarioError("controller.tau is required");
    json designs = json::array();
    for (double tau : s.controller.taus) designs.push_back(to_json(design_controller(s.design_request(tau))));
    json doc = designs.size() == 1 ? designs.front() : json{{"designs", designs}};
    out << doc.dump(2) << '\n';
    return kExitOk;
  } catch (const InfeasibleDesign& e) {
    err << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int cmd_simulate(const std::string& scenario_path, const Overrides& overrides, std::ostream& out,
                 std::ostream& err) {
  Scenario s;
  try {
    s = load_with_overrides(scenario_path, overrides);
    s.require_simulation();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const bool is_sweep = s.controller.taus.size() > 1;
  const fs::path out_dir = s.output.dir;
  try {
    fs::create_directories(out_dir);
    const PlantSpec plant = s.make_plant();
    const SimConfig cfg = s.sim_config();
    const std::vector<double>& taus = s.controller.taus;

    // Designs are checked up front so an infeasible tau fails before any run.
    std::vector<ControllerDesign> designs;
    for (double tau : taus) designs.push_back(design_controller(s.design_request(tau)));

    std::vector<SimTrace> traces = sweep(plant, s.design_request(taus.front()), taus, cfg, sweep_threads(taus.size()));

    json runs = json::array();
    bool all_certified = true;
    for (std::size_t k = 0; k < traces.size(); ++k) {
      const SimTrace& tr = traces[k];
      const fs::path csv = trace_path(s, taus[k], is_sweep);
      write_trace_csv(csv, tr);
      const StabilityCertificate cert = certify(tr, tr.x0_norm, tr.tau);
      if (cert.verdict == Verdict::inconclusive) all_certified = false;
      print_certificate(out, taus[k], cert);
      runs.push_back(json{{"tau", taus[k]},
                          {"trace", csv.string()},
                          {"x0_norm", tr.x0_norm},
                          {"design", to_json(designs[k])},
                          {"summary", trace_summary(tr)},
                          {"certificate", to_json(cert)},
                          {"input", to_json(check_input_boundedness(tr))}});
    }
    write_json(out_dir / s.output.report, json{{"plant", to_json(plant)}, {"runs", runs}});
    return all_certified ? kExitOk : kExitInconclusive;
  } catch (const DivergenceError& e) {
    err << "error: " << e.what() << '\n';
    try {
      const SimTrace& partial = e.partial();
      const fs::path csv = trace_path(s, partial.tau, is_sweep);
      write_trace_csv(csv, partial);
      err << "partial trace written to " << csv.string() << '\n';
    } catch (const std::exception& w) {
      err << "error: " << w.what() << '\n';
    }
    return kExitDivergence;
  } catch (const InfeasibleDesign& e) {
    err << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int cmd_table(const TableOptions& o, std::ostream& out, std::ostream& err) {
  try {
    if (!o.numeric) {
      if (o.n < 1 || o.n > 20) throw ParameterError("n must be in [1, 20]");
      for (const StateGain& g : symbolic_gains(o.n)) out << g.to_string() << '\n';
      return kExitOk;
    }
    if (o.scenario.empty()) throw ParameterError("--numeric needs --scenario");
    const Scenario s = load_with_overrides(o.scenario, o.overrides);
    if (s.controller.taus.empty()) throw ScenarioError("controller.tau is required");
    for (double tau : s.controller.taus) {
      const ControllerDesign d = design_controller(s.design_request(tau));
      const GainSchedule sched(d);
      out << "tau=" << tau << " alpha=" << d.alpha << '\n';
      char buf[96];
      for (std::size_t i = 0; i < sched.order(); ++i) {
        std::snprintf(buf, sizeof buf, "p%zu = %.17g/(tau-t)^%d\n", i + 1, sched.numerators()[i],
                      sched.rows()[i].tau_power);
        out << buf;
      }
    }
    return kExitOk;
  } catch (const InfeasibleDesign& e) {
    err << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  try {
    if (!(o.tau > 0.0)) throw ParameterError("--tau must be positive");
    const SimTrace tr = read_trace_csv(fs::path(o.csv));
    if (tr.empty()) throw CsvError("trace has no samples");
    const double x0_norm = o.x0_norm.value_or(tr.norms.front());
    const StabilityCertificate cert = certify(tr, x0_norm, o.tau);
    out << json{{"tau", o.tau}, {"x0_norm", x0_norm}, {"certificate", to_json(cert)}}.dump(2) << '\n';
    return cert.verdict == Verdict::inconclusive ? kExitInconclusive : kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace ptc::cli
