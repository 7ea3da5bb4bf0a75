#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli/commands.hpp"

namespace {

void add_overrides(CLI::App* cmd, ptc::cli::Overrides& o, std::optional<std::uint64_t>& seed,
                   std::optional<std::string>& out_dir, std::optional<double>& epsilon, std::optional<double>& dt) {
  cmd->add_option("--tau", o.taus, "Horizon; repeat for a sweep");
  cmd->add_option("--seed", seed, "Plant RNG seed");
  cmd->add_option("--out-dir", out_dir, "Directory for traces and reports");
  cmd->add_option("--epsilon", epsilon, "Guard fraction: stop at tau (1 - epsilon)");
  cmd->add_option("--dt", dt, "Base RK4 step");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prescribed-time controller design and simulation"};
  app.require_subcommand(1);

  std::string scenario;
  ptc::cli::Overrides overrides;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<double> epsilon;
  std::optional<double> dt;

  auto* design = app.add_subcommand("design", "Compute alpha, Lyapunov data and bounds");
  design->add_option("--scenario", scenario, "Scenario file")->required();
  add_overrides(design, overrides, seed, out_dir, epsilon, dt);

  auto* simulate = app.add_subcommand("simulate", "Run the closed loop and certify the trace");
  simulate->add_option("--scenario", scenario, "Scenario file")->required();
  add_overrides(simulate, overrides, seed, out_dir, epsilon, dt);

  ptc::cli::TableOptions table_opts;
  auto* table = app.add_subcommand("table", "Print the gain table");
  table->add_option("--n", table_opts.n, "System order");
  table->add_flag("--numeric", table_opts.numeric, "Evaluate coefficients for a scenario");
  table->add_option("--scenario", table_opts.scenario, "Scenario file for --numeric");
  add_overrides(table, overrides, seed, out_dir, epsilon, dt);

  ptc::cli::VerifyOptions verify_opts;
  std::optional<double> x0_norm;
  auto* verify = app.add_subcommand("verify", "Certify an existing trace CSV");
  verify->add_option("--csv", verify_opts.csv, "Trace file")->required();
  verify->add_option("--tau", verify_opts.tau, "Horizon")->required();
  verify->add_option("--x0-norm", x0_norm, "Initial-state norm; defaults to the first norm_x");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ptc::cli::kExitUsage;
  }

  overrides.seed = seed;
  overrides.out_dir = out_dir;
  overrides.epsilon = epsilon;
  overrides.dt = dt;

  if (*design) return ptc::cli::cmd_design(scenario, overrides, std::cout, std::cerr);
  if (*simulate) return ptc::cli::cmd_simulate(scenario, overrides, std::cout, std::cerr);
  if (*table) {
    if (!table_opts.numeric && table->count("--n") == 0) {
      std::cerr << "error: --n is required\n";
      return ptc::cli::kExitUsage;
    }
    table_opts.overrides = overrides;
    return ptc::cli::cmd_table(table_opts, std::cout, std::cerr);
  }
  verify_opts.x0_norm = x0_norm;
  return ptc::cli::cmd_verify(verify_opts, std::cout, std::cerr);
}
