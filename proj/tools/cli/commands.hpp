#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ptc::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInfeasible = 2,
  kExitInconclusive = 3,
  kExitDivergence = 4,
};

/// Command-line overrides applied on top of the scenario file.
struct Overrides {
  std::vector<double> taus;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<double> epsilon;
  std::optional<double> dt;
};

struct TableOptions {
  std::size_t n = 0;
  bool numeric = false;
  std::string scenario;  ///< needed for numeric tables
  Overrides overrides;
};

struct VerifyOptions {
  std::string csv;
  double tau = 0.0;
  std::optional<double> x0_norm;  ///< defaults to the first norm_x in the file
};

int cmd_design(const std::string& scenario_path, const Overrides& overrides, std::ostream& out, std::ostream& err);
int cmd_simulate(const std::string& scenario_path, const Overrides& overrides, std::ostream& out,
                 std::ostream& err);
int cmd_table(const TableOptions& options, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err);

/// Sweep parallelism: PTC_LAB_THREADS if set and positive, else hardware concurrency.
unsigned sweep_threads(std::size_t runs);

}  // namespace ptc::cli
