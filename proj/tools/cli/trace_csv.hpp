#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "ptc/error.hpp"
#include "ptc/sim.hpp"

namespace ptc::cli {

class CsvError : public Error {
 public:
  using Error::Error;
};

/// Column order: t, x1..xn, u, norm_x, lambda_bound; 17 significant digits,
/// header row first, every line newline-terminated.
void write_trace_csv(std::ostream& out, const SimTrace& trace);
void write_trace_csv(const std::filesystem::path& path, const SimTrace& trace);

/// Parses a file written by write_trace_csv. Fills times, states, inputs,
/// norms and lambda_bounds; tau and x0_norm are left at zero.
/// Throws CsvError on any malformed line or header.
SimTrace read_trace_csv(std::istream& in);
SimTrace read_trace_csv(const std::filesystem::path& path);

}  // namespace ptc::cli
