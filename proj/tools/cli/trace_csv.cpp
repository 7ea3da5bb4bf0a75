#include "cli/trace_csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace ptc::cli {

namespace {

void put(std::string& line, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  line += buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  cells.push_back(cur);
  return cells;
}

double parse_cell(const std::string& cell, std::size_t line_no) {
  if (cell.empty()) throw CsvError("empty value on line " + std::to_string(line_no));
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (end != cell.c_str() + cell.size() || (errno == ERANGE && std::abs(v) > 1.0))
    throw CsvError("invalid number '" + cell + "' on line " + std::to_string(line_no));
  return v;
}

}  // namespace

void write_trace_csv(std::ostream& out, const SimTrace& trace) {
  std::string line = "t";
  for (std::size_t i = 1; i <= trace.n; ++i) line += ",x" + std::to_string(i);
  line += ",u,norm_x,lambda_bound\n";
  out << line;
  for (std::size_t k = 0; k < trace.size(); ++k) {
    line.clear();
    put(line, trace.times[k]);
    for (double v : trace.state(k)) {
      line += ',';
      put(line, v);
    }
    line += ',';
    put(line, trace.inputs[k]);
    line += ',';
    put(line, trace.norms[k]);
    line += ',';
    put(line, trace.lambda_bounds[k]);
    line += '\n';
    out << line;
  }
}

void write_trace_csv(const std::filesystem::path& path, const SimTrace& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CsvError("cannot write '" + path.string() + "'");
  write_trace_csv(out, trace);
  if (!out) throw CsvError("write failed for '" + path.string() + "'");
}

SimTrace read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw CsvError("missing header row");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split(line);
  if (header.size() < 5 || header.front() != "t" || header[header.size() - 3] != "u" ||
      header[header.size() - 2] != "norm_x" || header.back() != "lambda_bound")
    throw CsvError("header must be t,x1..xn,u,norm_x,lambda_bound");
  SimTrace trace;
  trace.n = header.size() - 4;
  for (std::size_t i = 1; i <= trace.n; ++i)
    if (header[i] != "x" + std::to_string(i)) throw CsvError("unexpected header column '" + header[i] + "'");

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) throw CsvError("blank line " + std::to_string(line_no));
    const auto cells = split(line);
    if (cells.size() != header.size())
      throw CsvError("line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) + " columns, expected " +
                     std::to_string(header.size()));
    const double t = parse_cell(cells[0], line_no);
    if (!trace.times.empty() && !(t > trace.times.back()))
      throw CsvError("times must be strictly increasing (line " + std::to_string(line_no) + ")");
    trace.times.push_back(t);
    for (std::size_t i = 1; i <= trace.n; ++i) trace.states.push_back(parse_cell(cells[i], line_no));
    trace.inputs.push_back(parse_cell(cells[trace.n + 1], line_no));
    trace.norms.push_back(parse_cell(cells[trace.n + 2], line_no));
    trace.lambda_bounds.push_back(parse_cell(cells[trace.n + 3], line_no));
  }
  if (trace.times.empty()) throw CsvError("trace has no data rows");
  return trace;
}

SimTrace read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CsvError("cannot open '" + path.string() + "'");
  return read_trace_csv(in);
}

}  // namespace ptc::cli
