// Command-line front end: job specification, dispatch to the engines, and
// report emission.
#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hatvol/errors.hpp"
#include "hatvol/io.hpp"

namespace hatvol::cli {

using io::json;

const std::vector<std::string>& commands();

struct JobSpec {
  std::string command;
  std::string model_path, ideal_path, body_path;
  std::string format = "json";  // json | csv
  /// c, k, k-min, k-max, k-range, mode, tol, epsilon, delta, q, threads,
  /// suite, inject-fault; values as given on the command line.
  std::map<std::string, std::string> params;
};

struct ReportRecord {
  json job;                 // echo of the JobSpec
  json result;              // deterministic payload
  double timing_ms = 0;
  std::vector<std::string> warnings;
  std::string csv;          // scan and lattice tables
  std::string text;         // verify: per-criterion table
  int exit_code = 0;
};

/// Dispatches the job. Throws hatvol::Error on validation, budget and
/// invariant failures.
ReportRecord run(const JobSpec& job);

/// Result fields at top level plus "job", "parameters", "timing_ms", "warnings".
json report_json(const ReportRecord& r);

/// Structural check of an emitted report: value, exact, method, job,
/// parameters; exact string values must parse as rationals.
bool validate_report(const json& report, std::string* why = nullptr);

/// {"error", "message", "exit_code"}.
json error_json(const Error& e);

/// Full CLI: argument parsing, precedence CLI > HATVOL_* env > --config
/// file > defaults, output to `out` (or --out), errors as JSON on `err`.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hatvol::cli
