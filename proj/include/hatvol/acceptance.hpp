// Acceptance suite: the nine end-to-end criteria, each reported with a
// measured value, its tolerance and wall time.
#pragma once

#include <string>
#include <vector>

namespace hatvol::acceptance {

enum class Suite { fast, full };

struct Options {
  Suite suite = Suite::fast;
  int threads = 1;
  bool fault_mult_off_by_nfact = false;
  std::vector<int> only;  // criterion ids to run; empty runs all
};

struct CriterionResult {
  int id;
  std::string name;
  bool pass;
  std::string measured;
  std::string tolerance;
  double seconds;
  double budget_seconds;
  std::vector<std::string> notes;
};

/// Criteria 1..9 in order (or those in `only`). A criterion that throws is reported as failed
/// with the error in `measured`.
std::vector<CriterionResult> run_suite(const Options& opts);

/// One line per criterion: "[PASS] 1 name | measured | tolerance | time".
std::string format_line(const CriterionResult& r);

}  // namespace hatvol::acceptance
