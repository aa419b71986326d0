#pragma once

#include <stdexcept>
#include <string>

namespace hatvol {

enum class ErrorKind {
  // validation (exit code 2)
  invalid_input,
  empty_input,
  unsupported_dimension,
  invalid_cone,
  empty_slice,
  monotonicity_violation,
  infinite_colength,
  infinite_covolume,
  invalid_weight,
  boundary_valuation,
  infinite_volume,
  not_q_gorenstein,
  not_anticanonical_polytope,
  lct_undefined,
  infeasible_c,
  // resource limits (exit code 3)
  enumeration_budget_exceeded,
  non_converged,
  // internal invariant violations (exit code 4)
  oracle_disagreement,
  invariant_violation,
};

/// Stable machine-readable name, e.g. "empty-slice".
const char* error_name(ErrorKind kind);

/// Process exit code used by the CLI for this kind of failure.
int exit_code_for(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  const char* name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

/// Throws invariant_violation when `cond` is false.
inline void ensure(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::invariant_violation, what);
}

}  // namespace hatvol
