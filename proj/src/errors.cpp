#include "hatvol/errors.hpp"

namespace hatvol {

const char* error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::empty_input: return "empty-input";
    case ErrorKind::unsupported_dimension: return "unsupported-dimension";
    case ErrorKind::invalid_cone: return "invalid-cone";
    case ErrorKind::empty_slice: return "empty-slice";
    case ErrorKind::monotonicity_violation: return "monotonicity-violation";
    case ErrorKind::infinite_colength: return "infinite-colength";
    case ErrorKind::infinite_covolume: return "infinite-covolume";
    case ErrorKind::invalid_weight: return "invalid-weight";
    case ErrorKind::boundary_valuation: return "boundary-valuation";
    case ErrorKind::infinite_volume: return "infinite-volume";
    case ErrorKind::not_q_gorenstein: return "not-q-gorenstein";
    case ErrorKind::not_anticanonical_polytope: return "not-anticanonical-polytope";
    case ErrorKind::lct_undefined: return "lct-undefined";
    case ErrorKind::infeasible_c: return "infeasible-c";
    case ErrorKind::enumeration_budget_exceeded: return "enumeration-budget-exceeded";
    case ErrorKind::non_converged: return "non-converged";
    case ErrorKind::oracle_disagreement: return "oracle-disagreement";
    case ErrorKind::invariant_violation: return "invariant-violation";
  }
  return "unknown";
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::enumeration_budget_exceeded:
    case ErrorKind::non_converged:
      return 3;
    case ErrorKind::oracle_disagreement:
    case ErrorKind::invariant_violation:
      return 4;
    default:
      return 2;
  }
}

}  // namespace hatvol
