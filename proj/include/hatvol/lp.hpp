// Exact dense simplex method over the rationals with Bland's rule.
#pragma once

#include <vector>

#include "hatvol/linalg.hpp"
#include "hatvol/rational.hpp"

namespace hatvol::lp {

enum class Status { optimal, unbounded };

struct Solution {
  Status status = Status::optimal;
  Rational objective;
  Vec x;      // primal optimum
  Vec duals;  // one multiplier per constraint row, >= 0
  int pivots = 0;
};

/// maximize ⟨c, x⟩ subject to A x <= b, x >= 0, starting from the slack
/// basis. Requires b >= 0 (the origin is feasible); throws invalid-input
/// otherwise.
Solution maximize(const linalg::Matrix& A, const Vec& b, const Vec& c);

}  // namespace hatvol::lp
