#include "hatvol/lp.hpp"

#include "hatvol/errors.hpp"

namespace hatvol::lp {

Solution maximize(const linalg::Matrix& A, const Vec& b, const Vec& c) {
  const std::size_t m = A.size();
  const std::size_t n = c.size();
  if (b.size() != m) fail(ErrorKind::invalid_input, "LP: rhs size mismatch");
  for (const auto& row : A)
    if (row.size() != n) fail(ErrorKind::invalid_input, "LP: row size mismatch");
  for (const auto& bi : b)
    if (bi < 0) fail(ErrorKind::invalid_input, "LP: slack basis is infeasible (negative rhs)");

  // Tableau columns: n structural, m slack, rhs.
  const std::size_t cols = n + m;
  std::vector<Vec> t(m, Vec(cols + 1, Rational(0)));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = A[i][j];
    t[i][n + i] = 1;
    t[i][cols] = b[i];
  }
  // reduced[j] = c_j − z_j; reduced[cols] = −(objective value)
  Vec reduced(cols + 1, Rational(0));
  for (std::size_t j = 0; j < n; ++j) reduced[j] = c[j];
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  Solution sol;
  while (true) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j)
      if (reduced[j] > 0) {
        enter = j;
        break;
      }
    if (enter == cols) break;

    std::size_t leave = m;
    Rational best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][cols] / t[i][enter];
      if (leave == m || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) {
      sol.status = Status::unbounded;
      return sol;
    }

    Rational piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rational f = t[i][enter];
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
    }
    if (reduced[enter] != 0) {
      Rational f = reduced[enter];
      for (std::size_t j = 0; j <= cols; ++j) reduced[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
    ++sol.pivots;
  }

  sol.objective = -reduced[cols];
  sol.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) sol.x[basis[i]] = t[i][cols];
  sol.duals.resize(m);
  for (std::size_t i = 0; i < m; ++i) sol.duals[i] = -reduced[n + i];
  return sol;
}

}  // namespace hatvol::lp
