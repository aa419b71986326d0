#include "hatvol/linalg.hpp"

#include <utility>

namespace hatvol::linalg {

Matrix to_matrix(const std::vector<IntVec>& rows) {
  Matrix m;
  m.reserve(rows.size());
  for (const auto& r : rows) m.push_back(to_vec(r));
  return m;
}

std::vector<int> rref(Matrix& m, int cols) {
  std::vector<int> pivots;
  std::size_t row = 0;
  for (int col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    Rational inv = 1 / m[row][col];
    for (int j = col; j < cols; ++j) m[row][j] *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (int j = col; j < cols; ++j) m[r][j] -= f * m[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int rank(Matrix m, int cols) { return static_cast<int>(rref(m, cols).size()); }

int rank(const std::vector<IntVec>& rows, int cols) { return rank(to_matrix(rows), cols); }

Matrix nullspace(Matrix m, int cols) {
  auto pivots = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;
  Matrix basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec x(cols, Rational(0));
    x[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -m[r][free];
    basis.push_back(std::move(x));
  }
  return basis;
}

Rational determinant(Matrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && m[sel][col] == 0) ++sel;
    if (sel == n) return 0;
    if (sel != col) {
      std::swap(m[sel], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t j = col; j < n; ++j) m[r][j] -= f * m[col][j];
    }
  }
  return det;
}

Rational determinant(const std::vector<IntVec>& rows) { return determinant(to_matrix(rows)); }

std::optional<Vec> solve_unique(const Matrix& m, const Vec& rhs) {
  if (m.empty()) return std::nullopt;
  const int cols = static_cast<int>(m.front().size());
  Matrix aug;
  aug.reserve(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    Vec row = m[i];
    row.push_back(rhs[i]);
    aug.push_back(std::move(row));
  }
  auto pivots = rref(aug, cols + 1);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;  // 0 = 1
  if (static_cast<int>(pivots.size()) != cols) return std::nullopt;
  Vec x(cols);
  for (int r = 0; r < cols; ++r) x[pivots[r]] = aug[r][cols];
  return x;
}

}  // namespace hatvol::linalg
