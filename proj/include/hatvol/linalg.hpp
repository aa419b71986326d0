// Small dense exact linear algebra over the rationals (dimension <= 5 in
// practice). Matrices are row lists.
#pragma once

#include <optional>
#include <vector>

#include "hatvol/rational.hpp"

namespace hatvol::linalg {

using Matrix = std::vector<Vec>;

Matrix to_matrix(const std::vector<IntVec>& rows);

/// Reduced row echelon form in place; returns pivot column indices.
std::vector<int> rref(Matrix& m, int cols);

int rank(Matrix m, int cols);
int rank(const std::vector<IntVec>& rows, int cols);

/// Basis of {x : m x = 0}.
Matrix nullspace(Matrix m, int cols);

Rational determinant(Matrix m);
Rational determinant(const std::vector<IntVec>& rows);

/// Unique solution of m x = rhs, or nullopt when inconsistent or
/// underdetermined.
std::optional<Vec> solve_unique(const Matrix& m, const Vec& rhs);

}  // namespace hatvol::linalg
