#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "subspace/rational.hpp"

namespace subspace::linalg {

using Vector = std::vector<Rat>;
using Matrix = std::vector<Vector>;  // row-major, every row the same length

struct Echelon {
  Matrix rows;                       // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;   // pivot column of each row
};

/// Gauss-Jordan elimination over Q.
Echelon reduced_row_echelon(Matrix rows);

std::size_t rank(const Matrix& rows);

/// Basis of {x : rows · x = 0} in Q^cols; each basis vector is scaled to
/// coprime integers. `cols` is needed when `rows` is empty.
Matrix nullspace(const Matrix& rows, std::size_t cols);

bool in_row_space(const Matrix& rows, const Vector& v);

/// Basis of rowspace(a) ∩ rowspace(b), both in Q^cols.
Matrix row_space_intersection(const Matrix& a, const Matrix& b, std::size_t cols);

/// A row space in reduced echelon form, for repeated membership tests.
class RowSpace {
 public:
  RowSpace() = default;
  explicit RowSpace(const Matrix& spanning);

  std::size_t dim() const { return echelon_.pivots.size(); }
  bool contains(const Vector& v) const;

 private:
  Echelon echelon_;
};

/// Coefficients c with Σ c_i rows_i = target, if any. When rows are
/// dependent the returned solution sets free coefficients to zero.
std::optional<Vector> solve_combination(const Matrix& rows, const Vector& target);

/// Nonzero rational s such that s·v has coprime integer entries whose first
/// nonzero entry is positive. Returns 0 for the zero vector.
Rat primitive_scale(const Vector& v);

}  // namespace subspace::linalg
