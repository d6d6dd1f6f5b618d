#include "subspace/linalg.hpp"

#include <utility>

#include "subspace/error.hpp"

namespace subspace::linalg {

Echelon reduced_row_echelon(Matrix rows) {
  Echelon out;
  if (rows.empty()) return out;
  const std::size_t cols = rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != cols) throw ArgumentError("ragged matrix");
  }
  std::size_t lead = 0;
  for (std::size_t col = 0; col < cols && lead < rows.size(); ++col) {
    std::size_t pivot = lead;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[lead], rows[pivot]);
    Rat inv = 1 / rows[lead][col];
    for (auto& x : rows[lead]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == lead || rows[i][col] == 0) continue;
      Rat f = rows[i][col];
      for (std::size_t j = col; j < cols; ++j) rows[i][j] -= f * rows[lead][j];
    }
    out.pivots.push_back(col);
    ++lead;
  }
  rows.resize(lead);
  out.rows = std::move(rows);
  return out;
}

std::size_t rank(const Matrix& rows) { return reduced_row_echelon(rows).pivots.size(); }

Matrix nullspace(const Matrix& rows, std::size_t cols) {
  auto ech = reduced_row_echelon(rows);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  Matrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector v(cols, Rat(0));
    v[free] = 1;
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) v[ech.pivots[i]] = -ech.rows[i][free];
    Rat s = primitive_scale(v);
    for (auto& x : v) x *= s;
    basis.push_back(std::move(v));
  }
  return basis;
}

bool in_row_space(const Matrix& rows, const Vector& v) {
  Matrix ext = rows;
  ext.push_back(v);
  return rank(ext) == rank(rows);
}

Matrix row_space_intersection(const Matrix& a, const Matrix& b, std::size_t cols) {
  if (a.empty() || b.empty()) return {};
  // Solutions (α, β) of Σ α_i a_i − Σ β_j b_j = 0 give the common vectors Σ α_i a_i.
  const std::size_t unknowns = a.size() + b.size();
  Matrix system(cols, Vector(unknowns, Rat(0)));
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t i = 0; i < a.size(); ++i) system[c][i] = a[i][c];
    for (std::size_t j = 0; j < b.size(); ++j) system[c][a.size() + j] = -b[j][c];
  }
  Matrix spanning;
  for (const auto& sol : nullspace(system, unknowns)) {
    Vector v(cols, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (sol[i] == 0) continue;
      for (std::size_t c = 0; c < cols; ++c) v[c] += sol[i] * a[i][c];
    }
    spanning.push_back(std::move(v));
  }
  Matrix basis = reduced_row_echelon(std::move(spanning)).rows;
  for (auto& v : basis) {
    Rat s = primitive_scale(v);
    for (auto& x : v) x *= s;
  }
  return basis;
}

RowSpace::RowSpace(const Matrix& spanning) : echelon_(reduced_row_echelon(spanning)) {}

bool RowSpace::contains(const Vector& v) const {
  Vector r = v;
  for (std::size_t i = 0; i < echelon_.pivots.size(); ++i) {
    const Rat f = r[echelon_.pivots[i]];
    if (f == 0) continue;
    for (std::size_t j = 0; j < r.size(); ++j) r[j] -= f * echelon_.rows[i][j];
  }
  for (const auto& x : r) {
    if (x != 0) return false;
  }
  return true;
}

std::optional<Vector> solve_combination(const Matrix& rows, const Vector& target) {
  const std::size_t cols = target.size();
  const std::size_t unknowns = rows.size();
  // Augmented system with one equation per coordinate.
  Matrix aug(cols, Vector(unknowns + 1, Rat(0)));
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t i = 0; i < unknowns; ++i) aug[c][i] = rows[i][c];
    aug[c][unknowns] = target[c];
  }
  auto ech = reduced_row_echelon(std::move(aug));
  Vector sol(unknowns, Rat(0));
  for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
    if (ech.pivots[i] == unknowns) return std::nullopt;
    sol[ech.pivots[i]] = ech.rows[i][unknowns];
  }
  return sol;
}

Rat primitive_scale(const Vector& v) {
  Integer den_lcm = 1;
  for (const auto& x : v) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den_mpz_t());
  Integer num_gcd = 0;
  const Rat* first = nullptr;
  for (const auto& x : v) {
    if (x == 0) continue;
    if (!first) first = &x;
    Integer n = x.get_num() * (den_lcm / x.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
  }
  if (!first) return 0;
  Rat s = make_rat(den_lcm, num_gcd);
  if (sgn(*first) < 0) s = -s;
  return s;
}

}  // namespace subspace::linalg
