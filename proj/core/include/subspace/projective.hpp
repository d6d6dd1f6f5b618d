#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "subspace/linalg.hpp"
#include "subspace/rational.hpp"

namespace subspace {

using Exponent = std::vector<int>;

/// Canonical representative of a nonzero rational vector up to scaling:
/// coprime integers with the first nonzero entry positive. `scale` is the
/// rational factor with canonical = scale · raw.
struct PrimitiveVector {
  std::vector<Integer> entries;
  Rat scale;
};

/// Throws ArgumentError for the zero vector.
PrimitiveVector make_primitive(std::span<const Rat> raw);

/// A point of P^M with coprime integer coordinates, first nonzero one
/// positive. Every stored point is in this form.
class ProjPoint {
 public:
  /// Normalizes; throws ArgumentError if every coordinate is zero.
  static ProjPoint from_rationals(std::span<const Rat> coords);
  static ProjPoint from_integers(std::span<const Integer> coords);
  static ProjPoint of(std::initializer_list<long> coords);

  int dim() const { return static_cast<int>(coords_.size()) - 1; }
  const std::vector<Integer>& coords() const { return coords_; }
  std::vector<Rat> rationals() const;

  /// "[2:3:5]"
  std::string to_string() const;

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
  friend bool operator<(const ProjPoint& a, const ProjPoint& b) { return a.coords_ < b.coords_; }

 private:
  explicit ProjPoint(std::vector<Integer> c) : coords_(std::move(c)) {}
  std::vector<Integer> coords_;
};

/// Σ a_i x_i with coprime integer coefficients, first nonzero one positive.
class LinearForm {
 public:
  static LinearForm from_rationals(std::span<const Rat> coeffs);
  static LinearForm from_integers(std::span<const Integer> coeffs);
  static LinearForm of(std::initializer_list<long> coeffs);
  /// The coordinate form x_i on P^M.
  static LinearForm coordinate(int dim, int i);

  int dim() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Integer>& coeffs() const { return coeffs_; }
  std::vector<Rat> rationals() const;
  std::size_t nonzero_count() const;

  /// "x0 - x1 + 2*x2"
  std::string to_string() const;

  friend bool operator==(const LinearForm&, const LinearForm&) = default;
  friend bool operator<(const LinearForm& a, const LinearForm& b) { return a.coeffs_ < b.coeffs_; }

 private:
  explicit LinearForm(std::vector<Integer> c) : coeffs_(std::move(c)) {}
  std::vector<Integer> coeffs_;
};

/// All exponent vectors of total degree d in M+1 variables, in
/// graded-lexicographic order (x0^d first, x_M^d last).
std::vector<Exponent> monomials(int dim, int degree);

/// Number of degree-d monomials in M+1 variables, C(M+d, d).
std::size_t monomial_count(int dim, int degree);

/// Position of `exponent` in `monomials(dim, sum(exponent))`.
std::size_t monomial_index(const Exponent& exponent);

/// A nonzero homogeneous form of degree d ≥ 1, coefficients indexed by
/// `monomials(dim, degree)` and normalized like LinearForm.
class HomForm {
 public:
  struct Term {
    Exponent exponent;
    Rat coeff;
  };

  /// Terms may repeat exponents (they are summed). Throws ArgumentError on a
  /// degree or dimension mismatch or if the form is identically zero.
  static HomForm from_terms(int dim, int degree, std::span<const Term> terms);
  /// Coefficients already in graded-lex order.
  static HomForm from_dense(int dim, int degree, std::span<const Rat> coeffs);
  static HomForm from_linear(const LinearForm& form);

  /// Product of two forms on the same P^M, normalized.
  static HomForm product(const HomForm& a, const HomForm& b);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  const std::vector<Integer>& coeffs() const { return coeffs_; }
  std::vector<Term> terms() const;  // nonzero terms only
  std::size_t nonzero_count() const;
  bool is_linear() const { return degree_ == 1; }
  LinearForm as_linear() const;  // requires degree 1

  std::string to_string() const;

  friend bool operator==(const HomForm&, const HomForm&) = default;
  friend bool operator<(const HomForm& a, const HomForm& b) {
    if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
    if (a.degree_ != b.degree_) return a.degree_ < b.degree_;
    return a.coeffs_ < b.coeffs_;
  }

 private:
  HomForm(int dim, int degree, std::vector<Integer> c)
      : dim_(dim), degree_(degree), coeffs_(std::move(c)) {}
  int dim_ = 0;
  int degree_ = 0;
  std::vector<Integer> coeffs_;
};

/// A linear subvariety X ⊂ P^M cut out by independent linear forms;
/// dim X = M − #forms ≥ 1.
class LinearSubvariety {
 public:
  static LinearSubvariety ambient(int dim);
  /// Throws ArgumentError if the forms are dependent, of the wrong
  /// dimension, or leave dim X < 1.
  static LinearSubvariety cut_out(int ambient_dim, std::vector<LinearForm> forms);

  int ambient_dim() const { return ambient_dim_; }
  int dim() const { return ambient_dim_ - static_cast<int>(forms_.size()); }
  const std::vector<LinearForm>& forms() const { return forms_; }
  bool is_ambient() const { return forms_.empty(); }

  bool contains(const ProjPoint& p) const;
  /// Integer basis B_0..B_n of the affine cone of X; points of X are the
  /// nonzero combinations Σ u_i B_i.
  std::vector<std::vector<Integer>> parametrization() const;

  friend bool operator==(const LinearSubvariety&, const LinearSubvariety&) = default;

 private:
  LinearSubvariety(int m, std::vector<LinearForm> f) : ambient_dim_(m), forms_(std::move(f)) {}
  int ambient_dim_ = 1;
  std::vector<LinearForm> forms_;
};

ProjPoint normalize_point(std::span<const Rat> raw);

/// Exact value on the stored coordinates. Throws ArgumentError on a
/// dimension mismatch.
Integer evaluate(const LinearForm& form, const ProjPoint& p);
Integer evaluate(const HomForm& form, const ProjPoint& p);
/// Evaluation on an arbitrary (not necessarily normalized) vector.
Rat evaluate(const LinearForm& form, std::span<const Rat> x);

struct VeronesePoint {
  ProjPoint point;
  /// The monomial vector equals scalar · point.
  Integer scalar;
};

struct VeroneseForm {
  LinearForm form;
  /// form's coefficients = scalar · (source coefficients in monomial order).
  Rat scalar;
};

/// Image under the degree-d Veronese map, in P^{C(M+d,d)−1}.
VeronesePoint veronese_point(const ProjPoint& p, int degree);
VeroneseForm veronese_form(const HomForm& form);

/// The rational r with evaluate(vf.form, vp.point) = r · evaluate(F, P),
/// i.e. vf.scalar / vp.scalar.
Rat veronese_ratio(const VeronesePoint& vp, const VeroneseForm& vf);

linalg::Matrix as_matrix(std::span<const LinearForm> forms);
linalg::Vector as_vector(const LinearForm& form);
linalg::Vector as_vector(const ProjPoint& p);

}  // namespace subspace
