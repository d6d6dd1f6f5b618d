#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "subspace/rational.hpp"

namespace subspace {

/// Floating type used for every approximate (natural-log scale) value.
/// All ulp tolerances in the library and its tests are ulps of this type.
using Real = double;

bool is_prime(const Integer& n);

/// Prime factorization of |n| (n ≠ 0), ascending primes.
std::vector<std::pair<Integer, long>> factor(const Integer& n);

/// A place of Q: the archimedean absolute value or the p-adic one.
class Place {
 public:
  static Place infinity();
  /// Throws ArgumentError when p is not a prime ≥ 2.
  static Place finite(const Integer& p);
  static Place finite(long p);
  /// Parses "inf" or "p=<prime>"; a bare prime is accepted too.
  static Place parse(std::string_view text);

  bool is_archimedean() const { return archimedean_; }
  /// The prime of a finite place; 0 for the archimedean place.
  const Integer& prime() const { return prime_; }

  std::string to_string() const;

  friend bool operator==(const Place& a, const Place& b) {
    return a.archimedean_ == b.archimedean_ && a.prime_ == b.prime_;
  }
  /// Archimedean place first, then finite places by prime.
  friend bool operator<(const Place& a, const Place& b) {
    if (a.archimedean_ != b.archimedean_) return a.archimedean_;
    return a.prime_ < b.prime_;
  }

 private:
  Place(bool archimedean, Integer p) : archimedean_(archimedean), prime_(std::move(p)) {}

  bool archimedean_ = true;
  Integer prime_ = 0;
};

/// log ∥x∥_v. At a finite place p the value is exactly −e·log p and the
/// pair (p, e) is kept alongside the float.
struct LogNorm {
  struct Exact {
    Integer prime;
    long exponent = 0;  // ord_p(x)
  };
  std::optional<Exact> exact;
  Real approx = 0;
};

/// Normalized absolute value on the log scale: ∥x∥_∞ = |x|, ∥p∥_p = 1/p.
/// Throws DomainError for x = 0.
LogNorm norm(const Rat& x, const Place& v);

/// ∥x∥_v as an exact rational (|x| at ∞, p^{−ord_p x} at p); 0 for x = 0.
Rat abs_value(const Rat& x, const Place& v);

/// Sign of ∥a∥_v − ∥b∥_v, decided exactly.
int compare_abs(const Rat& a, const Rat& b, const Place& v);

/// ord_p(x). Throws DomainError for x = 0, ArgumentError for non-prime p.
long ord(const Rat& x, const Integer& p);

/// Every place's contribution to Σ_v log∥x∥_v for nonzero x.
struct ProductFormulaLedger {
  /// (p, ord_p(x)) over primes dividing numerator·denominator, ascending.
  std::vector<std::pair<Integer, long>> finite;
  /// |x|, whose log is the archimedean term.
  Rat archimedean;
  Real archimedean_log = 0;

  /// |x| / Π p^{ord_p(x)}; the product formula holds iff this is 1.
  Rat residual_ratio() const;
  bool exact_zero() const { return residual_ratio() == 1; }
  /// Float evaluation of the residual, for display.
  Real residual_approx() const;
};

ProductFormulaLedger product_formula_residual(const Rat& x);

}  // namespace subspace
