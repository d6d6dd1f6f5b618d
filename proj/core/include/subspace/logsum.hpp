#pragma once

#include <vector>

#include "subspace/place.hpp"

namespace subspace {

/// A finite sum Σ w_i·log(a_i) with rational weights and positive rational
/// arguments. Weil values and heights are all logs of rationals, so sums of
/// them stay exactly comparable.
class LogSum {
 public:
  struct Term {
    Rat weight;
    Rat argument;
    Real approx = 0;  // weight·log(argument) in floating point
  };

  LogSum() = default;

  /// Adds weight·log(argument). Throws DomainError for argument ≤ 0.
  void add(const Rat& weight, const Rat& argument);
  void add(const LogSum& other, const Rat& scale = 1);

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Compensated sum of the terms in insertion order.
  Real value() const;

  /// Sign of a − b. Settled in floating point when the gap dwarfs the
  /// rounding error bound, otherwise exactly by clearing weight denominators
  /// and comparing rational powers. Falls back to floats only when the exact
  /// operands would exceed `bit_budget` bits.
  static int compare(const LogSum& a, const LogSum& b,
                     std::size_t bit_budget = std::size_t{1} << 22);

 private:
  std::vector<Term> terms_;
};

}  // namespace subspace
