#pragma once

#include <span>
#include <vector>

#include "subspace/projective.hpp"

namespace subspace {

/// A subfamily J whose common zero locus on X is too large.
struct PositionWitness {
  std::vector<int> indices;  // 0-based, ascending
  int dimension = 0;         // dim((∩_{j∈J} Supp) ∩ X)
  int bound = 0;             // l − #J

  friend bool operator==(const PositionWitness&, const PositionWitness&) = default;
};

struct PositionReport {
  bool verdict = true;
  int l = 0;
  /// Smallest #J first, then lexicographic.
  std::vector<PositionWitness> witnesses;

  friend bool operator==(const PositionReport&, const PositionReport&) = default;
};

enum class PositionMode {
  full,          // enumerate every violating subfamily
  verdict_only,  // stop at the first violation
};

/// A linear subscheme given by its defining forms (a hyperplane is a group of
/// one form).
using LinearGroup = std::vector<LinearForm>;

/// Projective dimension of (∩ zero loci) ∩ X, −1 when empty:
/// M − rank(forms ∪ forms(X)).
int intersection_dim(std::span<const LinearForm> forms, const LinearSubvariety& x);

/// Same for an intersection of linear subschemes.
int intersection_dim(std::span<const LinearGroup> groups, const LinearSubvariety& x);

/// l-subgeneral position of hyperplanes on X: for every J with
/// #J ≤ l + 1, dim(∩_J ∩ X) ≤ l − #J. Requires l ≥ dim X.
PositionReport check_subgeneral(std::span<const LinearForm> forms, const LinearSubvariety& x, int l,
                                PositionMode mode = PositionMode::full);

/// The same test for linear subschemes Y_1..Y_q.
PositionReport check_subgeneral(std::span<const LinearGroup> groups, const LinearSubvariety& x,
                                int l, PositionMode mode = PositionMode::full);

/// check_subgeneral with l = dim X.
PositionReport check_general(std::span<const LinearForm> forms, const LinearSubvariety& x,
                             PositionMode mode = PositionMode::full);

/// Smallest l ≥ dim X for which the hyperplanes are in l-subgeneral
/// position. Always exists (l = dim X + q works); −1 is never returned for
/// nonempty input.
int minimal_subgeneral_index(std::span<const LinearForm> forms, const LinearSubvariety& x);

}  // namespace subspace
