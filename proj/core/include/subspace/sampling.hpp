#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "subspace/place.hpp"
#include "subspace/projective.hpp"

namespace subspace {

/// Returns true for points that must not be sampled (e.g. on a support).
using PointFilter = std::function<bool(const ProjPoint&)>;

struct SampleResult {
  std::vector<ProjPoint> points;
  /// Fewer than the requested count were found within the attempt budget.
  bool partial = false;
  std::size_t attempts = 0;
};

/// Rational points of X with h_min ≤ h ≤ h_max, none rejected by `excluded`,
/// without duplicates.
///
/// On X = P^1 the window is enumerated exhaustively in order of increasing
/// height (truncated to `count`). Otherwise coordinates of a parametrization
/// of X are drawn uniformly from boxes whose size follows a target height
/// drawn uniformly from the window. Deterministic for a given seed.
SampleResult sample_points(const LinearSubvariety& x, Real h_min, Real h_max, std::size_t count,
                           std::uint64_t seed, const PointFilter& excluded = {});

/// Largest N ≥ 0 with log N ≤ h (N = 0 when h < 0).
Integer max_coordinate_for_height(Real h);

}  // namespace subspace
