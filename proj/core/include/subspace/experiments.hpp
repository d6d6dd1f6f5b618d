#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "subspace/chain.hpp"
#include "subspace/logsum.hpp"
#include "subspace/position.hpp"
#include "subspace/sampling.hpp"
#include "subspace/weil.hpp"

namespace subspace {

/// The configuration was rejected before any point was evaluated.
class ConfigRejected : public DomainError {
 public:
  using DomainError::DomainError;
};

struct PlaceArrangement {
  Place place = Place::infinity();
  std::vector<Target> targets;
};

struct ExperimentConfig {
  int ambient_dim = 1;
  LinearSubvariety subvariety = LinearSubvariety::ambient(1);
  /// One entry per place of S, in the order given.
  std::vector<PlaceArrangement> arrangements;
  int l = 1;
  Rat epsilon = 1;
  Real h_min = 0;
  Real h_max = 1;
  std::size_t sample_count = 0;
  std::uint64_t seed = 0;
  /// Required when some target is not linear: position cannot be checked
  /// and is taken on the user's word.
  bool assert_position = false;
  /// Linear subspaces (by defining forms) whose points are never sampled.
  std::vector<LinearGroup> excluded;
  /// A candidate span must hold at least this fraction of the violators.
  Real candidate_fraction = 0.1;
  int max_candidates = 10;
  int workers = 1;
  bool run_chain_check = true;
};

std::vector<Place> places(const ExperimentConfig& config);

struct PointRecord {
  std::vector<Integer> point;
  Real height = 0;
  Real weighted_sum = 0;
  /// Absent for height-0 points.
  std::optional<Real> ratio;
  bool violator = false;
};

/// A linear span fitted to violators. Always a candidate for the exceptional
/// set, never a claim about it.
struct ExceptionalCandidate {
  int dimension = 0;
  std::vector<LinearForm> defining_forms;
  std::vector<std::vector<Integer>> spanning_points;
  /// Violator points assigned to this candidate, rank-verified to lie in it.
  std::vector<std::vector<Integer>> members;
};

struct ChainSummary {
  std::size_t checked = 0;
  std::size_t passed = 0;
  /// Samples on a combination hyperplane, where the check is undefined.
  std::size_t invalid = 0;
  Real min_slack = 0;
  std::size_t certificates = 0;

  bool all_passed() const { return passed == checked; }
};

struct DefectReport {
  std::string kind;  // "main" or "baseline"
  ExperimentConfig config;
  Rat bound;
  Real bound_value = 0;
  Rat delta;  // δ of the proof's bookkeeping, informational
  std::vector<PointRecord> records;  // sorted by point
  std::size_t zero_height = 0;
  std::size_t support_skipped = 0;
  std::vector<std::size_t> violators;  // indices into records
  std::vector<ExceptionalCandidate> candidates;
  ChainSummary chain;
  bool partial_sample = false;
  bool position_asserted = false;
  std::vector<std::string> notes;
};

/// Largest δ = 1/2^k with δ(l−n+1) + δ(l−n+1)(n+1+δ) < ε, exactly.
Rat delta_budget(int l, int n, const Rat& epsilon);

/// Σ_{v∈S} Σ_j ε_{Y_{j,v}}(A) λ_{Y_{j,v},v}(P). Throws SupportError if P
/// lies on a target.
LogSum weighted_defect(const ProjPoint& p, const ExperimentConfig& config);

/// Checks the hypotheses; throws ConfigRejected or PositionRejected.
void validate_main(const ExperimentConfig& config);
void validate_baseline(const ExperimentConfig& config);

/// Bound (l−n+1)(n+1)+ε.
DefectReport run_main_experiment(const ExperimentConfig& config);

/// Bound n+1+ε with exactly n+1 targets per place.
DefectReport run_evertse_ferretti_baseline(const ExperimentConfig& config);

/// Greedy cover of the points by minimal linear spans, smallest dimension
/// first. A span of dimension d ≥ 1 is kept when it holds at least
/// max(d + 2, ⌈fraction · #points⌉) points; otherwise the point alone is a
/// 0-dimensional candidate.
std::vector<ExceptionalCandidate> exceptional_scan(std::span<const ProjPoint> points,
                                                   Real fraction, int max_candidates);

}  // namespace subspace
