#pragma once

#include <span>
#include <vector>

#include "subspace/error.hpp"
#include "subspace/place.hpp"
#include "subspace/position.hpp"
#include "subspace/projective.hpp"

namespace subspace {

/// Raised when an input arrangement fails the position hypothesis; carries
/// the report with its witnesses.
class PositionRejected : public DomainError {
 public:
  PositionRejected(const std::string& what, PositionReport report)
      : DomainError(what), report_(std::move(report)) {}
  const PositionReport& report() const { return report_; }

 private:
  PositionReport report_;
};

/// An admissible C_v with ∥L'_t(P)∥_v ≤ C_v · max_{2≤j≤l−n+t} ∥L_j(P)∥_v.
struct ChainConstant {
  Place place = Place::infinity();
  Rat value = 1;
  Real log_value = 0;
};

/// Output of the generic-linear-combination construction.
///
/// Row t of `coefficients` expresses output t in terms of the inputs:
/// outputs[t] = Σ_j coefficients[t][j] · inputs[j] (0-based). Row 0 is the
/// unit vector e_0, and row t ≥ 1 is supported on inputs 1..l−n+t.
struct CombinationCertificate {
  LinearSubvariety subvariety = LinearSubvariety::ambient(1);
  int l = 0;
  int n = 0;
  std::vector<LinearForm> inputs;
  std::vector<LinearForm> outputs;
  linalg::Matrix coefficients;
  PositionReport output_position;
  std::vector<ChainConstant> constants;
};

struct CertificateCheck {
  bool first_equal = false;  // L'_1 = L_1
  bool replay = false;       // coefficients reproduce the outputs exactly
  bool span = false;         // row t supported on inputs 1..l−n+t
  bool general = false;      // outputs in general position on X

  bool ok() const { return first_equal && replay && span && general; }
};

CertificateCheck verify(const CombinationCertificate& cert);

struct AvoidResult {
  LinearForm form;
  /// Integer combination of the spanning set that produced `form` (before
  /// normalization).
  std::vector<Integer> coefficients;
};

/// Finds a form in span(spanning) outside every excluded subspace, each given
/// by a spanning set (an empty set is the zero subspace).
///
/// Candidate coefficient vectors are tried by increasing max-norm; within a
/// max-norm the first coordinate varies fastest and each coordinate runs
/// through 0, 1, −1, 2, −2, ... The first candidate that is nonzero and lies
/// in no excluded subspace wins. Throws InfeasibleError when some excluded
/// subspace contains span(spanning).
AvoidResult avoid_subspaces(std::span<const LinearForm> spanning,
                            std::span<const LinearGroup> excluded);

/// From L_1..L_{l+1} in l-subgeneral position on X (l = #forms − 1 ≥ dim X)
/// builds L'_1..L'_{n+1} in general position on X with L'_1 = L_1 and
/// L'_t ∈ span(L_2..L_{l−n+t}). Chain constants are attached for `places`.
/// Throws PositionRejected if the hypothesis fails and DomainError if some
/// L_j vanishes on all of X.
CombinationCertificate quang_combine(std::span<const LinearForm> forms, const LinearSubvariety& x,
                                     std::span<const Place> places = {});

/// Sort order of the forms by ∥L_j(P)∥_v.
struct Ordering {
  Place place = Place::infinity();
  /// permutation[k] is the (0-based) input index of the k-th smallest value;
  /// ties keep input order.
  std::vector<int> permutation;
};

/// Throws SupportError naming the first form that vanishes at P.
Ordering reorder_by_local_norm(const ProjPoint& p, const Place& v, std::span<const LinearForm> forms);

/// At a finite place max_{t≥2, j} ∥c_{t,j}∥_v; at ∞ the max over t ≥ 2 of
/// (#nonzero c_{t,j}) · max_j |c_{t,j}|.
ChainConstant chain_constant(const CombinationCertificate& cert, const Place& v);

}  // namespace subspace
