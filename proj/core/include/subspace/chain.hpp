#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "subspace/quang.hpp"

namespace subspace {

/// Both sides of
///   Σ_{j=1}^{l+1} λ_{H_j,v}(P) ≤ (l−n+1) Σ_{t=1}^{n+1} λ_{Ĥ_t,v}(P) + K_v
/// for hyperplanes sorted by ∥L_j(P)∥_v and the combinations Ĥ_t built from
/// them. Each side is the log of an exact rational, so the verdict is exact.
struct ChainRecord {
  std::vector<Integer> point;
  Place place = Place::infinity();
  /// Input indices (0-based) in increasing ∥L_j(P)∥_v.
  std::vector<int> ordering;
  Rat lhs_argument = 1;
  Rat rhs_argument = 1;
  Rat constant_argument = 1;  // exp(K_v)
  Real lhs = 0;
  Real rhs = 0;
  Real constant = 0;  // K_v
  Real slack = 0;     // rhs − lhs
  bool pass = false;
};

/// K_v = Σ_{t≥2} [log C_v + log∥L_{l−n+t}∥_v − log∥Ĥ_t∥_v]
///     + Σ_{j≤l−n+1} [log∥L_j∥_v − log∥L_1∥_v]
///     + (l−n) Σ_{t≥2} log(#terms of Ĥ_t)   (archimedean place only).
///
/// The certificate inputs must already be sorted by ∥L_j(P)∥_v (ties in
/// any order); otherwise DomainError. SupportError if P lies on an input or
/// an output hyperplane.
ChainRecord chain_check(const ProjPoint& p, const Place& v, const CombinationCertificate& cert);

/// Runs chain_check for a fixed arrangement at arbitrary points: reorders the
/// hyperplanes at each (P, v) and uses the certificate built for that order.
/// Certificates are cached per ordering; safe to call from several threads.
class ChainChecker {
 public:
  ChainChecker(std::vector<LinearForm> arrangement, LinearSubvariety x);

  ChainRecord check(const ProjPoint& p, const Place& v);

  /// Certificate for the inputs permuted by `ordering`.
  CombinationCertificate certificate_for(const std::vector<int>& ordering);

  const std::vector<LinearForm>& arrangement() const { return arrangement_; }
  std::size_t cached_certificates() const;

 private:
  std::vector<LinearForm> arrangement_;
  LinearSubvariety subvariety_;
  mutable std::mutex mutex_;
  std::map<std::vector<int>, CombinationCertificate> cache_;
};

}  // namespace subspace
