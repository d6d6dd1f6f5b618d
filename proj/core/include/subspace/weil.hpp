#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "subspace/logsum.hpp"
#include "subspace/place.hpp"
#include "subspace/projective.hpp"

namespace subspace {

/// A closed subscheme Y = D_1 ∩ ... ∩ D_r given by its divisors. Components
/// are kept sorted and deduplicated so that equal schemes compare equal.
class SubschemeSpec {
 public:
  /// Throws ArgumentError for an empty list or mixed ambient dimensions.
  SubschemeSpec(std::vector<HomForm> components, std::string label = {});
  static SubschemeSpec linear(std::span<const LinearForm> forms, std::string label = {});

  const std::vector<HomForm>& components() const { return components_; }
  const std::string& label() const { return label_; }
  int dim() const { return components_.front().dim(); }
  bool is_linear() const;
  /// The component forms as linear forms; requires is_linear().
  std::vector<LinearForm> linear_components() const;

  /// Union of the component lists (the scheme-theoretic intersection).
  static SubschemeSpec intersect(const SubschemeSpec& a, const SubschemeSpec& b);

  friend bool operator==(const SubschemeSpec& a, const SubschemeSpec& b) {
    return a.components_ == b.components_;
  }

 private:
  std::vector<HomForm> components_;
  std::string label_;
};

/// Anything a Weil function can be attached to.
using Target = std::variant<LinearForm, HomForm, SubschemeSpec>;

std::string target_label(const Target& t);
int target_dim(const Target& t);
/// True if any component of the target vanishes at P.
bool touches_support(const ProjPoint& p, const Target& t);
/// The target as a list of divisors.
std::vector<HomForm> target_components(const Target& t);

/// λ_{D,v}(P) = log(argument). At finite places argument = p^e exactly.
struct WeilValue {
  Real value = 0;
  Place place = Place::infinity();
  std::string subject;
  std::vector<Integer> point;
  Rat argument = 1;

  /// "log(35/4)" at ∞, "3*log(2)" at a finite place.
  std::string ledger() const;
};

enum class SubschemeMode {
  /// Reject P on any component.
  strict,
  /// Drop components vanishing at P from the min, as long as P is off Y.
  lenient,
};

/// λ = log∥x∥_v + log∥L∥_v − log∥L(P)∥_v. Throws SupportError if L(P) = 0.
WeilValue weil_hyperplane(const ProjPoint& p, const LinearForm& form, const Place& v);

/// λ = d·log∥x∥_v + log∥F∥_v − log∥F(P)∥_v, with ∥F∥_v the max coefficient norm.
WeilValue weil_divisor(const ProjPoint& p, const HomForm& form, const Place& v);

/// λ_Y = min_i λ_{D_i}.
WeilValue weil_subscheme(const ProjPoint& p, const SubschemeSpec& y, const Place& v,
                         SubschemeMode mode = SubschemeMode::lenient);

WeilValue weil_value(const ProjPoint& p, const Target& t, const Place& v,
                     SubschemeMode mode = SubschemeMode::lenient);

/// Just weil_value(...).argument, without building the label.
Rat weil_argument(const ProjPoint& p, const Target& t, const Place& v,
                  SubschemeMode mode = SubschemeMode::lenient);

/// h(P) = Σ_v log max_i ∥x_i∥_v; for canonical coordinates log max |x_i|.
Real height(const ProjPoint& p);
/// exp(h(P)) as an exact integer.
Integer height_argument(const ProjPoint& p);
/// d·h(P) for rational d > 0 (ArgumentError otherwise).
Real height_scaled(const ProjPoint& p, const Rat& d);

struct Proximity {
  Real value = 0;
  LogSum exact;
};

/// m_S(P, target) = Σ_{v∈S} λ_v(P). Throws ArgumentError on repeated places.
Proximity proximity_sum(const ProjPoint& p, const Target& t, std::span<const Place> places,
                        SubschemeMode mode = SubschemeMode::lenient);

/// Places where λ_v(P) can be nonzero for the given target: ∞ and the primes
/// dividing the values of its components at P.
std::vector<Place> contributing_places(const ProjPoint& p, const Target& t);

}  // namespace subspace
