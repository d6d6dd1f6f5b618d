#pragma once

#include <string>

#include "subspace/weil.hpp"

namespace subspace {

enum class SeshadriClass { hypersurface, linear_subspace };

/// ε_Y(O(1)) on P^M for the classes with a closed form.
struct SeshadriValue {
  Rat value;
  SeshadriClass subject = SeshadriClass::hypersurface;
  int degree = 1;        // hypersurface degree
  int codimension = 1;   // codimension of the linear subspace
  std::string justification;
};

/// Degree-d hypersurface: 1/d. Nonempty linear subspace, cut out by any
/// linear components: 1. Anything else throws UnsupportedError.
SeshadriValue seshadri_constant(const HomForm& form);
SeshadriValue seshadri_constant(const LinearForm& form);
SeshadriValue seshadri_constant(const SubschemeSpec& y);
SeshadriValue seshadri_constant(const Target& t);

std::string to_string(SeshadriClass c);

}  // namespace subspace
