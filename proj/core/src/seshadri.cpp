#include "subspace/seshadri.hpp"

#include "subspace/error.hpp"

namespace subspace {

SeshadriValue seshadri_constant(const HomForm& form) {
  SeshadriValue out;
  out.value = make_rat(1, form.degree());
  out.subject = SeshadriClass::hypersurface;
  out.degree = form.degree();
  out.codimension = 1;
  out.justification = "H - g*(dH) is nef on P^M iff 1 - g*d >= 0";
  return out;
}

SeshadriValue seshadri_constant(const LinearForm& form) {
  return seshadri_constant(HomForm::from_linear(form));
}

SeshadriValue seshadri_constant(const SubschemeSpec& y) {
  if (y.components().size() == 1) return seshadri_constant(y.components().front());
  if (!y.is_linear()) {
    throw UnsupportedError("no closed-form Seshadri constant for non-linear subscheme " + y.label());
  }
  auto forms = y.linear_components();
  // Linear generators give a reduced ideal even when dependent; only the rank matters.
  const auto r = linalg::rank(as_matrix(forms));
  if (static_cast<int>(r) > y.dim()) {
    throw UnsupportedError("subscheme " + y.label() + " is empty");
  }
  SeshadriValue out;
  out.value = 1;
  out.subject = SeshadriClass::linear_subspace;
  out.degree = 1;
  out.codimension = static_cast<int>(r);
  out.justification =
      "blow-up of a linear subspace: (h - g*e).(h - e)^k >= 0 and (h - g*e).e >= 0 give 0 <= g <= 1";
  return out;
}

SeshadriValue seshadri_constant(const Target& t) {
  return std::visit([](const auto& x) { return seshadri_constant(x); }, t);
}

std::string to_string(SeshadriClass c) {
  return c == SeshadriClass::hypersurface ? "hypersurface" : "linear-subspace";
}

}  // namespace subspace
