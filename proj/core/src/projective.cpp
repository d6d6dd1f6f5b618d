#include "subspace/projective.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "subspace/error.hpp"

namespace subspace {

namespace {

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void gen_monomials(int var, int vars, int remaining, Exponent& cur, std::vector<Exponent>& out) {
  if (var == vars - 1) {
    cur[var] = remaining;
    out.push_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[var] = e;
    gen_monomials(var + 1, vars, remaining - e, cur, out);
  }
}

std::vector<Rat> to_rats(const std::vector<Integer>& v) {
  return {v.begin(), v.end()};
}

void append_term(std::ostringstream& os, bool first, const Integer& c, const std::string& mono) {
  Integer mag = abs(c);
  if (first) {
    if (c < 0) os << "-";
  } else {
    os << (c < 0 ? " - " : " + ");
  }
  if (mono.empty()) {
    os << mag.get_str();
  } else if (mag != 1) {
    os << mag.get_str() << "*" << mono;
  } else {
    os << mono;
  }
}

std::string monomial_string(const Exponent& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += "x" + std::to_string(i);
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

}  // namespace

PrimitiveVector make_primitive(std::span<const Rat> raw) {
  linalg::Vector v(raw.begin(), raw.end());
  Rat s = linalg::primitive_scale(v);
  if (s == 0) throw ArgumentError("zero vector has no projective class");
  PrimitiveVector out;
  out.scale = s;
  out.entries.reserve(v.size());
  for (const auto& x : v) {
    Rat y = x * s;
    out.entries.push_back(y.get_num());
  }
  return out;
}

ProjPoint ProjPoint::from_rationals(std::span<const Rat> coords) {
  if (coords.size() < 2) throw ArgumentError("a projective point needs at least two coordinates");
  return ProjPoint(make_primitive(coords).entries);
}

ProjPoint ProjPoint::from_integers(std::span<const Integer> coords) {
  std::vector<Rat> r(coords.begin(), coords.end());
  return from_rationals(r);
}

ProjPoint ProjPoint::of(std::initializer_list<long> coords) {
  std::vector<Rat> r;
  for (long c : coords) r.emplace_back(c);
  return from_rationals(r);
}

std::vector<Rat> ProjPoint::rationals() const { return to_rats(coords_); }

std::string ProjPoint::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ":";
    s += coords_[i].get_str();
  }
  return s + "]";
}

LinearForm LinearForm::from_rationals(std::span<const Rat> coeffs) {
  if (coeffs.size() < 2) throw ArgumentError("a linear form needs at least two coefficients");
  return LinearForm(make_primitive(coeffs).entries);
}

LinearForm LinearForm::from_integers(std::span<const Integer> coeffs) {
  std::vector<Rat> r(coeffs.begin(), coeffs.end());
  return from_rationals(r);
}

LinearForm LinearForm::of(std::initializer_list<long> coeffs) {
  std::vector<Rat> r;
  for (long c : coeffs) r.emplace_back(c);
  return from_rationals(r);
}

LinearForm LinearForm::coordinate(int dim, int i) {
  if (i < 0 || i > dim) throw ArgumentError("coordinate index out of range");
  std::vector<Integer> c(dim + 1, 0);
  c[i] = 1;
  return LinearForm(std::move(c));
}

std::vector<Rat> LinearForm::rationals() const { return to_rats(coeffs_); }

std::size_t LinearForm::nonzero_count() const {
  return static_cast<std::size_t>(
      std::count_if(coeffs_.begin(), coeffs_.end(), [](const Integer& c) { return c != 0; }));
}

std::string LinearForm::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    append_term(os, first, coeffs_[i], "x" + std::to_string(i));
    first = false;
  }
  return os.str();
}

std::vector<Exponent> monomials(int dim, int degree) {
  if (dim < 0 || degree < 0) throw ArgumentError("monomials: negative dimension or degree");
  std::vector<Exponent> out;
  out.reserve(monomial_count(dim, degree));
  Exponent cur(dim + 1, 0);
  gen_monomials(0, dim + 1, degree, cur, out);
  return out;
}

std::size_t monomial_count(int dim, int degree) {
  return binomial(static_cast<std::size_t>(dim + degree), static_cast<std::size_t>(degree));
}

std::size_t monomial_index(const Exponent& exponent) {
  int remaining = std::accumulate(exponent.begin(), exponent.end(), 0);
  const int vars = static_cast<int>(exponent.size());
  std::size_t index = 0;
  for (int i = 0; i + 1 < vars; ++i) {
    if (exponent[i] < 0) throw ArgumentError("negative exponent");
    // Monomials agreeing so far but with a larger exponent at i come first.
    for (int e = remaining; e > exponent[i]; --e) {
      index += monomial_count(vars - i - 2, remaining - e);
    }
    remaining -= exponent[i];
  }
  return index;
}

HomForm HomForm::from_terms(int dim, int degree, std::span<const Term> terms) {
  if (degree < 1) throw ArgumentError("homogeneous form needs degree >= 1");
  if (dim < 1) throw ArgumentError("homogeneous form needs dimension >= 1");
  std::vector<Rat> dense(monomial_count(dim, degree), Rat(0));
  for (const auto& t : terms) {
    if (static_cast<int>(t.exponent.size()) != dim + 1) {
      throw ArgumentError("term exponent has the wrong number of variables");
    }
    int d = 0;
    for (int e : t.exponent) {
      if (e < 0) throw ArgumentError("negative exponent");
      d += e;
    }
    if (d != degree) throw ArgumentError("term is not of degree " + std::to_string(degree));
    dense[monomial_index(t.exponent)] += t.coeff;
  }
  return from_dense(dim, degree, dense);
}

HomForm HomForm::from_dense(int dim, int degree, std::span<const Rat> coeffs) {
  if (coeffs.size() != monomial_count(dim, degree)) {
    throw ArgumentError("coefficient count does not match the monomial basis");
  }
  auto prim = make_primitive(coeffs);
  return HomForm(dim, degree, std::move(prim.entries));
}

HomForm HomForm::from_linear(const LinearForm& form) {
  return HomForm(form.dim(), 1, form.coeffs());
}

HomForm HomForm::product(const HomForm& a, const HomForm& b) {
  if (a.dim_ != b.dim_) throw ArgumentError("product of forms on different spaces");
  auto ma = monomials(a.dim_, a.degree_);
  auto mb = monomials(b.dim_, b.degree_);
  std::vector<Rat> dense(monomial_count(a.dim_, a.degree_ + b.degree_), Rat(0));
  Exponent e(a.dim_ + 1);
  for (std::size_t i = 0; i < ma.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < mb.size(); ++j) {
      if (b.coeffs_[j] == 0) continue;
      for (int k = 0; k <= a.dim_; ++k) e[k] = ma[i][k] + mb[j][k];
      dense[monomial_index(e)] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return from_dense(a.dim_, a.degree_ + b.degree_, dense);
}

std::vector<HomForm::Term> HomForm::terms() const {
  auto mono = monomials(dim_, degree_);
  std::vector<Term> out;
  for (std::size_t i = 0; i < mono.size(); ++i) {
    if (coeffs_[i] != 0) out.push_back({mono[i], Rat(coeffs_[i])});
  }
  return out;
}

std::size_t HomForm::nonzero_count() const {
  return static_cast<std::size_t>(
      std::count_if(coeffs_.begin(), coeffs_.end(), [](const Integer& c) { return c != 0; }));
}

LinearForm HomForm::as_linear() const {
  if (degree_ != 1) throw ArgumentError("form of degree " + std::to_string(degree_) + " is not linear");
  return LinearForm::from_integers(coeffs_);
}

std::string HomForm::to_string() const {
  auto mono = monomials(dim_, degree_);
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < mono.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    append_term(os, first, coeffs_[i], monomial_string(mono[i]));
    first = false;
  }
  return os.str();
}

LinearSubvariety LinearSubvariety::ambient(int dim) {
  if (dim < 1) throw ArgumentError("ambient dimension must be >= 1");
  return LinearSubvariety(dim, {});
}

LinearSubvariety LinearSubvariety::cut_out(int ambient_dim, std::vector<LinearForm> forms) {
  if (ambient_dim < 1) throw ArgumentError("ambient dimension must be >= 1");
  for (const auto& f : forms) {
    if (f.dim() != ambient_dim) throw ArgumentError("subvariety form has the wrong dimension");
  }
  if (linalg::rank(as_matrix(forms)) != forms.size()) {
    throw ArgumentError("subvariety forms are linearly dependent");
  }
  if (ambient_dim - static_cast<int>(forms.size()) < 1) {
    throw ArgumentError("linear subvariety must have dimension >= 1");
  }
  return LinearSubvariety(ambient_dim, std::move(forms));
}

bool LinearSubvariety::contains(const ProjPoint& p) const {
  if (p.dim() != ambient_dim_) return false;
  return std::all_of(forms_.begin(), forms_.end(),
                     [&](const LinearForm& f) { return evaluate(f, p) == 0; });
}

std::vector<std::vector<Integer>> LinearSubvariety::parametrization() const {
  std::vector<std::vector<Integer>> out;
  for (const auto& v : linalg::nullspace(as_matrix(forms_), ambient_dim_ + 1)) {
    std::vector<Integer> row;
    for (const auto& x : v) row.push_back(x.get_num());
    out.push_back(std::move(row));
  }
  return out;
}

ProjPoint normalize_point(std::span<const Rat> raw) { return ProjPoint::from_rationals(raw); }

Integer evaluate(const LinearForm& form, const ProjPoint& p) {
  if (form.dim() != p.dim()) throw ArgumentError("form and point live in different dimensions");
  Integer sum = 0;
  for (std::size_t i = 0; i < form.coeffs().size(); ++i) sum += form.coeffs()[i] * p.coords()[i];
  return sum;
}

Integer evaluate(const HomForm& form, const ProjPoint& p) {
  if (form.dim() != p.dim()) throw ArgumentError("form and point live in different dimensions");
  auto mono = monomials(form.dim(), form.degree());
  Integer sum = 0;
  for (std::size_t i = 0; i < mono.size(); ++i) {
    if (form.coeffs()[i] == 0) continue;
    Integer term = form.coeffs()[i];
    for (std::size_t k = 0; k < mono[i].size(); ++k) {
      if (mono[i][k]) term *= pow(p.coords()[k], static_cast<unsigned long>(mono[i][k]));
    }
    sum += term;
  }
  return sum;
}

Rat evaluate(const LinearForm& form, std::span<const Rat> x) {
  if (x.size() != form.coeffs().size()) throw ArgumentError("form and vector lengths differ");
  Rat sum = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += form.coeffs()[i] * x[i];
  return sum;
}

VeronesePoint veronese_point(const ProjPoint& p, int degree) {
  if (degree < 1) throw ArgumentError("Veronese degree must be >= 1");
  auto mono = monomials(p.dim(), degree);
  std::vector<Integer> raw;
  raw.reserve(mono.size());
  for (const auto& e : mono) {
    Integer v = 1;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k]) v *= pow(p.coords()[k], static_cast<unsigned long>(e[k]));
    }
    raw.push_back(std::move(v));
  }
  std::vector<Rat> r(raw.begin(), raw.end());
  auto prim = make_primitive(r);
  // prim.entries = prim.scale · raw, so raw = (1/scale) · point.
  Rat inv = 1 / prim.scale;
  if (inv.get_den() != 1) throw DomainError("Veronese scalar is not integral");
  return {ProjPoint::from_integers(prim.entries), inv.get_num()};
}

VeroneseForm veronese_form(const HomForm& form) {
  std::vector<Rat> r(form.coeffs().begin(), form.coeffs().end());
  auto prim = make_primitive(r);
  return {LinearForm::from_integers(prim.entries), prim.scale};
}

Rat veronese_ratio(const VeronesePoint& vp, const VeroneseForm& vf) {
  return vf.scalar / Rat(vp.scalar);
}

linalg::Matrix as_matrix(std::span<const LinearForm> forms) {
  linalg::Matrix m;
  m.reserve(forms.size());
  for (const auto& f : forms) m.push_back(as_vector(f));
  return m;
}

linalg::Vector as_vector(const LinearForm& form) { return form.rationals(); }
linalg::Vector as_vector(const ProjPoint& p) { return p.rationals(); }

}  // namespace subspace
