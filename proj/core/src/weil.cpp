#include "subspace/weil.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "subspace/error.hpp"

namespace subspace {

namespace {

Integer max_abs(const std::vector<Integer>& xs) {
  Integer best = 0;
  for (const auto& x : xs) {
    if (mpz_cmpabs(x.get_mpz_t(), best.get_mpz_t()) > 0) best = abs(x);
  }
  return best;
}

// min_i ord_p(x_i) over the nonzero entries, so max_i |x_i|_p = p^{-result}.
long min_valuation(const std::vector<Integer>& xs, const Integer& p) {
  long low = -1;
  for (const auto& x : xs) {
    if (x == 0) continue;
    long e = valuation(x, p);
    if (low < 0 || e < low) low = e;
    if (low == 0) break;
  }
  return low;
}

// ∥x∥_v^d·∥F∥_v / |F(x)|_v for a nonzero integer value F(x).
Rat divisor_argument(const ProjPoint& p, const std::vector<Integer>& coeffs, int degree,
                     const Place& v, const Integer& value) {
  if (v.is_archimedean()) {
    Integer num = pow(max_abs(p.coords()), static_cast<unsigned long>(degree)) * max_abs(coeffs);
    Integer den = abs(value);
    return make_rat(num, den);
  }
  const auto& prime = v.prime();
  long e = valuation(value, prime) - degree * min_valuation(p.coords(), prime) -
           min_valuation(coeffs, prime);
  if (e >= 0) return Rat(pow(prime, static_cast<unsigned long>(e)));
  return make_rat(Integer(1), pow(prime, static_cast<unsigned long>(-e)));
}

WeilValue make_value(const ProjPoint& p, const Place& v, std::string subject, Rat argument) {
  WeilValue w;
  w.value = log_real(argument);
  w.place = v;
  w.subject = std::move(subject);
  w.point = p.coords();
  w.argument = std::move(argument);
  return w;
}

WeilValue divisor_value(const ProjPoint& p, const HomForm& form, const Place& v,
                        const std::string& subject) {
  Integer value = evaluate(form, p);
  if (value == 0) {
    throw SupportError("point " + p.to_string() + " lies on " + subject);
  }
  return make_value(p, v, subject, divisor_argument(p, form.coeffs(), form.degree(), v, value));
}

}  // namespace

SubschemeSpec::SubschemeSpec(std::vector<HomForm> components, std::string label)
    : components_(std::move(components)), label_(std::move(label)) {
  if (components_.empty()) throw ArgumentError("subscheme needs at least one component");
  for (const auto& c : components_) {
    if (c.dim() != components_.front().dim()) {
      throw ArgumentError("subscheme components live in different dimensions");
    }
  }
  std::sort(components_.begin(), components_.end(),
            [](const HomForm& a, const HomForm& b) { return a < b; });
  components_.erase(std::unique(components_.begin(), components_.end()), components_.end());
  if (label_.empty()) {
    for (std::size_t i = 0; i < components_.size(); ++i) {
      if (i) label_ += " ∩ ";
      label_ += "{" + components_[i].to_string() + "}";
    }
  }
}

SubschemeSpec SubschemeSpec::linear(std::span<const LinearForm> forms, std::string label) {
  std::vector<HomForm> comps;
  for (const auto& f : forms) comps.push_back(HomForm::from_linear(f));
  return SubschemeSpec(std::move(comps), std::move(label));
}

bool SubschemeSpec::is_linear() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const HomForm& f) { return f.is_linear(); });
}

std::vector<LinearForm> SubschemeSpec::linear_components() const {
  std::vector<LinearForm> out;
  for (const auto& c : components_) out.push_back(c.as_linear());
  return out;
}

SubschemeSpec SubschemeSpec::intersect(const SubschemeSpec& a, const SubschemeSpec& b) {
  std::vector<HomForm> comps = a.components_;
  comps.insert(comps.end(), b.components_.begin(), b.components_.end());
  return SubschemeSpec(std::move(comps));
}

std::string target_label(const Target& t) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SubschemeSpec>) {
          return x.label();
        } else {
          return x.to_string();
        }
      },
      t);
}

int target_dim(const Target& t) {
  return std::visit([](const auto& x) { return x.dim(); }, t);
}

std::vector<HomForm> target_components(const Target& t) {
  if (auto* l = std::get_if<LinearForm>(&t)) return {HomForm::from_linear(*l)};
  if (auto* h = std::get_if<HomForm>(&t)) return {*h};
  return std::get<SubschemeSpec>(t).components();
}

bool touches_support(const ProjPoint& p, const Target& t) {
  if (auto* l = std::get_if<LinearForm>(&t)) return evaluate(*l, p) == 0;
  if (auto* h = std::get_if<HomForm>(&t)) return evaluate(*h, p) == 0;
  for (const auto& c : target_components(t)) {
    if (evaluate(c, p) == 0) return true;
  }
  return false;
}

std::string WeilValue::ledger() const {
  if (place.is_archimedean()) return "log(" + to_string(argument) + ")";
  long e = argument == 1 ? 0 : ord(argument, place.prime());
  return std::to_string(e) + "*log(" + to_string(place.prime()) + ")";
}

WeilValue weil_hyperplane(const ProjPoint& p, const LinearForm& form, const Place& v) {
  return divisor_value(p, HomForm::from_linear(form), v, form.to_string());
}

WeilValue weil_divisor(const ProjPoint& p, const HomForm& form, const Place& v) {
  return divisor_value(p, form, v, form.to_string());
}

WeilValue weil_subscheme(const ProjPoint& p, const SubschemeSpec& y, const Place& v,
                         SubschemeMode mode) {
  std::optional<WeilValue> best;
  std::vector<std::string> hit;
  for (const auto& c : y.components()) {
    if (c.dim() != p.dim()) throw ArgumentError("subscheme and point live in different dimensions");
    if (evaluate(c, p) == 0) {
      hit.push_back(c.to_string());
      continue;
    }
    auto w = divisor_value(p, c, v, c.to_string());
    if (!best || w.argument < best->argument) best = std::move(w);
  }
  if (!hit.empty() && (mode == SubschemeMode::strict || !best)) {
    throw SupportError("point " + p.to_string() + " lies on component {" + hit.front() + "} of " +
                       y.label());
  }
  best->subject = y.label();
  return *best;
}

WeilValue weil_value(const ProjPoint& p, const Target& t, const Place& v, SubschemeMode mode) {
  if (auto* l = std::get_if<LinearForm>(&t)) return weil_hyperplane(p, *l, v);
  if (auto* h = std::get_if<HomForm>(&t)) return weil_divisor(p, *h, v);
  return weil_subscheme(p, std::get<SubschemeSpec>(t), v, mode);
}

Rat weil_argument(const ProjPoint& p, const Target& t, const Place& v, SubschemeMode mode) {
  auto one = [&](const auto& f) -> std::optional<Rat> {
    if (f.dim() != p.dim()) throw ArgumentError("target and point live in different dimensions");
    Integer value = evaluate(f, p);
    if (value == 0) return std::nullopt;
    int degree = 1;
    if constexpr (std::is_same_v<std::decay_t<decltype(f)>, HomForm>) degree = f.degree();
    return divisor_argument(p, f.coeffs(), degree, v, value);
  };
  if (auto* y = std::get_if<SubschemeSpec>(&t)) {
    std::optional<Rat> best;
    bool hit = false;
    for (const auto& c : y->components()) {
      auto a = one(c);
      if (!a) {
        hit = true;
        continue;
      }
      if (!best || *a < *best) best = std::move(a);
    }
    if (hit && (mode == SubschemeMode::strict || !best)) return weil_subscheme(p, *y, v, mode).argument;
    return *best;
  }
  auto a = std::holds_alternative<LinearForm>(t) ? one(std::get<LinearForm>(t)) : one(std::get<HomForm>(t));
  if (a) return *a;
  return weil_value(p, t, v, mode).argument;  // throws the usual SupportError
}

Integer height_argument(const ProjPoint& p) {
  Integer best = 0;
  for (const auto& x : p.coords()) {
    Integer a = abs(x);
    if (a > best) best = a;
  }
  return best;
}

Real height(const ProjPoint& p) { return log_real(height_argument(p)); }

Real height_scaled(const ProjPoint& p, const Rat& d) {
  if (sgn(d) <= 0) throw ArgumentError("height scale must be positive, got " + to_string(d));
  return d.get_d() * height(p);
}

Proximity proximity_sum(const ProjPoint& p, const Target& t, std::span<const Place> places,
                        SubschemeMode mode) {
  std::set<Place> seen;
  Proximity out;
  for (const auto& v : places) {
    if (!seen.insert(v).second) throw ArgumentError("place " + v.to_string() + " repeated in S");
    out.exact.add(1, weil_value(p, t, v, mode).argument);
  }
  out.value = out.exact.value();
  return out;
}

std::vector<Place> contributing_places(const ProjPoint& p, const Target& t) {
  std::set<Place> places{Place::infinity()};
  for (const auto& c : target_components(t)) {
    Integer value = evaluate(c, p);
    if (value == 0) continue;
    for (const auto& [prime, e] : factor(value)) places.insert(Place::finite(prime));
  }
  return {places.begin(), places.end()};
}

}  // namespace subspace
