#include "subspace/quang.hpp"

#include <algorithm>
#include <string>

namespace subspace {

namespace {

// Candidate coefficients are searched up to this max-norm. A finite union of
// proper subspaces of Q^k misses some vector of max-norm ≤ (#subspaces), so
// the bound is never reached for realistic inputs.
constexpr long kMaxCandidateNorm = 1 << 12;

// Digit order within a max-norm: 0, 1, −1, 2, −2, ...
long digit(long i) { return i == 0 ? 0 : (i % 2 ? (i + 1) / 2 : -(i / 2)); }

linalg::Vector combine(std::span<const LinearForm> spanning, const std::vector<long>& c) {
  linalg::Vector v(spanning.front().coeffs().size(), Rat(0));
  for (std::size_t j = 0; j < spanning.size(); ++j) {
    if (c[j] == 0) continue;
    for (std::size_t k = 0; k < v.size(); ++k) v[k] += c[j] * spanning[j].coeffs()[k];
  }
  return v;
}

bool is_zero(const linalg::Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

}  // namespace

AvoidResult avoid_subspaces(std::span<const LinearForm> spanning,
                            std::span<const LinearGroup> excluded) {
  if (spanning.empty()) throw ArgumentError("avoid_subspaces needs a nonempty spanning set");
  const int dim = spanning.front().dim();
  for (const auto& f : spanning) {
    if (f.dim() != dim) throw ArgumentError("spanning forms live in different dimensions");
  }
  std::vector<linalg::RowSpace> spaces;
  for (const auto& group : excluded) {
    for (const auto& f : group) {
      if (f.dim() != dim) throw ArgumentError("excluded form lives in a different dimension");
    }
    spaces.emplace_back(as_matrix(group));
    const auto& space = spaces.back();
    bool swallows = std::all_of(spanning.begin(), spanning.end(), [&](const LinearForm& f) {
      return space.contains(as_vector(f));
    });
    if (swallows) {
      throw InfeasibleError("an excluded subspace contains the whole span; position hypothesis failed");
    }
  }

  const std::size_t k = spanning.size();
  std::vector<long> slot(k), coeff(k);
  for (long bound = 1; bound <= kMaxCandidateNorm; ++bound) {
    const long digits = 2 * bound + 1;
    std::fill(slot.begin(), slot.end(), 0);
    while (true) {
      long top = 0;
      for (std::size_t j = 0; j < k; ++j) {
        coeff[j] = digit(slot[j]);
        top = std::max(top, std::labs(coeff[j]));
      }
      if (top == bound) {
        auto v = combine(spanning, coeff);
        if (!is_zero(v) && std::none_of(spaces.begin(), spaces.end(),
                                        [&](const linalg::RowSpace& s) { return s.contains(v); })) {
          AvoidResult out{LinearForm::from_rationals(v), {}};
          for (long c : coeff) out.coefficients.emplace_back(c);
          return out;
        }
      }
      std::size_t j = 0;
      while (j < k && ++slot[j] == digits) slot[j++] = 0;
      if (j == k) break;
    }
  }
  throw InfeasibleError("no avoiding combination found below the search bound");
}

CertificateCheck verify(const CombinationCertificate& cert) {
  CertificateCheck check;
  const auto& in = cert.inputs;
  const auto& out = cert.outputs;
  const auto& c = cert.coefficients;
  if (in.empty() || out.empty() || c.size() != out.size()) return check;
  check.first_equal = out.front() == in.front();

  check.replay = true;
  check.span = true;
  for (std::size_t t = 0; t < out.size(); ++t) {
    if (c[t].size() != in.size()) {
      check.replay = check.span = false;
      break;
    }
    linalg::Vector v(in.front().coeffs().size(), Rat(0));
    for (std::size_t j = 0; j < in.size(); ++j) {
      if (c[t][j] == 0) continue;
      const bool allowed = t == 0 ? j == 0
                                  : (j >= 1 && static_cast<int>(j) <= cert.l - cert.n + static_cast<int>(t));
      if (!allowed) check.span = false;
      for (std::size_t k = 0; k < v.size(); ++k) v[k] += c[t][j] * in[j].coeffs()[k];
    }
    if (v != as_vector(out[t])) check.replay = false;
  }
  if (static_cast<int>(out.size()) == cert.n + 1) {
    check.general = check_general(out, cert.subvariety, PositionMode::verdict_only).verdict;
  }
  return check;
}

CombinationCertificate quang_combine(std::span<const LinearForm> forms, const LinearSubvariety& x,
                                     std::span<const Place> places) {
  const int n = x.dim();
  const int q = static_cast<int>(forms.size());
  const int l = q - 1;
  if (l < n) {
    throw ArgumentError("need at least dim X + 1 = " + std::to_string(n + 1) + " forms, got " +
                        std::to_string(q));
  }
  for (std::size_t j = 0; j < forms.size(); ++j) {
    const LinearForm* one = &forms[j];
    if (intersection_dim(std::span<const LinearForm>(one, 1), x) == n) {
      throw DomainError("input form " + std::to_string(j + 1) + " (" + forms[j].to_string() +
                        ") vanishes on all of X");
    }
  }
  auto report = check_subgeneral(forms, x, l);
  if (!report.verdict) {
    throw PositionRejected("forms are not in " + std::to_string(l) + "-subgeneral position on X",
                           std::move(report));
  }

  const std::size_t width = static_cast<std::size_t>(x.ambient_dim()) + 1;
  CombinationCertificate cert;
  cert.subvariety = x;
  cert.l = l;
  cert.n = n;
  cert.inputs.assign(forms.begin(), forms.end());
  cert.outputs.push_back(forms.front());
  cert.coefficients.emplace_back(q, Rat(0));
  cert.coefficients.back()[0] = 1;

  for (int t = 1; t <= n; ++t) {
    // W = span(L_2, ..., L_{l−n+t+1}) in 1-based terms.
    std::span<const LinearForm> w = forms.subspan(1, static_cast<std::size_t>(l - n + t));
    // Each Γ = X ∩ (zeros of a subset J of the outputs so far) is a linear
    // space, and V_Γ is the part of W vanishing on it. Avoiding every V_Γ
    // keeps every subfamily of the outputs proper on X.
    std::vector<LinearGroup> excluded;
    const std::size_t prior = cert.outputs.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << prior); ++mask) {
      linalg::Matrix gamma = as_matrix(x.forms());
      for (std::size_t j = 0; j < prior; ++j) {
        if (mask & (std::size_t{1} << j)) gamma.push_back(as_vector(cert.outputs[j]));
      }
      LinearGroup vanishing;
      for (auto& v : linalg::row_space_intersection(as_matrix(w), gamma, width)) {
        vanishing.push_back(LinearForm::from_rationals(v));
      }
      excluded.push_back(std::move(vanishing));
    }
    auto picked = avoid_subspaces(w, excluded);

    linalg::Vector raw(width, Rat(0));
    for (std::size_t j = 0; j < w.size(); ++j) {
      for (std::size_t k = 0; k < width; ++k) raw[k] += picked.coefficients[j] * w[j].coeffs()[k];
    }
    Rat scale = linalg::primitive_scale(raw);
    linalg::Vector row(q, Rat(0));
    for (std::size_t j = 0; j < w.size(); ++j) row[j + 1] = scale * picked.coefficients[j];
    cert.outputs.push_back(picked.form);
    cert.coefficients.push_back(std::move(row));
  }

  cert.output_position = check_general(cert.outputs, x);
  if (!cert.output_position.verdict) {
    throw InfeasibleError("combination outputs are not in general position (internal error)");
  }
  for (const auto& v : places) cert.constants.push_back(chain_constant(cert, v));
  return cert;
}

Ordering reorder_by_local_norm(const ProjPoint& p, const Place& v, std::span<const LinearForm> forms) {
  std::vector<Rat> values;
  values.reserve(forms.size());
  for (std::size_t j = 0; j < forms.size(); ++j) {
    Integer val = evaluate(forms[j], p);
    if (val == 0) {
      throw SupportError("point " + p.to_string() + " lies on form #" + std::to_string(j + 1) +
                         " (" + forms[j].to_string() + ")");
    }
    values.emplace_back(val);
  }
  Ordering out;
  out.place = v;
  out.permutation.resize(forms.size());
  for (std::size_t j = 0; j < forms.size(); ++j) out.permutation[j] = static_cast<int>(j);
  std::stable_sort(out.permutation.begin(), out.permutation.end(),
                   [&](int a, int b) { return compare_abs(values[a], values[b], v) < 0; });
  return out;
}

ChainConstant chain_constant(const CombinationCertificate& cert, const Place& v) {
  Rat best = 0;
  for (std::size_t t = 1; t < cert.coefficients.size(); ++t) {
    const auto& row = cert.coefficients[t];
    Rat row_max = 0;
    long nonzero = 0;
    for (const auto& c : row) {
      if (c == 0) continue;
      ++nonzero;
      Rat a = abs_value(c, v);
      if (a > row_max) row_max = a;
    }
    Rat row_value = v.is_archimedean() ? Rat(nonzero) * row_max : row_max;
    if (row_value > best) best = row_value;
  }
  if (best == 0) best = 1;
  return {v, best, log_real(best)};
}

}  // namespace subspace
