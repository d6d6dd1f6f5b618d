#include "subspace/position.hpp"

#include <string>

#include "subspace/error.hpp"

namespace subspace {

namespace {

void check_dims(std::span<const LinearGroup> groups, const LinearSubvariety& x) {
  for (const auto& g : groups) {
    if (g.empty()) throw ArgumentError("empty linear subscheme");
    for (const auto& f : g) {
      if (f.dim() != x.ambient_dim()) {
        throw ArgumentError("form in P^" + std::to_string(f.dim()) + " used on P^" +
                            std::to_string(x.ambient_dim()));
      }
    }
  }
}

std::vector<LinearGroup> as_groups(std::span<const LinearForm> forms) {
  std::vector<LinearGroup> groups;
  groups.reserve(forms.size());
  for (const auto& f : forms) groups.push_back({f});
  return groups;
}

// Calls visit(J) for every J ⊂ {0..q-1} with 1 ≤ #J ≤ max_size, by size then
// lexicographically; stops when visit returns false.
template <class Visit>
void for_each_subset(int q, int max_size, Visit&& visit) {
  std::vector<int> j;
  for (int size = 1; size <= max_size; ++size) {
    j.resize(size);
    for (int i = 0; i < size; ++i) j[i] = i;
    while (true) {
      if (!visit(static_cast<const std::vector<int>&>(j))) return;
      int i = size - 1;
      while (i >= 0 && j[i] == q - size + i) --i;
      if (i < 0) break;
      ++j[i];
      for (int k = i + 1; k < size; ++k) j[k] = j[k - 1] + 1;
    }
  }
}

}  // namespace

int intersection_dim(std::span<const LinearForm> forms, const LinearSubvariety& x) {
  auto groups = as_groups(forms);
  return intersection_dim(groups, x);
}

int intersection_dim(std::span<const LinearGroup> groups, const LinearSubvariety& x) {
  check_dims(groups, x);
  linalg::Matrix m = as_matrix(x.forms());
  for (const auto& g : groups) {
    for (const auto& f : g) m.push_back(as_vector(f));
  }
  return x.ambient_dim() - static_cast<int>(linalg::rank(m));
}

PositionReport check_subgeneral(std::span<const LinearForm> forms, const LinearSubvariety& x, int l,
                                PositionMode mode) {
  auto groups = as_groups(forms);
  return check_subgeneral(std::span<const LinearGroup>(groups), x, l, mode);
}

PositionReport check_subgeneral(std::span<const LinearGroup> groups, const LinearSubvariety& x,
                                int l, PositionMode mode) {
  if (l < x.dim()) {
    throw ArgumentError("l = " + std::to_string(l) + " is below dim X = " + std::to_string(x.dim()));
  }
  if (groups.empty()) throw ArgumentError("position check needs at least one subscheme");
  check_dims(groups, x);

  PositionReport report;
  report.l = l;
  const int q = static_cast<int>(groups.size());
  std::vector<LinearGroup> chosen;
  for_each_subset(q, std::min(q, l + 1), [&](const std::vector<int>& j) {
    chosen.clear();
    for (int i : j) chosen.push_back(groups[i]);
    int dim = intersection_dim(std::span<const LinearGroup>(chosen), x);
    int bound = l - static_cast<int>(j.size());
    if (dim > bound) {
      report.verdict = false;
      report.witnesses.push_back({j, dim, bound});
      if (mode == PositionMode::verdict_only) return false;
    }
    return true;
  });
  return report;
}

PositionReport check_general(std::span<const LinearForm> forms, const LinearSubvariety& x,
                             PositionMode mode) {
  return check_subgeneral(forms, x, x.dim(), mode);
}

int minimal_subgeneral_index(std::span<const LinearForm> forms, const LinearSubvariety& x) {
  // Every condition dim ≤ l − #J holds once l ≥ dim X + q.
  const int q = static_cast<int>(forms.size());
  const int top = x.dim() + q;
  for (int l = x.dim(); l <= top; ++l) {
    if (check_subgeneral(forms, x, l, PositionMode::verdict_only).verdict) return l;
  }
  return -1;
}

}  // namespace subspace
