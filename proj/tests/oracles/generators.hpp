#pragma once

#include <optional>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "subspace/projective.hpp"

namespace oracle {

struct Arrangement {
  int m = 1;
  std::vector<subspace::LinearForm> xforms;
  std::vector<subspace::LinearForm> forms;
  int n = 1;
  int l = 1;
};

inline long draw(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline subspace::LinearForm small_form(std::mt19937_64& rng, int m) {
  while (true) {
    std::vector<Rat> c(static_cast<std::size_t>(m + 1));
    bool nonzero = false;
    for (auto& x : c) {
      x = draw(rng, -2, 2);
      nonzero = nonzero || x != 0;
    }
    if (nonzero) return subspace::LinearForm::from_rationals(c);
  }
}

// l+1 forms on an n-dimensional X (P^n itself, or a hyperplane of P^{n+1})
// in l-subgeneral but not (l−1)-subgeneral position; l = n means general
// position. No support contains X. Decided by the minors oracle. Returns nullopt after `attempts`.
inline std::optional<Arrangement> strict_subgeneral(std::mt19937_64& rng, int n, int l, int attempts = 4000) {
  for (int a = 0; a < attempts; ++a) {
    Arrangement arr;
    arr.n = n;
    arr.l = l;
    const bool ambient = draw(rng, 0, 1) == 0;
    arr.m = ambient ? n : n + 1;
    if (!ambient) {
      arr.xforms.push_back(small_form(rng, arr.m));
    }
    // Degenerate forms come from a pencil of k < n+1 base forms, so their
    // common zeros are large.
    const int k = static_cast<int>(draw(rng, 1, n));
    std::vector<subspace::LinearForm> base;
    for (int i = 0; i < k; ++i) base.push_back(small_form(rng, arr.m));
    const long bias = draw(rng, 0, 3);
    for (int i = 0; i <= l; ++i) {
      if (l > n && draw(rng, 0, 3) < bias) {
        std::vector<Rat> c(static_cast<std::size_t>(arr.m + 1), 0);
        bool nonzero = false;
        for (const auto& b : base) {
          const long w = draw(rng, -2, 2);
          for (std::size_t j = 0; j < c.size(); ++j) c[j] += w * Rat(b.coeffs()[j]);
        }
        for (const auto& x : c) nonzero = nonzero || x != 0;
        if (!nonzero) {
          --i;
          continue;
        }
        arr.forms.push_back(subspace::LinearForm::from_rationals(c));
      } else {
        arr.forms.push_back(small_form(rng, arr.m));
      }
    }
    // X must be n-dimensional.
    if (!arr.xforms.empty() && intersection_dim({}, arr.xforms, arr.m) != n) continue;
    // Supports must meet X properly.
    bool proper = true;
    for (const auto& f : arr.forms) proper = proper && intersection_dim({f}, arr.xforms, arr.m) == n - 1;
    if (!proper) continue;
    if (!subgeneral_violations(arr.forms, arr.xforms, arr.m, l).empty()) continue;
    if (l > n && subgeneral_violations(arr.forms, arr.xforms, arr.m, l - 1).empty()) continue;
    return arr;
  }
  return std::nullopt;
}

}  // namespace oracle
