#include "subspace/sampling.hpp"

#include <cmath>
#include <set>

#include "subspace/error.hpp"
#include "subspace/weil.hpp"

namespace subspace {

namespace {

constexpr Real kMaxWindowHeight = 700;  // exp() stays finite in double

bool in_window(const ProjPoint& p, Real h_min, Real h_max) {
  Real h = height(p);
  return h >= h_min && h <= h_max;
}

Integer min_coordinate_for_height(Real h) {
  if (h <= 0) return 1;
  Integer n = max_coordinate_for_height(h);
  while (log_real(n) < h) ++n;
  return n;
}

SampleResult enumerate_p1(Real h_min, Real h_max, std::size_t count, const PointFilter& excluded) {
  SampleResult out;
  const Integer lo = min_coordinate_for_height(h_min);
  const Integer hi = max_coordinate_for_height(h_max);
  auto take = [&](const Integer& a, const Integer& b) {
    ++out.attempts;
    auto p = ProjPoint::from_integers(std::vector<Integer>{a, b});
    if (excluded && excluded(p)) return;
    out.points.push_back(std::move(p));
  };
  for (Integer m = lo; m <= hi && out.points.size() < count; ++m) {
    if (m == 1) {
      take(0, 1);
      take(1, 0);
    }
    // Canonical [a:b] with a > 0, gcd(a, |b|) = 1 and max(a, |b|) = m.
    for (Integer a = 1; a <= m && out.points.size() < count; ++a) {
      if (a == m) {
        for (Integer b = -m; b <= m && out.points.size() < count; ++b) {
          if (b == 0) continue;
          Integer g;
          Integer ab = abs(b);
          mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), ab.get_mpz_t());
          if (g == 1) take(a, b);
        }
      } else {
        Integer g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
        if (g != 1) continue;
        take(a, -m);
        if (out.points.size() < count) take(a, m);
      }
    }
  }
  if (out.points.size() > count) out.points.erase(out.points.begin() + static_cast<std::ptrdiff_t>(count), out.points.end());
  return out;
}

}  // namespace

Integer max_coordinate_for_height(Real h) {
  if (h < 0) return 0;
  if (h > kMaxWindowHeight) throw ArgumentError("height window too large");
  Integer n(std::floor(std::exp(h)));
  while (n > 1 && log_real(n) > h) --n;
  while (log_real(Integer(n + 1)) <= h) ++n;
  return n;
}

SampleResult sample_points(const LinearSubvariety& x, Real h_min, Real h_max, std::size_t count,
                           std::uint64_t seed, const PointFilter& excluded) {
  if (!(h_min < h_max)) throw ArgumentError("height window needs h_min < h_max");
  if (h_max > kMaxWindowHeight) throw ArgumentError("height window too large");
  if (count == 0) return {};
  if (x.is_ambient() && x.ambient_dim() == 1) return enumerate_p1(h_min, h_max, count, excluded);

  const auto basis = x.parametrization();
  Integer basis_max = 1;
  for (const auto& b : basis) {
    for (const auto& c : b) basis_max = std::max(basis_max, abs(c));
  }
  const std::size_t width = static_cast<std::size_t>(x.ambient_dim()) + 1;

  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(Integer(std::to_string(seed), 10));
  const Integer real_scale = Integer(1) << 53;

  SampleResult out;
  std::set<ProjPoint> seen;
  const std::size_t budget = 64 * count + 1024;
  while (out.points.size() < count && out.attempts < budget) {
    ++out.attempts;
    Integer r = rng.get_z_bits(53);
    Real u = Rat(r, real_scale).get_d();
    Real target = h_min + u * (h_max - h_min);
    Integer radius = max_coordinate_for_height(target) / basis_max;
    if (radius < 1) radius = 1;
    std::vector<Integer> coords(width, 0);
    for (const auto& b : basis) {
      Integer c = rng.get_z_range(Integer(2 * radius + 1)) - radius;
      for (std::size_t k = 0; k < width; ++k) coords[k] += c * b[k];
    }
    bool all_zero = std::all_of(coords.begin(), coords.end(), [](const Integer& c) { return c == 0; });
    if (all_zero) continue;
    auto p = ProjPoint::from_integers(coords);
    if (!in_window(p, h_min, h_max)) continue;
    if (excluded && excluded(p)) continue;
    if (!seen.insert(p).second) continue;
    out.points.push_back(std::move(p));
  }
  out.partial = out.points.size() < count;
  return out;
}

}  // namespace subspace
