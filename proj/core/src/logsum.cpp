#include "subspace/logsum.hpp"

#include <cmath>
#include <limits>

#include "subspace/error.hpp"

namespace subspace {

namespace {

// log(x) within about 2 ulp plus 2^-52 absolute. MPFR only when x leaves the
// normal double range.
Real approx_log(const Rat& x) {
  Real d = x.get_d();
  if (std::isnormal(d)) return std::log(d);
  return log_real(x);
}

}  // namespace

void LogSum::add(const Rat& weight, const Rat& argument) {
  if (sgn(argument) <= 0) throw DomainError("log of non-positive value " + to_string(argument));
  if (weight == 0 || argument == 1) return;
  terms_.push_back({weight, argument, weight.get_d() * approx_log(argument)});
}

void LogSum::add(const LogSum& other, const Rat& scale) {
  for (const auto& t : other.terms_) add(scale * t.weight, t.argument);
}

Real LogSum::value() const {
  // Neumaier summation.
  Real sum = 0, carry = 0;
  for (const auto& t : terms_) {
    Real x = t.approx;
    Real s = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
      carry += (sum - s) + x;
    } else {
      carry += (x - s) + sum;
    }
    sum = s;
  }
  return sum + carry;
}

namespace {

// Each term carries a few ulps of relative error plus |weight|·2^-51
// absolute error from rounding the argument to double. The margin below is
// generous on purpose.
bool float_decides(const LogSum& a, const LogSum& b, int& sign) {
  constexpr Real eps = std::numeric_limits<Real>::epsilon();
  Real mag = 0, weights = 0;
  for (const auto* s : {&a, &b}) {
    for (const auto& t : s->terms()) {
      mag += std::fabs(t.approx);
      weights += std::fabs(t.weight.get_d());
    }
  }
  if (!std::isfinite(mag) || !std::isfinite(weights)) return false;
  Real d = a.value() - b.value();
  Real tol = 64 * eps * (mag + weights) + std::numeric_limits<Real>::min();
  if (!(std::fabs(d) > tol)) return false;
  sign = d > 0 ? 1 : -1;
  return true;
}

}  // namespace

int LogSum::compare(const LogSum& a, const LogSum& b, std::size_t bit_budget) {
  if (int sign = 0; float_decides(a, b, sign)) return sign;
  std::vector<Term> all = a.terms_;
  for (const auto& t : b.terms_) all.push_back({-t.weight, t.argument, -t.approx});

  Integer lcm = 1;
  for (const auto& t : all) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), t.weight.get_den_mpz_t());
  }

  std::size_t bits = 0;
  std::vector<std::pair<long, const Rat*>> powers;
  for (const auto& t : all) {
    Rat scaled = t.weight * lcm;
    Integer k = scaled.get_num();
    if (!k.fits_slong_p()) {
      bits = bit_budget + 1;
      break;
    }
    long e = k.get_si();
    bits += static_cast<std::size_t>(std::labs(e)) *
            (bit_length(t.argument.get_num()) + bit_length(t.argument.get_den()));
    powers.emplace_back(e, &t.argument);
  }
  if (bits > bit_budget) {
    Real d = a.value() - b.value();
    return (d > 0) - (d < 0);
  }

  Integer left = 1, right = 1;
  for (const auto& [e, arg] : powers) {
    auto k = static_cast<unsigned long>(std::labs(e));
    if (e > 0) {
      left *= pow(arg->get_num(), k);
      right *= pow(arg->get_den(), k);
    } else if (e < 0) {
      left *= pow(arg->get_den(), k);
      right *= pow(arg->get_num(), k);
    }
  }
  int c = cmp(left, right);
  return (c > 0) - (c < 0);
}

}  // namespace subspace
