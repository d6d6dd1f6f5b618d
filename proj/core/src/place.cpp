#include "subspace/place.hpp"

#include <algorithm>
#include <map>

#include "subspace/error.hpp"

namespace subspace {

namespace {

constexpr unsigned long kSmallPrimeBound = 1000;

// Brent's variant of Pollard rho; n is odd, composite and has no small
// factors.
Integer pollard_brent(const Integer& n) {
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, q = 1, g = 1, ys;
    unsigned long r = 1;
    const unsigned long m = 128;
    auto step = [&](Integer& z) {
      z = z * z + c;
      z %= n;
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) step(y);
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          step(y);
          Integer diff = abs(Integer(x - y));
          q = (q * diff) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      }
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        step(ys);
        Integer diff = abs(Integer(x - ys));
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(const Integer& n, std::map<Integer, long>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  Integer d = pollard_brent(n);
  factor_into(d, out);
  factor_into(Integer(n / d), out);
}

}  // namespace

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

std::vector<std::pair<Integer, long>> factor(const Integer& n) {
  if (n == 0) throw DomainError("factorization of zero");
  Integer m = abs(n);
  std::map<Integer, long> found;
  for (unsigned long p = 2; p < kSmallPrimeBound && m > 1; p += (p == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      long e = static_cast<long>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), Integer(p).get_mpz_t()));
      found[Integer(p)] += e;
    }
  }
  factor_into(m, found);
  return {found.begin(), found.end()};
}

Place Place::infinity() { return Place(true, 0); }

Place Place::finite(const Integer& p) {
  if (!is_prime(p)) throw ArgumentError("place requires a prime, got " + subspace::to_string(p));
  return Place(false, p);
}

Place Place::finite(long p) { return finite(Integer(p)); }

Place Place::parse(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "oo") return infinity();
  if (text.starts_with("p=")) text.remove_prefix(2);
  if (text.empty() || text.find_first_not_of("0123456789") != std::string_view::npos) {
    throw ArgumentError("malformed place '" + std::string(text) + "'");
  }
  return finite(Integer(std::string(text), 10));
}

std::string Place::to_string() const {
  return archimedean_ ? "inf" : "p=" + subspace::to_string(prime_);
}

LogNorm norm(const Rat& x, const Place& v) {
  if (x == 0) throw DomainError("norm of zero is -infinity");
  LogNorm out;
  if (v.is_archimedean()) {
    out.approx = log_real(abs(x));
    return out;
  }
  long e = ord(x, v.prime());
  out.exact = LogNorm::Exact{v.prime(), e};
  out.approx = -static_cast<Real>(e) * log_real(v.prime());
  return out;
}

Rat abs_value(const Rat& x, const Place& v) {
  if (x == 0) return 0;
  if (v.is_archimedean()) return abs(x);
  // The place already guarantees a prime, so skip the primality check in ord().
  const auto& p = v.prime();
  return pow(Rat(p), valuation(x.get_den(), p) - valuation(x.get_num(), p));
}

int compare_abs(const Rat& a, const Rat& b, const Place& v) {
  int c = cmp(abs_value(a, v), abs_value(b, v));
  return (c > 0) - (c < 0);
}

long ord(const Rat& x, const Integer& p) {
  if (!is_prime(p)) throw ArgumentError("ord requires a prime, got " + to_string(p));
  if (x == 0) throw DomainError("ord of zero");
  return valuation(x.get_num(), p) - valuation(x.get_den(), p);
}

Rat ProductFormulaLedger::residual_ratio() const {
  Rat prod = 1;
  for (const auto& [p, e] : finite) prod *= pow(Rat(p), e);
  return archimedean / prod;
}

Real ProductFormulaLedger::residual_approx() const {
  Real sum = archimedean_log;
  for (const auto& [p, e] : finite) sum -= static_cast<Real>(e) * log_real(p);
  return sum;
}

ProductFormulaLedger product_formula_residual(const Rat& x) {
  if (x == 0) throw DomainError("product formula undefined at zero");
  ProductFormulaLedger out;
  std::map<Integer, long> exps;
  for (const auto& [p, e] : factor(x.get_num())) exps[p] += e;
  for (const auto& [p, e] : factor(x.get_den())) exps[p] -= e;
  out.finite.assign(exps.begin(), exps.end());
  out.archimedean = abs(x);
  out.archimedean_log = log_real(out.archimedean);
  return out;
}

}  // namespace subspace
