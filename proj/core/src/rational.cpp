#include "subspace/rational.hpp"

#include <algorithm>
#include <mpfr.h>

#include <cctype>

#include "subspace/error.hpp"

namespace subspace {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool valid_integer_literal(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  if (allow_sign && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

// 256 bits is far beyond double precision; rounding the MPFR result to
// double gives the correctly rounded log for all practical inputs.
constexpr mpfr_prec_t kLogPrecision = 256;

}  // namespace

Rat make_rat(const Integer& num, const Integer& den) {
  if (den == 0) throw ArgumentError("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat make_rat(long num, long den) { return make_rat(Integer(num), Integer(den)); }

Rat parse_rat(std::string_view text) {
  auto s = trim(text);
  auto slash = s.find('/');
  auto num = trim(s.substr(0, slash));
  if (!valid_integer_literal(num, true)) {
    throw ArgumentError("malformed rational '" + std::string(text) + "'");
  }
  if (slash == std::string_view::npos) return Rat(parse_integer(num));
  auto den = trim(s.substr(slash + 1));
  if (!valid_integer_literal(den, true)) {
    throw ArgumentError("malformed rational '" + std::string(text) + "'");
  }
  return make_rat(parse_integer(num), parse_integer(den));
}

std::string to_string(const Rat& x) { return x.get_str(10); }
std::string to_string(const Integer& x) { return x.get_str(10); }

double log_real(const Rat& x) {
  if (sgn(x) <= 0) throw DomainError("log of non-positive rational " + to_string(x));
  // MPFR rounds correctly to the 53-bit target; only the input needs care.
  mpfr_t in, out;
  mpfr_init2(out, 53);
  if (mpz_cmp_ui(x.get_den_mpz_t(), 1) == 0) {
    const auto bits = std::max<std::size_t>(mpz_sizeinbase(x.get_num_mpz_t(), 2), 2);
    mpfr_init2(in, static_cast<mpfr_prec_t>(bits));
    mpfr_set_z(in, x.get_num_mpz_t(), MPFR_RNDN);  // exact
  } else {
    mpfr_init2(in, kLogPrecision);
    mpfr_set_q(in, x.get_mpq_t(), MPFR_RNDN);
  }
  mpfr_log(out, in, MPFR_RNDN);
  const double result = mpfr_get_d(out, MPFR_RNDN);
  mpfr_clear(in);
  mpfr_clear(out);
  return result;
}

double log_real(const Integer& x) { return log_real(Rat(x)); }

Integer abs(const Integer& x) {
  Integer r;
  mpz_abs(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

Rat abs(const Rat& x) {
  Rat r;
  mpq_abs(r.get_mpq_t(), x.get_mpq_t());
  return r;
}

long valuation(const Integer& x, const Integer& p) {
  if (x == 0) throw DomainError("valuation of zero");
  Integer rest;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

Integer pow(const Integer& x, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), e);
  return r;
}

Rat pow(const Rat& x, long e) {
  if (e >= 0) {
    return make_rat(pow(x.get_num(), static_cast<unsigned long>(e)),
                    pow(x.get_den(), static_cast<unsigned long>(e)));
  }
  if (x == 0) throw DomainError("negative power of zero");
  auto k = static_cast<unsigned long>(-e);
  return make_rat(pow(x.get_den(), k), pow(x.get_num(), k));
}

std::size_t bit_length(const Integer& x) {
  if (x == 0) return 0;
  return mpz_sizeinbase(x.get_mpz_t(), 2);
}

}  // namespace subspace
