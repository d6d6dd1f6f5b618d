#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace subspace {

using Integer = mpz_class;

/// Exact rationals. GMP keeps `mpq_class` canonical (coprime, positive
/// denominator, zero as 0/1) as long as values are built through
/// `make_rat` / `parse_rat` or arithmetic.
using Rat = mpq_class;

Rat make_rat(const Integer& num, const Integer& den);
Rat make_rat(long num, long den = 1);

/// Parses "a", "a/b", "-a/b" (surrounding whitespace allowed).
/// Throws ArgumentError on malformed input or a zero denominator.
Rat parse_rat(std::string_view text);

/// Canonical "a/b" form, with "/b" omitted when b = 1.
std::string to_string(const Rat& x);
std::string to_string(const Integer& x);

/// Natural logarithm of a positive rational, evaluated with MPFR so huge
/// numerators and denominators never overflow. Correctly rounded to double
/// for integers; a non-integer is first rounded to 256 bits.
double log_real(const Rat& x);
double log_real(const Integer& x);

Integer abs(const Integer& x);
Rat abs(const Rat& x);

/// p-adic valuation of a nonzero integer (p ≥ 2 not checked here).
long valuation(const Integer& x, const Integer& p);

/// x^e for e ≥ 0.
Integer pow(const Integer& x, unsigned long e);
/// x^e for any integer e (x ≠ 0 when e < 0).
Rat pow(const Rat& x, long e);

/// Number of bits in |x| (0 for zero).
std::size_t bit_length(const Integer& x);

}  // namespace subspace
