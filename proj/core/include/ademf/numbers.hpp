#ifndef ADEMF_NUMBERS_HPP
#define ADEMF_NUMBERS_HPP

#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <string>

namespace ademf {

// Exact arithmetic substrate.  Rationals are GMP-backed and kept canonical
// (denominator > 0, gcd(num, den) = 1) by the backend.
using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Parse "a", "-a", "a/b" with optional surrounding whitespace.
Rational parse_rational(const std::string& text);

/// Canonical form "a" or "a/b"; round-trips through parse_rational.
std::string format_rational(const Rational& q);

int sign_of(const Rational& q);

Rational pow_int(const Rational& base, unsigned exponent);
BigInt pow_int(const BigInt& base, unsigned exponent);

/// Largest dyadic k-bit rational <= q.
Rational dyadic_floor(const Rational& q, unsigned bits);
/// Smallest dyadic k-bit rational >= q.
Rational dyadic_ceil(const Rational& q, unsigned bits);

// Dyadic bracket of the real m-th root of a nonnegative rational; the
// returned pair (lo, hi) satisfies lo <= r^(1/m) <= hi and hi - lo <= 2^-bits.
std::pair<Rational, Rational> root_bracket(const Rational& radicand,
                                           unsigned index, unsigned bits);

/// Rational lower bound on r^(1/m), positive whenever r > 0.
Rational root_under_approx(const Rational& radicand, unsigned index,
                           unsigned bits);

BigInt to_bigint(__int128 v);

}  // namespace ademf

#endif
