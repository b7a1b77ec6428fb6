#include "ademf/numbers.hpp"

#include <stdexcept>

namespace ademf {

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational literal: " + text);
  }
}

std::string format_rational(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

int sign_of(const Rational& q) {
  if (q > 0) return 1;
  if (q < 0) return -1;
  return 0;
}

Rational pow_int(const Rational& base, unsigned exponent) {
  Rational acc(1), b = base;
  unsigned e = exponent;
  while (e) {
    if (e & 1u) acc *= b;
    b *= b;
    e >>= 1u;
  }
  return acc;
}

BigInt pow_int(const BigInt& base, unsigned exponent) {
  BigInt acc(1), b = base;
  unsigned e = exponent;
  while (e) {
    if (e & 1u) acc *= b;
    b *= b;
    e >>= 1u;
  }
  return acc;
}

Rational dyadic_floor(const Rational& q, unsigned bits) {
  BigInt scale = pow_int(BigInt(2), bits);
  BigInt num = numerator(q) * scale;
  BigInt den = denominator(q);
  BigInt fl;
  mpz_fdiv_q(fl.backend().data(), num.backend().data(), den.backend().data());
  return Rational(fl, scale);
}

Rational dyadic_ceil(const Rational& q, unsigned bits) {
  BigInt scale = pow_int(BigInt(2), bits);
  BigInt num = numerator(q) * scale;
  BigInt den = denominator(q);
  BigInt cl;
  mpz_cdiv_q(cl.backend().data(), num.backend().data(), den.backend().data());
  return Rational(cl, scale);
}

std::pair<Rational, Rational> root_bracket(const Rational& radicand,
                                           unsigned index, unsigned bits) {
  if (radicand < 0) throw std::domain_error("root_bracket: negative radicand");
  if (index == 0) throw std::domain_error("root_bracket: zero index");
  if (radicand == 0) return {Rational(0), Rational(0)};
  if (index == 1) return {radicand, radicand};
  Rational lo(0), hi = radicand < 1 ? Rational(1) : radicand;
  Rational width_target(BigInt(1), pow_int(BigInt(2), bits));
  while (hi - lo > width_target) {
    Rational mid = (lo + hi) / 2;
    if (pow_int(mid, index) <= radicand)
      lo = mid;
    else
      hi = mid;
  }
  return {lo, hi};
}

Rational root_under_approx(const Rational& radicand, unsigned index,
                           unsigned bits) {
  auto [lo, hi] = root_bracket(radicand, index, bits);
  // Refine until the lower end is strictly positive.
  while (radicand > 0 && lo == 0) {
    Rational mid = (lo + hi) / 2;
    if (pow_int(mid, index) <= radicand)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

BigInt to_bigint(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : v;
  BigInt hi = static_cast<std::uint64_t>(u >> 64);
  BigInt lo = static_cast<std::uint64_t>(u & ~std::uint64_t(0));
  BigInt out = (hi << 64) + lo;
  return neg ? -out : out;
}

}  // namespace ademf
