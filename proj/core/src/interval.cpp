#include "ademf/interval.hpp"

#include <algorithm>
#include <stdexcept>

namespace ademf {

Interval::Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
  if (lo > hi) throw std::invalid_argument("interval with lo > hi");
}

Interval Interval::hull_of(const Rational& a, const Rational& b) {
  return a <= b ? Interval(a, b) : Interval(b, a);
}

Rational Interval::mag() const {
  Rational a = lo < 0 ? -lo : lo;
  Rational b = hi < 0 ? -hi : hi;
  return std::max(a, b);
}

Interval Interval::operator+(const Interval& o) const {
  return Interval(lo + o.lo, hi + o.hi);
}

Interval Interval::operator-(const Interval& o) const {
  return Interval(lo - o.hi, hi - o.lo);
}

Interval Interval::operator*(const Interval& o) const {
  Rational a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
  return Interval(std::min(std::min(a, b), std::min(c, d)),
                  std::max(std::max(a, b), std::max(c, d)));
}

Interval Interval::operator+(const Rational& q) const {
  return Interval(lo + q, hi + q);
}

Interval Interval::operator*(const Rational& q) const {
  if (q >= 0) return Interval(lo * q, hi * q);
  return Interval(hi * q, lo * q);
}

Interval Interval::operator/(const Interval& o) const {
  if (o.contains_zero()) throw std::domain_error("interval division by zero");
  Interval inv(Rational(1) / o.hi, Rational(1) / o.lo);
  return *this * inv;
}

Interval Interval::pow(unsigned e) const {
  if (e == 0) return Interval(Rational(1));
  if (e == 1) return *this;
  if (e % 2 == 1 || lo >= 0)
    return Interval(pow_int(lo, e), pow_int(hi, e));
  if (hi <= 0) return Interval(pow_int(hi, e), pow_int(lo, e));
  // even power across zero
  return Interval(Rational(0), std::max(pow_int(lo, e), pow_int(hi, e)));
}

std::optional<Interval> Interval::intersect(const Interval& o) const {
  Rational l = std::max(lo, o.lo), h = std::min(hi, o.hi);
  if (l > h) return std::nullopt;
  return Interval(l, h);
}

Interval Interval::hull(const Interval& o) const {
  return Interval(std::min(lo, o.lo), std::max(hi, o.hi));
}

Interval Interval::round_out(unsigned bits) const {
  return Interval(dyadic_floor(lo, bits), dyadic_ceil(hi, bits));
}

Interval Interval::inflate(const Rational& margin) const {
  if (margin < 0) throw std::invalid_argument("negative inflation");
  return Interval(lo - margin, hi + margin);
}

std::string Interval::str() const {
  return "[" + format_rational(lo) + ", " + format_rational(hi) + "]";
}

bool box_strictly_contains(const Box& outer, const Box& inner) {
  if (outer.size() != inner.size()) return false;
  for (size_t i = 0; i < outer.size(); ++i)
    if (!outer[i].strictly_contains(inner[i])) return false;
  return true;
}

bool boxes_intersect(const Box& a, const Box& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!a[i].intersects(b[i])) return false;
  return true;
}

Rational box_max_width(const Box& b) {
  Rational w(0);
  for (const auto& iv : b) w = std::max(w, iv.width());
  return w;
}

std::string box_str(const Box& b) {
  std::string out = "(";
  for (size_t i = 0; i < b.size(); ++i) {
    if (i) out += " x ";
    out += b[i].str();
  }
  return out + ")";
}

}  // namespace ademf
