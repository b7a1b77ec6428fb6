#ifndef ADEMF_INTERVAL_HPP
#define ADEMF_INTERVAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "ademf/numbers.hpp"

namespace ademf {

// Closed interval with exact rational endpoints.  Since rationals are closed
// under +,-,*,/ no outward rounding is needed for soundness; round_out exists
// only to keep endpoint bit sizes in check during iterated contractions.
struct Interval {
  Rational lo, hi;

  Interval() : lo(0), hi(0) {}
  Interval(Rational point) : lo(point), hi(point) {}
  Interval(Rational l, Rational h);

  static Interval hull_of(const Rational& a, const Rational& b);

  bool contains(const Rational& q) const { return lo <= q && q <= hi; }
  bool contains_zero() const { return lo <= 0 && 0 <= hi; }
  bool strictly_positive() const { return lo > 0; }
  bool strictly_negative() const { return hi < 0; }
  bool is_point() const { return lo == hi; }
  /// True if other lies in the interior of *this.
  bool strictly_contains(const Interval& other) const {
    return lo < other.lo && other.hi < hi;
  }
  bool intersects(const Interval& other) const {
    return !(hi < other.lo || other.hi < lo);
  }

  Rational width() const { return hi - lo; }
  Rational mid() const { return (lo + hi) / 2; }
  Rational mag() const;  // max |x| over the interval

  Interval operator-() const { return Interval(-hi, -lo); }
  Interval operator+(const Interval& o) const;
  Interval operator-(const Interval& o) const;
  Interval operator*(const Interval& o) const;
  Interval operator+(const Rational& q) const;
  Interval operator*(const Rational& q) const;
  /// Division; o must not contain zero.
  Interval operator/(const Interval& o) const;
  Interval pow(unsigned e) const;

  std::optional<Interval> intersect(const Interval& o) const;
  Interval hull(const Interval& o) const;
  /// Sound enlargement to dyadic endpoints with `bits` fractional bits.
  Interval round_out(unsigned bits) const;
  Interval inflate(const Rational& margin) const;

  std::string str() const;
};

using Box = std::vector<Interval>;

bool box_strictly_contains(const Box& outer, const Box& inner);
bool boxes_intersect(const Box& a, const Box& b);
Rational box_max_width(const Box& b);
std::string box_str(const Box& b);

}  // namespace ademf

#endif
