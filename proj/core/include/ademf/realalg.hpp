#ifndef ADEMF_REALALG_HPP
#define ADEMF_REALALG_HPP

#include <string>

#include "ademf/interval.hpp"
#include "ademf/numbers.hpp"

namespace ademf {

// A real number of the form sign * radicand^(1/index) with rational radicand
// >= 0.  Covers every closed-form critical point coordinate in the catalog
// (rational values, k-th roots of rationals, and their negatives); comparisons
// against rationals are exact via power comparison, never floating point.
class RealAlg {
 public:
  RealAlg() : sign_(0), radicand_(0), index_(1) {}
  static RealAlg rational(const Rational& q);
  /// Real index-th root of q.  q < 0 requires odd index.
  static RealAlg root(const Rational& q, unsigned index);
  RealAlg negated() const;

  int sign() const { return sign_; }
  unsigned index() const { return index_; }
  const Rational& radicand() const { return radicand_; }
  bool is_rational() const { return index_ == 1 || sign_ == 0; }
  /// Value as a rational; requires is_rational().
  Rational rational_value() const;

  /// Exact three-way comparison with a rational (-1, 0, +1).
  int compare(const Rational& q) const;
  /// Enclosure of width <= 2^-bits.
  Interval enclosure(unsigned bits) const;

  std::string str() const;

 private:
  int sign_;            // -1, 0, +1
  Rational radicand_;   // >= 0
  unsigned index_;      // >= 1
};

}  // namespace ademf

#endif
