#include "ademf/realalg.hpp"

#include <stdexcept>

namespace ademf {

RealAlg RealAlg::rational(const Rational& q) {
  RealAlg a;
  a.sign_ = sign_of(q);
  a.radicand_ = q < 0 ? Rational(-q) : q;
  a.index_ = 1;
  return a;
}

RealAlg RealAlg::root(const Rational& q, unsigned index) {
  if (index == 0) throw std::domain_error("RealAlg: zero root index");
  if (q < 0 && index % 2 == 0)
    throw std::domain_error("RealAlg: even root of a negative rational");
  RealAlg a;
  a.sign_ = sign_of(q);
  a.radicand_ = q < 0 ? Rational(-q) : q;
  a.index_ = index;
  return a;
}

RealAlg RealAlg::negated() const {
  RealAlg a = *this;
  a.sign_ = -a.sign_;
  return a;
}

Rational RealAlg::rational_value() const {
  if (sign_ == 0) return Rational(0);
  if (index_ != 1) throw std::domain_error("RealAlg: not a rational value");
  return sign_ > 0 ? radicand_ : Rational(-radicand_);
}

int RealAlg::compare(const Rational& q) const {
  int qs = sign_of(q);
  if (sign_ != qs) return sign_ < qs ? -1 : 1;
  if (sign_ == 0) return 0;
  // Same strict sign: compare |this|^index with |q|^index.
  Rational qp = pow_int(q < 0 ? Rational(-q) : q, index_);
  int mag_cmp = radicand_ < qp ? -1 : (radicand_ > qp ? 1 : 0);
  return sign_ > 0 ? mag_cmp : -mag_cmp;
}

Interval RealAlg::enclosure(unsigned bits) const {
  if (sign_ == 0) return Interval(Rational(0));
  auto [lo, hi] = root_bracket(radicand_, index_, bits);
  if (sign_ > 0) return Interval(lo, hi);
  return Interval(-hi, -lo);
}

std::string RealAlg::str() const {
  if (sign_ == 0) return "0";
  std::string body = index_ == 1
                         ? format_rational(radicand_)
                         : "(" + format_rational(radicand_) + ")^(1/" +
                               std::to_string(index_) + ")";
  return sign_ > 0 ? body : "-" + body;
}

}  // namespace ademf
