#include "doctest.h"

#include "ademf/interval.hpp"
#include "ademf/numbers.hpp"
#include "ademf/realalg.hpp"

using namespace ademf;

TEST_CASE("rational parse and format round-trip") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-1/2") == Rational(-1, 2));
  CHECK(parse_rational(" 7 ") == Rational(7));
  CHECK(format_rational(Rational(6, 4)) == "3/2");
  CHECK(format_rational(Rational(-5)) == "-5");
  CHECK(parse_rational(format_rational(Rational(22, 7))) == Rational(22, 7));
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
}

TEST_CASE("dyadic rounding brackets the value") {
  Rational q(1, 3);
  Rational lo = dyadic_floor(q, 10), hi = dyadic_ceil(q, 10);
  CHECK(lo <= q);
  CHECK(q <= hi);
  CHECK(hi - lo <= Rational(1, 512));
  CHECK(dyadic_floor(Rational(5, 4), 2) == Rational(5, 4));
}

TEST_CASE("root brackets enclose k-th roots") {
  auto [lo, hi] = root_bracket(Rational(2), 2, 30);
  CHECK(lo * lo <= 2);
  CHECK(hi * hi >= 2);
  CHECK(hi - lo <= Rational(1, 1 << 30));
  auto [l8, h8] = root_bracket(Rational(1, 8), 3, 20);
  CHECK(l8 <= Rational(1, 2));
  CHECK(h8 >= Rational(1, 2));
  Rational under = root_under_approx(Rational(1, 32), 2, 16);
  CHECK(under > 0);
  CHECK(under * under <= Rational(1, 32));
}

TEST_CASE("interval arithmetic bounds") {
  Interval a(Rational(-1), Rational(2));
  CHECK(a.pow(2).lo == 0);
  CHECK(a.pow(2).hi == 4);
  CHECK(a.pow(3).lo == -1);
  CHECK(a.pow(3).hi == 8);
  Interval b(Rational(1, 2), Rational(1));
  CHECK((a * b).lo == -1);
  CHECK((a * b).hi == 2);
  CHECK((a + b).contains(Rational(0)));
  CHECK_THROWS_AS(a / a, std::domain_error);
  CHECK(Interval(Rational(1), Rational(2)).strictly_contains(
      Interval(Rational(5, 4), Rational(3, 2))));
}

TEST_CASE("real algebraic comparisons are exact") {
  RealAlg r = RealAlg::root(Rational(1, 2), 3);  // (1/2)^(1/3) ~ 0.7937
  CHECK(r.compare(Rational(0)) > 0);
  CHECK(r.compare(Rational(1)) < 0);
  CHECK(r.compare(Rational(3, 4)) > 0);   // (3/4)^3 = 27/64 < 1/2
  CHECK(r.compare(Rational(4, 5)) < 0);   // (4/5)^3 = 64/125 > 1/2
  Interval enc = r.enclosure(40);
  CHECK(enc.width() <= Rational(BigInt(1), pow_int(BigInt(2), 40)));
  CHECK(pow_int(enc.lo, 3) <= Rational(1, 2));
  CHECK(pow_int(enc.hi, 3) >= Rational(1, 2));

  RealAlg neg = RealAlg::root(Rational(-27, 8), 3);  // -3/2 exactly
  CHECK(neg.compare(Rational(-3, 2)) == 0);
  CHECK(RealAlg::rational(Rational(-3, 2)).compare(Rational(-3, 2)) == 0);
  CHECK_THROWS_AS(RealAlg::root(Rational(-1), 2), std::domain_error);
}
