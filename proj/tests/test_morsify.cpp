#include "doctest.h"

#include "ademf/morsify.hpp"

using namespace ademf;

TEST_CASE("family formulas per case") {
  auto a2 = build_family(parse_germ_code("A2+s0n1"));
  CHECK(a2.deformed.str() == "x^3 + x*t + y^2");
  CHECK(a2.case_tag == CaseTag::APlusEven);
  CHECK(a2.interval.contains(Rational(1)));
  CHECK(a2.interval.contains(Rational(0)));
  CHECK(!a2.interval.contains(Rational(-1, 100)));

  auto a3 = build_family(parse_germ_code("A3+s0n1"));
  CHECK(a3.deformed.str() == "x^4 - 4*x*t + y^2");
  CHECK(a3.case_tag == CaseTag::APlusOdd);

  auto d5 = build_family(parse_germ_code("D5+s0n1"));
  CHECK(d5.deformed.str() == "x^2*y + 2*x^2*t + y^4 - y*t");
  CHECK(d5.case_tag == CaseTag::DPlusOdd);
  // I = (-(1/32)^(1/2), 0]
  CHECK(d5.interval.lo_open);
  CHECK(!d5.interval.hi_open);
  CHECK(d5.interval.hi == 0);
  CHECK(d5.interval.lo.index() == 2);
  CHECK(d5.interval.lo.radicand() == Rational(1, 32));
  CHECK(d5.interval.lo.sign() < 0);

  auto e7 = build_family(parse_germ_code("E7s0n1"));
  CHECK(family_at(e7, Rational(1)).str() == "x^3 + x*y^3 + 3*x + y^3");
}

TEST_CASE("t = 0 recovers the germ bit-exactly across the catalog") {
  for (const auto& d : enumerate_catalog(9, 3)) {
    auto fam = build_family(d);
    CHECK(fam.deformed.substitute("t", Rational(0)) == build_germ(d));
    CHECK(fam.interval.contains_zero_endpoint());
  }
}

TEST_CASE("deformations are linear in t and the tail is t-free") {
  for (const auto& d : enumerate_catalog(9, 4)) {
    auto fam = build_family(d);
    size_t t_index = fam.deformed.var_index("t");
    for (const auto& [e, c] : fam.deformed.terms()) {
      CHECK(e[t_index] <= 1);
      // any term using a tail variable must be t-free and pure quadratic
      bool tail = false;
      for (size_t v = 2; v + 1 < e.size(); ++v)
        if (e[v] != 0) tail = true;
      if (tail) CHECK(e[t_index] == 0);
    }
  }
}

TEST_CASE("admissible interval membership is exact") {
  auto d5 = build_family(parse_germ_code("D5+s0n1"));
  // -1/2 is outside I since (1/2)^2 = 1/4 > 1/32
  CHECK(!d5.interval.contains(Rational(-1, 2)));
  CHECK_THROWS_AS(family_at(d5, Rational(-1, 2)), std::domain_error);
  // -1/6 is inside: (1/6)^2 = 1/36 < 1/32
  CHECK(d5.interval.contains(Rational(-1, 6)));
  CHECK(family_at(d5, Rational(0)) == build_germ(d5.germ));

  auto a3m = build_family(parse_germ_code("A3-s0n1"));
  CHECK(a3m.interval.contains(Rational(-1)));
  CHECK(!a3m.interval.contains(Rational(1, 2)));
}

TEST_CASE("representative parameters") {
  auto a2 = build_family(parse_germ_code("A2+s0n1"));
  CHECK(representative_t(a2) == Rational(1, 2));
  auto a3m = build_family(parse_germ_code("A3-s0n1"));
  CHECK(representative_t(a3m) == Rational(-1, 2));
  auto e7 = build_family(parse_germ_code("E7s0n1"));
  CHECK(representative_t(e7) == Rational(1, 10));

  for (const auto& d : enumerate_catalog(9, 2)) {
    auto fam = build_family(d);
    Rational t = representative_t(fam);
    CHECK(t != 0);
    CHECK(fam.interval.contains(t));
    // |t| at most half the interval width, checked via the exact endpoint
    if (fam.interval.lo.is_rational()) {
      Rational width = fam.interval.hi - fam.interval.lo.rational_value();
      Rational mag = t < 0 ? -t : t;
      CHECK(mag * 2 <= width);
    } else {
      // algebraic endpoint: |t| <= |lo| / 2 iff (2|t|)^m <= radicand
      Rational mag = t < 0 ? -t : t;
      CHECK(pow_int(mag * 2, fam.interval.lo.index()) <=
            fam.interval.lo.radicand());
    }
  }
}

TEST_CASE("family JSON serialization") {
  auto d5 = build_family(parse_germ_code("D5+s0n1"));
  std::string j = family_to_json(d5);
  CHECK(j.find("\"germ\": \"D5+s0n1\"") != std::string::npos);
  CHECK(j.find("x^2*y + 2*x^2*t + y^4 - y*t") != std::string::npos);
  CHECK(j.find("(1/32)^(1/2)") != std::string::npos);
}
