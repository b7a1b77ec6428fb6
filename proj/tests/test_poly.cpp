#include "doctest.h"

#include <random>

#include "ademf/poly.hpp"

using namespace ademf;

namespace {

const std::vector<std::string> XY = {"x", "y"};
const std::vector<std::string> XYT = {"x", "y", "t"};

MultiPoly random_poly(std::mt19937& rng, const std::vector<std::string>& vars) {
  std::uniform_int_distribution<int> nterms(1, 5), expo(0, 4), num(-6, 6),
      den(1, 4);
  MultiPoly p(vars);
  int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    MultiPoly::Exponents e(vars.size());
    for (auto& x : e) x = expo(rng);
    p.add_term(e, Rational(num(rng), den(rng)));
  }
  return p;
}

std::vector<Rational> random_point(std::mt19937& rng, size_t dim) {
  std::uniform_int_distribution<int> num(-8, 8), den(1, 5);
  std::vector<Rational> pt;
  for (size_t i = 0; i < dim; ++i) pt.emplace_back(num(rng), den(rng));
  return pt;
}

}  // namespace

TEST_CASE("evaluate at exact points") {
  // x^4 + y^2 vanishes at the singular point
  CHECK(parse_poly(XY, "x^4 + y^2").evaluate({Rational(0), Rational(0)}) == 0);
  // direct hand expansion 1 - 1 = 0
  CHECK(parse_poly(XY, "x^2*y - y^3").evaluate({Rational(1), Rational(1)}) ==
        0);
  // 1 + 3 + 1 = 5
  CHECK(parse_poly(XYT, "x^3 + 3*t*x + y^5")
            .evaluate({Rational(1), Rational(1), Rational(1)}) == 5);
  CHECK_THROWS_AS(parse_poly(XY, "x").evaluate({Rational(1)}),
                  std::invalid_argument);
}

TEST_CASE("partial derivatives match the worked Jacobians") {
  // d/dx (x^{k+1} + t x + y^2), k = 2
  MultiPoly f = parse_poly(XYT, "x^3 + t*x + y^2");
  CHECK(f.partial("x") == parse_poly(XYT, "3*x^2 + t"));
  // d/dy (x^2 y - y^{k-1} + (k-1) t y), k = 5
  MultiPoly g = parse_poly(XYT, "x^2*y - y^4 + 4*t*y");
  CHECK(g.partial("y") == parse_poly(XYT, "x^2 + 4*(t - y^3)"));
  CHECK(parse_poly(XY, "y^2").partial("x") == MultiPoly::zero(XY));
  CHECK_THROWS_AS(f.partial("z"), std::invalid_argument);
}

TEST_CASE("jacobian rows over the spatial variables") {
  MultiPoly f = parse_poly(XYT, "x^3 + 3*t*x + y^4");
  auto jac = f.jacobian({"x", "y"});
  REQUIRE(jac.size() == 2);
  CHECK(jac[0] == parse_poly(XYT, "3*x^2 + 3*t"));
  CHECK(jac[1] == parse_poly(XYT, "4*y^3"));

  MultiPoly e7 = parse_poly(XYT, "x^3 + 3*t*x + x*y^3 + t*y^3");
  auto je7 = e7.jacobian({"x", "y"});
  CHECK(je7[0] == parse_poly(XYT, "3*(x^2 + t) + y^3"));
  CHECK(je7[1] == parse_poly(XYT, "3*y^2*(x + t)"));

  auto zero_row = MultiPoly::constant(XY, 7).jacobian({"x", "y"});
  CHECK(zero_row[0].is_zero());
  CHECK(zero_row[1].is_zero());
  CHECK_THROWS_AS(f.jacobian({}), std::invalid_argument);
}

TEST_CASE("hessian matrices") {
  MultiPoly e7 = parse_poly(XYT, "x^3 + 3*t*x + x*y^3 + t*y^3");
  auto h = e7.hessian({"x", "y"});
  CHECK(h[0][0] == parse_poly(XYT, "6*x"));
  CHECK(h[0][1] == parse_poly(XYT, "3*y^2"));
  CHECK(h[1][0] == parse_poly(XYT, "3*y^2"));
  CHECK(h[1][1] == parse_poly(XYT, "6*y*(x + t)"));

  MultiPoly a2 = parse_poly(XYT, "x^3 + t*x + y^2");
  auto ha = a2.hessian({"x", "y"});
  CHECK(ha[0][0] == parse_poly(XYT, "6*x"));
  CHECK(ha[0][1].is_zero());
  CHECK(ha[1][1] == parse_poly(XYT, "2"));

  // quadratic tail: block diag(2 I_t, -2 I_s)
  std::vector<std::string> vars = {"x1", "x2", "x3"};
  MultiPoly tail = parse_poly(vars, "x1^2 + x2^2 - x3^2");
  auto ht = tail.hessian(vars);
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) {
      if (i != j)
        CHECK(ht[i][j].is_zero());
      else
        CHECK(ht[i][j] ==
              MultiPoly::constant(vars, i < 2 ? Rational(2) : Rational(-2)));
    }
}

TEST_CASE("hessian symmetry is exact term by term") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    MultiPoly p = random_poly(rng, XYT);
    auto h = p.hessian(XYT);
    for (size_t i = 0; i < 3; ++i)
      for (size_t j = i + 1; j < 3; ++j) CHECK(h[i][j] == h[j][i]);
  }
}

TEST_CASE("substitution specializes the deformation parameter") {
  MultiPoly fam = parse_poly(XYT, "x^2*y + 2*t*x^2 + y^3 - t*y");
  MultiPoly sub = fam.substitute("t", Rational(-1, 4));
  CHECK(sub == parse_poly(XY, "x^2*y - 1/2*x^2 + y^3 + 1/4*y"));
  CHECK(sub.variables() == XY);
  // t = 0 recovers the germ
  CHECK(fam.substitute("t", Rational(0)) ==
        parse_poly(XY, "x^2*y + y^3"));
  // substitution into a constant is the constant
  CHECK(MultiPoly::constant(XYT, 5).substitute("t", Rational(9)) ==
        MultiPoly::constant(XY, 5));
}

TEST_CASE("substitute-then-evaluate equals direct evaluation") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    MultiPoly p = random_poly(rng, XYT);
    auto pt = random_point(rng, 3);
    Rational direct = p.evaluate(pt);
    Rational via = p.substitute("t", pt[2]).evaluate({pt[0], pt[1]});
    CHECK(direct == via);
  }
}

TEST_CASE("ring operations agree with evaluation") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    MultiPoly p = random_poly(rng, XY), q = random_poly(rng, XY);
    auto pt = random_point(rng, 2);
    CHECK((p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt));
    CHECK((p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt));
    CHECK((p - q).evaluate(pt) == p.evaluate(pt) - q.evaluate(pt));
  }
}

TEST_CASE("interval evaluation is a sound enclosure") {
  // x^2 over [-1, 1] must contain the true range [0, 1]
  MultiPoly sq = parse_poly(XY, "x^2");
  Interval r = sq.eval_interval({Interval(Rational(-1), Rational(1)),
                                 Interval(Rational(0), Rational(0))});
  CHECK(r.lo <= 0);
  CHECK(r.hi >= 1);

  // 3x^2 + 3t over x in [1,2], t in [1/2,1]: exactly [9/2, 15], excludes 0
  MultiPoly g = parse_poly({"x", "t"}, "3*x^2 + 3*t");
  Interval gr = g.eval_interval({Interval(Rational(1), Rational(2)),
                                 Interval(Rational(1, 2), Rational(1))});
  CHECK(gr.lo == Rational(9, 2));
  CHECK(gr.hi == 15);
  CHECK(!gr.contains_zero());

  // constants evaluate to points
  Interval c = MultiPoly::constant(XY, 5).eval_interval(
      {Interval(Rational(-9), Rational(9)), Interval(Rational(0), Rational(1))});
  CHECK(c.lo == 5);
  CHECK(c.hi == 5);
}

TEST_CASE("interval enclosure contains every sampled value") {
  std::mt19937 rng(37);
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
  for (int trial = 0; trial < 25; ++trial) {
    MultiPoly p = random_poly(rng, XY);
    Rational ax(num(rng), den(rng)), bx(num(rng), den(rng));
    Rational ay(num(rng), den(rng)), by(num(rng), den(rng));
    Box box{Interval::hull_of(ax, bx), Interval::hull_of(ay, by)};
    Interval enc = p.eval_interval(box);
    Interval enc2 = p.eval_interval_bisect(box, 2);
    for (int sample = 0; sample < 8; ++sample) {
      Rational tx(num(rng), 9), ty(num(rng), 9);
      std::vector<Rational> pt{box[0].lo + box[0].width() * (tx + 4) / 9,
                               box[1].lo + box[1].width() * (ty + 4) / 9};
      Rational v = p.evaluate(pt);
      CHECK(enc.contains(v));
      CHECK(enc2.contains(v));
    }
    CHECK(enc.lo <= enc2.lo);
    CHECK(enc2.hi <= enc.hi);
  }
}

TEST_CASE("printer round-trips through the parser") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    MultiPoly p = random_poly(rng, XYT);
    CHECK(parse_poly(XYT, p.str()) == p);
  }
  CHECK(parse_poly(XY, "0").is_zero());
  CHECK(MultiPoly::zero(XY).str() == "0");
  // notation from the worked examples, with k pre-substituted
  MultiPoly d5 = parse_poly(XYT, "x^2*y - y^3 + (5-1)*t*y");
  CHECK(d5 == parse_poly(XYT, "x^2*y - y^3 + 4*y*t"));
  CHECK_THROWS_AS(parse_poly(XY, "x +"), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly(XY, "z"), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly(XY, "x^-2"), std::invalid_argument);
}
