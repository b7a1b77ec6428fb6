#include "doctest.h"

#include "ademf/predict.hpp"

using namespace ademf;

using P = PoincarePolynomial;

TEST_CASE("poincare polynomial basics") {
  CHECK(P::empty().str() == "0");
  CHECK(P::empty().eval_at_one() == 0);
  CHECK(P::one().str() == "1");
  CHECK(P::one_plus_u_pow(0).str() == "2");
  CHECK(P::one_plus_u_pow(1).str() == "1+u");
  CHECK(P::one_plus_u_pow(4).str() == "1+u^4");
  CHECK(P::constant(3).str() == "3");
  CHECK(P::empty() != P::one());
  CHECK(P::from_betti({1, 0, 1}) == P::one_plus_u_pow(2));
  CHECK(P::from_betti({}) == P::empty());
  CHECK(P::from_betti({0, 0}) == P::empty());
  CHECK(P::parse("1+u^2") == P::one_plus_u_pow(2));
  CHECK(P::parse("0") == P::empty());
  CHECK(P::parse("3") == P::constant(3));
  for (const char* text : {"0", "1", "2", "1+u", "1+u^3"})
    CHECK(P::parse(text).str() == text);
}

TEST_CASE("curve table values") {
  auto check = [](const char* code, const char* plus, const char* minus) {
    Prediction p = predict_table(parse_germ_code(code));
    REQUIRE(p.status == PredictionStatus::Resolved);
    CHECK(p.beta_plus.str() == plus);
    CHECK(p.beta_minus.str() == minus);
  };
  check("A2+s0n1", "1", "1");
  check("A3+s0n1", "1+u", "0");
  check("A4+s0n1", "1", "1");
  check("A2-s0n1", "1", "1");
  check("A3-s0n1", "2", "2");
  check("D4+s0n1", "1", "1");
  check("D5+s0n1", "2", "2");
  check("D4-s0n1", "3", "3");
  check("D5-s0n1", "2", "2");
  check("D6-s0n1", "3", "3");
  check("E6+s0n1", "1", "1");
  check("E6-s0n1", "1", "1");
  check("E7s0n1", "2", "2");
  check("E8s0n1", "1", "1");
}

TEST_CASE("suspended table values") {
  Prediction e7 = predict_table(parse_germ_code("E7s2n4"));
  CHECK(e7.beta_plus.str() == "1+u");    // 1 + u^{n-s-1}
  CHECK(e7.beta_minus.str() == "1+u^2"); // 1 + u^s

  Prediction a3 = predict_table(parse_germ_code("A3+s0n2"));
  CHECK(a3.beta_plus.str() == "1+u^2");
  CHECK(a3.beta_minus.is_empty());

  Prediction a3s1 = predict_table(parse_germ_code("A3+s1n2"));
  CHECK(a3s1.beta_plus.str() == "1+u");
  CHECK(a3s1.beta_minus.str() == "2");

  Prediction d6 = predict_table(parse_germ_code("D6-s1n3"));
  CHECK(d6.status == PredictionStatus::Unresolved);

  // the curve case of D-minus even k stays resolved
  Prediction d6n1 = predict_table(parse_germ_code("D6-s0n1"));
  CHECK(d6n1.status == PredictionStatus::Resolved);

  Prediction e6 = predict_table(parse_germ_code("E6-s1n2"));
  CHECK(e6.beta_plus.str() == "1");
  CHECK(e6.beta_minus.str() == "1");
}

TEST_CASE("unresolved exactly for D minus, even k, n >= 2") {
  for (const auto& d : enumerate_catalog(8, 4)) {
    Prediction p = predict_table(d);
    bool expect = d.family == Family::D && d.sign == Sign::Minus &&
                  d.k % 2 == 0 && d.n >= 2;
    CHECK((p.status == PredictionStatus::Unresolved) == expect);
  }
}

TEST_CASE("morse rule on the published configurations") {
  MorseReport empty_report;
  empty_report.all_certified = true;
  Prediction none = betti_from_morse(empty_report, 3, 1);
  CHECK(none.beta_plus.str() == "1");
  CHECK(none.beta_minus.str() == "1");

  auto one_point = [](int index) {
    MorseReport r;
    r.all_certified = true;
    CriticalPoint p;
    p.morse_index = index;
    p.certified = true;
    r.points.push_back(p);
    return r;
  };
  Prediction saddle = betti_from_morse(one_point(1), 1, 0);
  CHECK(saddle.beta_plus.str() == "2");
  CHECK(saddle.beta_minus.str() == "2");

  Prediction min_curve = betti_from_morse(one_point(0), 1, 0);
  CHECK(min_curve.beta_plus.str() == "1+u");
  CHECK(min_curve.beta_minus.is_empty());

  MorseReport two = one_point(1);
  two.points.push_back(two.points[0]);
  Prediction wedge = betti_from_morse(two, 1, 0);
  CHECK(wedge.beta_plus.str() == "3");
  CHECK(wedge.beta_minus.str() == "3");

  // the two-point rule does not extrapolate past the n = 1 configuration
  Prediction suspended_two = betti_from_morse(two, 3, 1);
  CHECK(suspended_two.status == PredictionStatus::Unresolved);

  MorseReport uncertified = one_point(1);
  uncertified.all_certified = false;
  CHECK_THROWS_AS(betti_from_morse(uncertified, 1, 0), std::invalid_argument);
}

TEST_CASE("plus/minus exponents are complementary in one-point cases") {
  for (const auto& d : enumerate_catalog(9, 4)) {
    Prediction p = predict_table(d);
    if (p.status != PredictionStatus::Resolved) continue;
    if (p.beta_plus.eval_at_one() != 2 || p.beta_minus.eval_at_one() != 2)
      continue;
    int ep = p.beta_plus.coefficients().rbegin()->first;
    int em = p.beta_minus.coefficients().rbegin()->first;
    CHECK(ep + em == d.n - 1);
  }
}

TEST_CASE("resolved predictions evaluate to 1, 2 or 3 at u = 1") {
  for (const auto& d : enumerate_catalog(9, 4)) {
    Prediction p = predict_table(d);
    if (p.status != PredictionStatus::Resolved) continue;
    int tp = p.beta_plus.eval_at_one(), tm = p.beta_minus.eval_at_one();
    CHECK(tp >= 1);
    CHECK(tp <= 3);
    CHECK(tm <= 3);
    CHECK((tm >= 1 || p.beta_minus.is_empty()));
  }
}

TEST_CASE("rendered tables") {
  TableOptions opts{7, 1};
  std::string md = render_table_markdown(opts);
  CHECK(md.find("| D5+s0n1 | 1 | 0 | 2 | 2 | resolved |") != std::string::npos);
  CHECK(md.find("| E6+s0n1 | 1 | 0 | 1 | 1 | resolved |") != std::string::npos);

  TableOptions wide{6, 3};
  std::string csv = render_table_csv(wide);
  CHECK(csv.find("germ_code,n,s,beta_plus,beta_minus,status,provenance") !=
        std::string::npos);
  CHECK(csv.find("D6-s1n3,3,1,?,?,unresolved,table") != std::string::npos);
  CHECK(csv.find("A2-s0n2,2,0,1,1,resolved,table") != std::string::npos);
}

TEST_CASE("EMPTY survives serialization distinctly") {
  auto d = parse_germ_code("A3+s0n1");
  std::string j = prediction_to_json(d, predict_table(d));
  CHECK(j.find("\"beta_minus\": \"0\"") != std::string::npos);
  CHECK(j.find("\"beta_minus_empty\": true") != std::string::npos);
  CHECK(j.find("\"beta_plus_empty\": false") != std::string::npos);
  CHECK(P::parse("0").is_empty());
}
