#include "doctest.h"

#include "ademf/verify.hpp"

using namespace ademf;

TEST_CASE("per-germ defaults scale with the weighted degree") {
  auto a2 = parse_germ_code("A2+s0n1");
  auto a7 = parse_germ_code("A7+s0n1");
  Rational eps(1, 2);
  CHECK(weighted_degree_scale(a2) == 6);
  CHECK(weighted_degree_scale(a7) == 16);
  CHECK(weighted_degree_scale(parse_germ_code("D6-s0n1")) == 10);
  CHECK(weighted_degree_scale(parse_germ_code("E7s0n1")) == 9);
  CHECK(default_eta(a2, eps) == Rational(1, 64));
  CHECK(default_eta(a7, eps) == Rational(BigInt(1), pow_int(BigInt(2), 16)));
  // resolution grows so the thinnest feature spans >= 8 cells
  CHECK(default_resolution(a2, eps, default_eta(a2, eps)) == 512);
  CHECK(default_resolution(a7, eps, default_eta(a7, eps)) >= 2048);
  // eta respects the eta <= eps/8 envelope
  for (const auto& d : enumerate_catalog(9, 3))
    CHECK(default_eta(d, eps) <= eps / 8);
}

TEST_CASE("verify_germ rejects unmeshable dimensions") {
  CHECK_THROWS_AS(verify_germ(parse_germ_code("A3+s1n3"), Side::Plus),
                  std::invalid_argument);
}

TEST_CASE("A3- plus fibre verifies to two contractible arcs") {
  VerifyParams quick;
  quick.resolution = 128;
  BettiReport r = verify_germ(parse_germ_code("A3-s0n1"), Side::Plus, quick);
  CHECK(r.stable);
  CHECK(r.betti == std::vector<std::int64_t>{2, 0});
  CHECK(r.poincare().str() == "2");
  CHECK(r.torsion_free);
}

TEST_CASE("A3+ minus fibre is empty, distinct from contractible") {
  VerifyParams quick;
  quick.resolution = 64;
  BettiReport r = verify_germ(parse_germ_code("A3+s0n1"), Side::Minus, quick);
  CHECK(r.stable);
  CHECK(r.poincare().is_empty());
  CHECK(r.poincare() != PoincarePolynomial::one());
}

TEST_CASE("D4- curve fibres reach total Betti 3") {
  VerifyParams quick;
  quick.resolution = 256;
  BettiReport r = verify_germ(parse_germ_code("D4-s0n1"), Side::Plus, quick);
  CHECK(r.stable);
  CHECK(r.poincare().eval_at_one() == 3);
}

TEST_CASE("compare: curve verdicts match the table") {
  VerifyParams quick;
  quick.resolution = 128;
  auto v = compare(parse_germ_code("A3+s0n1"), quick);
  CHECK(v.verdict == Verdict::Match);
  CHECK(v.plus.poincare().str() == "1+u");
  CHECK(v.minus.poincare().str() == "0");

  auto v2 = compare(parse_germ_code("E7s0n1"), quick);
  CHECK(v2.verdict == Verdict::Match);
}

TEST_CASE("compare: suspended A3+ with s=0 gives the 2-sphere") {
  VerifyParams quick;
  quick.resolution = 48;
  auto v = compare(parse_germ_code("A3+s0n2"), quick);
  CHECK(v.verdict == Verdict::Match);
  CHECK(v.plus.betti == std::vector<std::int64_t>{1, 0, 1});
  CHECK(v.minus.poincare().is_empty());
}

TEST_CASE("compare: open case comes back unresolved_explored") {
  VerifyParams quick;
  quick.resolution = 48;
  auto v = compare(parse_germ_code("D4-s0n2"), quick);
  CHECK(v.verdict == Verdict::UnresolvedExplored);
  CHECK(v.plus.stable);
  CHECK(v.minus.stable);
}

TEST_CASE("betti report JSON schema") {
  VerifyParams quick;
  quick.resolution = 64;
  BettiReport r = verify_germ(parse_germ_code("A2+s0n1"), Side::Plus, quick);
  std::string j = betti_report_to_json(r);
  for (const char* field :
       {"\"schema_version\"", "\"germ\"", "\"side\"", "\"betti\"",
        "\"euler\"", "\"stable\"", "\"eta\"", "\"resolution\"",
        "\"torsion_free\""})
    CHECK(j.find(field) != std::string::npos);
  std::string vj = verdict_to_json(compare(parse_germ_code("A2+s0n1"), quick));
  CHECK(vj.find("\"verdict\": \"match\"") != std::string::npos);
}
