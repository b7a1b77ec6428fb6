#include "ademf/verify.hpp"

#include <stdexcept>

#include "json.hpp"

namespace ademf {

PoincarePolynomial BettiReport::poincare() const {
  std::vector<int> b(betti.size());
  for (size_t i = 0; i < betti.size(); ++i)
    b[i] = static_cast<int>(betti[i]);
  return PoincarePolynomial::from_betti(b);
}

int weighted_degree_scale(const GermDescriptor& d) {
  switch (d.family) {
    case Family::A: return 2 * (d.k + 1);
    case Family::D: return 2 * (d.k - 1);
    case Family::E6: return 8;
    case Family::E7: return 9;  // weights (1/3, 2/9): 2/w_min = 9
    case Family::E8: return 10;
  }
  return 0;
}

Rational default_eta(const GermDescriptor& d, const Rational& epsilon) {
  // eta = (eps/2)^(d2/2); the odd half-power is replaced by a deterministic
  // rational under-approximation, which only shrinks the level (still valid).
  int d2 = weighted_degree_scale(d);
  Rational base = epsilon / 2;
  Rational eta = pow_int(base, static_cast<unsigned>(d2 / 2));
  if (d2 % 2 == 1) eta *= root_under_approx(base, 2, 20);
  Rational cap = epsilon / 8;
  return eta < cap ? eta : cap;
}

int default_resolution(const GermDescriptor& d, const Rational& epsilon,
                       const Rational& eta) {
  // thinnest feature ~ sqrt(eta); ask for >= 8 grid cells across it:
  // res^2 * eta >= 256 eps^2
  int dim = d.n + 1;
  int res = dim == 2 ? 512 : 96;
  Rational need = Rational(256) * epsilon * epsilon;
  while (Rational(res) * res * eta < need) res += 32;
  return res;
}

namespace {

HomologySummary run_level(const GermDescriptor& d, Side side,
                          const Rational& eps, const Rational& eta, int res,
                          long& suspects) {
  FibreSpec spec;
  spec.polynomial = build_germ(d);
  spec.side = side;
  spec.epsilon = eps;
  spec.eta = eta;
  spec.resolution = res;
  MeshResult mesh = mesh_fibre(spec);
  suspects += mesh.suspect_cells;
  return homology(mesh.complex);
}

}  // namespace

BettiReport verify_germ(const GermDescriptor& d, Side side,
                        const VerifyParams& params) {
  auto errors = validate(d);
  if (!errors.empty())
    throw std::invalid_argument("verify_germ: invalid descriptor");
  if (d.n + 1 > 3)
    throw std::invalid_argument(
        "verify_germ: only 2- and 3-dimensional fibres can be meshed (n <= 2)");

  BettiReport report;
  report.germ = d;
  report.side = side;
  report.epsilon = params.epsilon;
  report.eta = params.eta ? *params.eta : default_eta(d, params.epsilon);
  report.resolution = params.resolution
                          ? *params.resolution
                          : default_resolution(d, params.epsilon, report.eta);
  report.eta_refined = report.eta / 2;
  report.resolution_refined = 2 * report.resolution;

  HomologySummary level1 = run_level(d, side, report.epsilon, report.eta,
                                     report.resolution, report.suspect_cells);
  HomologySummary level2 =
      run_level(d, side, report.epsilon, report.eta_refined,
                report.resolution_refined, report.suspect_cells);

  report.betti = level1.betti;
  report.betti_refined = level2.betti;
  // pad to common length (complexes of an empty side have no top cells)
  size_t want = static_cast<size_t>(d.n + 1);
  report.betti.resize(want, 0);
  report.betti_refined.resize(want, 0);
  report.stable = report.betti == report.betti_refined;
  report.euler = level1.euler;
  report.torsion_free = level1.torsion_free() && level2.torsion_free();
  return report;
}

VerificationVerdict compare(const GermDescriptor& d,
                            const VerifyParams& params) {
  VerificationVerdict v;
  v.germ = d;
  v.prediction = predict_table(d);
  v.plus = verify_germ(d, Side::Plus, params);
  v.minus = verify_germ(d, Side::Minus, params);
  if (v.prediction.status == PredictionStatus::Unresolved) {
    v.verdict = Verdict::UnresolvedExplored;
    v.detail = "no published value for this descriptor; empirical Betti data "
               "reported";
    return v;
  }
  bool stable = v.plus.stable && v.minus.stable;
  bool agree = v.plus.poincare() == v.prediction.beta_plus &&
               v.minus.poincare() == v.prediction.beta_minus;
  if (stable && agree) {
    v.verdict = Verdict::Match;
  } else {
    v.verdict = Verdict::Mismatch;
    if (!stable) v.detail += "unstable across refinement; ";
    if (!agree)
      v.detail += "computed (" + v.plus.poincare().str() + ", " +
                  v.minus.poincare().str() + ") vs predicted (" +
                  v.prediction.beta_plus.str() + ", " +
                  v.prediction.beta_minus.str() + "); ";
  }
  return v;
}

namespace {

nlohmann::json betti_json(const BettiReport& r) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["germ"] = germ_code(r.germ);
  j["side"] = r.side == Side::Plus ? "plus" : "minus";
  j["betti"] = r.betti;
  j["poincare"] = r.poincare().str();
  j["euler"] = r.euler;
  j["stable"] = r.stable;
  j["torsion_free"] = r.torsion_free;
  j["betti_refined"] = r.betti_refined;
  j["epsilon"] = format_rational(r.epsilon);
  j["eta"] = format_rational(r.eta);
  j["eta_refined"] = format_rational(r.eta_refined);
  j["resolution"] = r.resolution;
  j["resolution_refined"] = r.resolution_refined;
  j["suspect_cells"] = r.suspect_cells;
  return j;
}

}  // namespace

std::string betti_report_to_json(const BettiReport& report) {
  return betti_json(report).dump(2);
}

std::string verdict_to_json(const VerificationVerdict& v) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["germ"] = germ_code(v.germ);
  switch (v.verdict) {
    case Verdict::Match: j["verdict"] = "match"; break;
    case Verdict::Mismatch: j["verdict"] = "mismatch"; break;
    case Verdict::UnresolvedExplored:
      j["verdict"] = "unresolved_explored";
      break;
  }
  j["status"] = v.prediction.status == PredictionStatus::Resolved
                    ? "resolved"
                    : "unresolved";
  if (v.prediction.status == PredictionStatus::Resolved) {
    j["predicted_beta_plus"] = v.prediction.beta_plus.str();
    j["predicted_beta_minus"] = v.prediction.beta_minus.str();
  }
  if (!v.detail.empty()) j["detail"] = v.detail;
  j["plus"] = betti_json(v.plus);
  j["minus"] = betti_json(v.minus);
  return j.dump(2);
}

}  // namespace ademf
