#ifndef ADEMF_VERIFY_HPP
#define ADEMF_VERIFY_HPP

#include <optional>
#include <string>

#include "ademf/germ.hpp"
#include "ademf/mesh.hpp"
#include "ademf/predict.hpp"

namespace ademf {

/**
 * Numerically verified Betti data of one side of a real fibre.  stable means
 * the Betti vector agreed across the two refinement levels; the reading of
 * the second level is retained either way.
 */
struct BettiReport {
  GermDescriptor germ;
  Side side = Side::Plus;
  std::vector<std::int64_t> betti;  // b_0 .. b_n of the accepted reading
  std::int64_t euler = 0;
  bool stable = false;
  bool torsion_free = true;
  std::vector<std::int64_t> betti_refined;  // second-level reading
  Rational epsilon, eta, eta_refined;
  int resolution = 0, resolution_refined = 0;
  long suspect_cells = 0;
  PoincarePolynomial poincare() const;
};

struct VerifyParams {
  Rational epsilon = Rational(1, 2);
  // defaults are chosen per germ from its quasihomogeneous weights when unset
  std::optional<Rational> eta;
  std::optional<int> resolution;
};

/// Twice the weighted degree of the germ (integer for every catalog family);
/// the level eta must shrink like (epsilon/2)^(d2/2) for the ball to contain
/// the fibre's compact features.
int weighted_degree_scale(const GermDescriptor& d);

/// Default level and grid resolution adequate for the germ at this epsilon.
Rational default_eta(const GermDescriptor& d, const Rational& epsilon);
int default_resolution(const GermDescriptor& d, const Rational& epsilon,
                       const Rational& eta);

/// Mesh the requested fibre side at (eps, eta, res) and at (eps, eta/2,
/// 2 res), compute integer homology of both readings and mark the report
/// stable only when they agree.  Requires n + 1 <= 3.
BettiReport verify_germ(const GermDescriptor& d, Side side,
                        const VerifyParams& params = {});

enum class Verdict { Match, Mismatch, UnresolvedExplored };

struct VerificationVerdict {
  GermDescriptor germ;
  Verdict verdict = Verdict::Mismatch;
  Prediction prediction;
  BettiReport plus, minus;
  std::string detail;
};

/// Mesh both sides and compare with the published table; descriptors the
/// table leaves open come back as unresolved_explored with empirical values
/// and no pass/fail meaning.
VerificationVerdict compare(const GermDescriptor& d,
                            const VerifyParams& params = {});

std::string betti_report_to_json(const BettiReport& report);
std::string verdict_to_json(const VerificationVerdict& v);

}  // namespace ademf

#endif
