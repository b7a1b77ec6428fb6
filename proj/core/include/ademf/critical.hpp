#ifndef ADEMF_CRITICAL_HPP
#define ADEMF_CRITICAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "ademf/interval.hpp"
#include "ademf/morsify.hpp"
#include "ademf/poly.hpp"
#include "ademf/realalg.hpp"

namespace ademf {

struct HessianSignature {
  int n_pos = 0;
  int n_neg = 0;
  int n_zero = 0;
};

enum class PointSource { ClosedForm, IntervalSolver };

struct CriticalPoint {
  Box location;                       // certified enclosing box
  std::vector<RealAlg> exact;         // optional exact radical form
  int morse_index = -1;               // = n_neg once certified
  HessianSignature signature;
  bool certified = false;
  PointSource source = PointSource::ClosedForm;
};

enum class CertKind { UniqueZero, NoZero };

/// One piece of a certified cover of the search box: either a proof that the
/// Jacobian system has no zero in `box`, or that it has exactly one
/// nondegenerate zero (then `enclosure` is a tight box around it).
struct Certificate {
  Box box;
  CertKind kind = CertKind::NoZero;
  Box enclosure;  // unique-zero certificates only
};

struct CertifyResult {
  std::vector<Certificate> certificates;
  std::vector<Box> undecided;  // never silently dropped
  long boxes_processed = 0;
  bool budget_exhausted = false;

  std::vector<const Certificate*> unique_zeros() const;
};

struct CertifyOptions {
  long max_boxes = 100000;
  // Boxes narrower than this in every coordinate count as undecided.
  Rational min_width = Rational(1, 1 << 26);
};

/// Certified cover of `box` for the square system grad(f) = 0 over the given
/// variables.  Subdivision avoids splitting exactly at zero so that zeros on
/// coordinate hyperplanes stay strictly inside leaves.
CertifyResult certify_points(const MultiPoly& f,
                             const std::vector<std::string>& vars,
                             const Box& box, const CertifyOptions& opts = {});

/// Closed-form critical points of f_t at an admissible t0 != 0, taken from
/// the defining equations of each case branch.  No-critical-point branches
/// return an empty list.
std::vector<CriticalPoint> closed_form_points(const MorsificationFamily& fam,
                                              const Rational& t0);

/// Certified eigenvalue sign counts of the Hessian of f over `vars` on the
/// point enclosure.  Diagonal and 2x2 blocks use exact sign / det-trace
/// analysis; larger blocks use certified characteristic polynomial
/// coefficient signs and a Descartes count (valid: all eigenvalues real).
/// Throws if certification fails after refinement.
HessianSignature hessian_signature_at(const MultiPoly& f,
                                      const std::vector<std::string>& vars,
                                      const std::vector<RealAlg>& point);

/// Morse index after quadratic suspension with s negative squares.
int suspend_index(int curve_index, int s);

struct MorseReport {
  GermDescriptor germ;
  Rational t0;
  std::vector<CriticalPoint> points;
  bool all_certified = false;
  bool oracle_ran = false;
  // Oracle cross-check: unique-zero count matches and every closed-form
  // point lies inside exactly one unique-zero box.
  bool closed_form_matches_oracle = false;
  int oracle_unique_zeros = 0;
  int oracle_undecided = 0;
  bool box_grown = false;  // default box auto-grew once to contain a point
  std::string notes;
};

struct MorseReportOptions {
  bool run_oracle = true;
  Rational box_halfwidth = Rational(2);
  CertifyOptions certify;
};

/// Aggregated critical point analysis of the family of d at t0 (defaults to
/// representative_t).  Closed-form points are individually certified via a
/// local Krawczyk test; with run_oracle the interval solver independently
/// sweeps the standard box and the report records the agreement.
MorseReport morse_report(const GermDescriptor& d,
                         std::optional<Rational> t0 = std::nullopt,
                         const MorseReportOptions& opts = {});

std::string morse_report_to_json(const MorseReport& report);

}  // namespace ademf

#endif
