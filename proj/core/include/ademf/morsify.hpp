#ifndef ADEMF_MORSIFY_HPP
#define ADEMF_MORSIFY_HPP

#include <string>

#include "ademf/germ.hpp"
#include "ademf/poly.hpp"
#include "ademf/realalg.hpp"

namespace ademf {

// Which deformation branch produced a family; the parity split matters
// because interval and critical point structure differ per branch.
enum class CaseTag {
  APlusEven,
  APlusOdd,
  AMinusEven,
  AMinusOdd,
  DPlusEven,
  DPlusOdd,
  DMinusEven,
  DMinusOdd,
  E6Any,
  E7Only,
  E8Only,
};

std::string case_tag_str(CaseTag tag);

/**
 * Admissible parameter interval of a one-sided deformation.  Zero is always
 * one (closed) endpoint.  The lower endpoint may be an exact algebraic bound
 * (the D+ odd case); membership tests are exact power comparisons.
 */
struct ParamInterval {
  RealAlg lo;
  Rational hi;
  bool lo_open = false;
  bool hi_open = false;

  bool contains(const Rational& t) const;
  /// Deformations are one-sided from t = 0; this must always hold.
  bool contains_zero_endpoint() const;
  /// Nonzero t strictly inside, deterministic, |t| <= half the width.
  Rational representative() const;
  std::string str() const;
};

struct MorsificationFamily {
  GermDescriptor germ;
  MultiPoly deformed;      // spatial variables plus t (t last)
  ParamInterval interval;
  CaseTag case_tag;
};

/// The deformation family for d, with the quadratic tail added unchanged for
/// n >= 2 and the admissible interval chosen per case parity.
MorsificationFamily build_family(const GermDescriptor& d);

/// Specialization at an admissible parameter; throws outside the interval.
MultiPoly family_at(const MorsificationFamily& fam, const Rational& t0);

/// Canonical nonzero test parameter for the family (1/10 for E7, else the
/// interval representative).
Rational representative_t(const MorsificationFamily& fam);

/// JSON document for the `morsify` CLI command.
std::string family_to_json(const MorsificationFamily& fam);

}  // namespace ademf

#endif
