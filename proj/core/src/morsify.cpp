#include "ademf/morsify.hpp"

#include <stdexcept>

#include "json.hpp"

namespace ademf {

std::string case_tag_str(CaseTag tag) {
  switch (tag) {
    case CaseTag::APlusEven: return "A_plus_even";
    case CaseTag::APlusOdd: return "A_plus_odd";
    case CaseTag::AMinusEven: return "A_minus_even";
    case CaseTag::AMinusOdd: return "A_minus_odd";
    case CaseTag::DPlusEven: return "D_plus_even";
    case CaseTag::DPlusOdd: return "D_plus_odd";
    case CaseTag::DMinusEven: return "D_minus_even";
    case CaseTag::DMinusOdd: return "D_minus_odd";
    case CaseTag::E6Any: return "E6";
    case CaseTag::E7Only: return "E7";
    case CaseTag::E8Only: return "E8";
  }
  return "?";
}

bool ParamInterval::contains(const Rational& t) const {
  int cl = lo.compare(t);  // sign of lo - t, flipped: compare returns lo <=> t
  if (lo_open ? cl >= 0 : cl > 0) return false;
  if (hi_open ? t >= hi : t > hi) return false;
  return true;
}

bool ParamInterval::contains_zero_endpoint() const {
  return (!lo_open && lo.compare(Rational(0)) == 0) || (!hi_open && hi == 0);
}

Rational ParamInterval::representative() const {
  if (lo.is_rational()) {
    Rational l = lo.rational_value();
    Rational m = (l + hi) / 2;
    if (m != 0) return m;
    // zero midpoint cannot happen for one-sided intervals, but stay safe
    return (l + m) / 2;
  }
  // Algebraic lower endpoint: rational under-approximation of |lo|, halved.
  // Stays strictly inside since under(|lo|)/2 < |lo|, and is nonzero.
  Rational under = root_under_approx(lo.radicand(), lo.index(), 24);
  return -under / 2;
}

std::string ParamInterval::str() const {
  std::string out = lo_open ? "(" : "[";
  out += lo.str();
  out += ", " + format_rational(hi);
  out += hi_open ? ")" : "]";
  return out;
}

namespace {

// Variable list of a family: spatial variables then t.
std::vector<std::string> family_vars(const GermDescriptor& d) {
  auto vars = d.spatial_vars();
  vars.push_back("t");
  return vars;
}

struct CurveCase {
  MultiPoly poly;  // curve-part deformation in (x, y, ..., t)
  ParamInterval interval;
  CaseTag tag;
};

ParamInterval closed_unit(bool negative) {
  ParamInterval iv;
  if (negative) {
    iv.lo = RealAlg::rational(Rational(-1));
    iv.hi = 0;
  } else {
    iv.lo = RealAlg::rational(Rational(0));
    iv.hi = 1;
  }
  return iv;
}

CurveCase curve_case(const GermDescriptor& d,
                     const std::vector<std::string>& vars) {
  MultiPoly p(vars);
  const size_t tix = vars.size() - 1;
  auto term = [&](int ex, int ey, int et, Rational c) {
    MultiPoly::Exponents e(vars.size(), 0);
    e[0] = ex;
    e[1] = ey;
    e[tix] = et;
    p.add_term(e, c);
  };
  const int k = d.k;
  const bool even_k = k % 2 == 0;
  const Rational sgn = d.sign == Sign::Plus ? 1 : -1;

  switch (d.family) {
    case Family::A: {
      term(k + 1, 0, 0, 1);
      term(0, 2, 0, sgn);
      if (d.sign == Sign::Plus && !even_k) {
        term(1, 0, 1, Rational(-(k + 1)));  // x^{k+1} - (k+1) t x + y^2
        return {p, closed_unit(false), CaseTag::APlusOdd};
      }
      term(1, 0, 1, 1);  // x^{k+1} + t x +- y^2
      if (d.sign == Sign::Plus)
        return {p, closed_unit(false), CaseTag::APlusEven};
      if (even_k) return {p, closed_unit(false), CaseTag::AMinusEven};
      return {p, closed_unit(true), CaseTag::AMinusOdd};
    }
    case Family::D: {
      if (d.sign == Sign::Plus) {
        // x^2 y + 2 t x^2 + y^{k-1} - t y
        term(2, 1, 0, 1);
        term(2, 0, 1, 2);
        term(0, k - 1, 0, 1);
        term(0, 1, 1, -1);
        if (even_k) return {p, closed_unit(true), CaseTag::DPlusEven};
        // I = ( -(1/((k-1) 2^{k-2}))^(1/(k-3)), 0 ]
        ParamInterval iv;
        Rational bound_base =
            Rational(1) / (Rational(k - 1) * pow_int(Rational(2), k - 2));
        iv.lo = RealAlg::root(bound_base, static_cast<unsigned>(k - 3)).negated();
        iv.hi = 0;
        iv.lo_open = true;
        return {p, iv, CaseTag::DPlusOdd};
      }
      // x^2 y - y^{k-1} + (k-1) t y
      term(2, 1, 0, 1);
      term(0, k - 1, 0, -1);
      term(0, 1, 1, Rational(k - 1));
      return {p, closed_unit(false),
              even_k ? CaseTag::DMinusEven : CaseTag::DMinusOdd};
    }
    case Family::E6: {
      term(3, 0, 0, 1);
      term(1, 0, 1, 3);
      term(0, 4, 0, sgn);  // x^3 + 3 t x +- y^4
      return {p, closed_unit(false), CaseTag::E6Any};
    }
    case Family::E7: {
      term(3, 0, 0, 1);
      term(1, 0, 1, 3);
      term(1, 3, 0, 1);
      term(0, 3, 1, 1);  // x^3 + 3 t x + x y^3 + t y^3
      return {p, closed_unit(false), CaseTag::E7Only};
    }
    case Family::E8: {
      term(3, 0, 0, 1);
      term(1, 0, 1, 3);
      term(0, 5, 0, 1);  // x^3 + 3 t x + y^5
      return {p, closed_unit(false), CaseTag::E8Only};
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

MorsificationFamily build_family(const GermDescriptor& d) {
  auto errors = validate(d);
  if (!errors.empty())
    throw std::invalid_argument("build_family: invalid descriptor " +
                                germ_code(d));
  auto vars = family_vars(d);
  CurveCase cc = curve_case(d, vars);
  // Quadratic tail, independent of t.
  for (int i = 1; i <= d.n - 1; ++i) {
    MultiPoly::Exponents e(vars.size(), 0);
    e[1 + static_cast<size_t>(i)] = 2;
    cc.poly.add_term(e, i <= d.t_pos ? Rational(1) : Rational(-1));
  }
  return MorsificationFamily{d, cc.poly, cc.interval, cc.tag};
}

MultiPoly family_at(const MorsificationFamily& fam, const Rational& t0) {
  if (!fam.interval.contains(t0))
    throw std::domain_error("family_at: t = " + format_rational(t0) +
                            " outside admissible interval " +
                            fam.interval.str() + " of " + germ_code(fam.germ));
  return fam.deformed.substitute("t", t0);
}

Rational representative_t(const MorsificationFamily& fam) {
  // The E7 eigenvalue sign claim holds "for small t"; 1/10 is the pinned
  // choice that the critical module certifies rather than assumes.
  if (fam.case_tag == CaseTag::E7Only) return Rational(1, 10);
  return fam.interval.representative();
}

std::string family_to_json(const MorsificationFamily& fam) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["germ"] = germ_code(fam.germ);
  j["case"] = case_tag_str(fam.case_tag);
  j["polynomial"] = fam.deformed.str();
  j["variables"] = fam.deformed.variables();
  j["interval"] = {
      {"lo", fam.interval.lo.str()},
      {"hi", format_rational(fam.interval.hi)},
      {"lo_open", fam.interval.lo_open},
      {"hi_open", fam.interval.hi_open},
  };
  j["representative_t"] = format_rational(representative_t(fam));
  return j.dump(2);
}

}  // namespace ademf
