#ifndef ADEMF_POLY_HPP
#define ADEMF_POLY_HPP

#include <map>
#include <string>
#include <vector>

#include "ademf/interval.hpp"
#include "ademf/numbers.hpp"

namespace ademf {

/**
 * Exact multivariate polynomial over named variables with rational
 * coefficients.
 *
 * Terms are stored as a map from dense exponent vectors (one nonnegative
 * entry per declared variable) to nonzero coefficients, so the representation
 * is canonical: zero coefficients are never kept and equal polynomials have
 * equal term maps.  All operations are pure; instances are safe to share
 * across threads once constructed.
 */
class MultiPoly {
 public:
  using Exponents = std::vector<int>;
  using TermMap = std::map<Exponents, Rational>;

  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> variables);

  static MultiPoly zero(std::vector<std::string> variables);
  static MultiPoly constant(std::vector<std::string> variables, Rational c);
  static MultiPoly variable(std::vector<std::string> variables,
                            const std::string& name);

  const std::vector<std::string>& variables() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  size_t var_index(const std::string& name) const;
  bool is_zero() const { return terms_.empty(); }
  /// Largest exponent of var_idx over all terms.
  int degree_in(size_t var_idx) const;
  int total_degree() const;

  void add_term(const Exponents& exps, const Rational& coeff);

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly scaled(const Rational& c) const;
  bool operator==(const MultiPoly& o) const {
    return vars_ == o.vars_ && terms_ == o.terms_;
  }

  /// Exact value at a rational point (one coordinate per variable).
  Rational evaluate(const std::vector<Rational>& point) const;
  /// Sound enclosure of the range over a box (naive interval extension).
  Interval eval_interval(const Box& box) const;
  /// Interval extension tightened by recursive bisection to `depth` levels.
  Interval eval_interval_bisect(const Box& box, unsigned depth) const;

  /// Formal partial derivative with respect to a declared variable.
  MultiPoly partial(const std::string& var) const;
  /// Row vector of partials with respect to the listed variables.
  std::vector<MultiPoly> jacobian(const std::vector<std::string>& vars) const;
  /// Symmetric matrix of second partials over the listed variables.
  std::vector<std::vector<MultiPoly>> hessian(
      const std::vector<std::string>& vars) const;

  /// Exact specialization; `var` is removed from the variable list.
  MultiPoly substitute(const std::string& var, const Rational& value) const;

  /// Canonical text form, e.g. "x^2*y - y^3 + 4*y*t".  Parse round-trips.
  std::string str() const;

 private:
  std::vector<std::string> vars_;
  TermMap terms_;
};

/// Parse a polynomial in the canonical notation over the given variables.
/// Accepts rational coefficients ("3", "-1/2"), "^" powers, "*" products and
/// parenthesised subexpressions.
MultiPoly parse_poly(std::vector<std::string> variables,
                     const std::string& text);

}  // namespace ademf

#endif
