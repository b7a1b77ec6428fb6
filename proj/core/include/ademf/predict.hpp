#ifndef ADEMF_PREDICT_HPP
#define ADEMF_PREDICT_HPP

#include <map>
#include <optional>
#include <string>

#include "ademf/critical.hpp"
#include "ademf/germ.hpp"

namespace ademf {

/**
 * Sparse Poincare polynomial: degree -> positive Betti number.  The empty
 * fibre is the distinguished EMPTY value (printed "0"), which is not the same
 * thing as the constant polynomial 1 and survives serialization as its own
 * variant.
 */
class PoincarePolynomial {
 public:
  static PoincarePolynomial empty();
  static PoincarePolynomial one();
  /// 1 + u^e (degree-0 coefficient collapses, so e = 0 gives the constant 2).
  static PoincarePolynomial one_plus_u_pow(int e);
  static PoincarePolynomial constant(int value);
  static PoincarePolynomial from_betti(const std::vector<int>& betti);

  bool is_empty() const { return empty_; }
  const std::map<int, int>& coefficients() const { return coeffs_; }
  int coefficient(int degree) const;
  /// Total Betti number; EMPTY evaluates to 0.
  int eval_at_one() const;

  bool operator==(const PoincarePolynomial& o) const = default;

  /// Table-style rendering: "1+u", "1+u^2", "2", "3"; EMPTY prints "0".
  std::string str() const;
  static PoincarePolynomial parse(const std::string& text);

 private:
  bool empty_ = false;
  std::map<int, int> coeffs_;
};

enum class PredictionStatus { Resolved, Unresolved };
enum class Provenance { Table, MorseRule };

struct Prediction {
  PoincarePolynomial beta_plus;
  PoincarePolynomial beta_minus;
  PredictionStatus status = PredictionStatus::Resolved;
  Provenance provenance = Provenance::Table;
};

/// The published Poincare polynomials for d; unresolved (with no values) for
/// the D-minus, even-k, n >= 2 exclusion.
Prediction predict_table(const GermDescriptor& d);

/// The Morse-data -> Betti rule behind the tables: no critical points give
/// contractible fibres; one Morse point of index l gives
/// (1 + u^{n-l}, 1 + u^{l-1}) with EMPTY at l = 0; the two-point rule is
/// restricted to the exact configuration arising at n = 1 with both indices
/// 1.  Anything else is unresolved.  Requires a certified report.
Prediction betti_from_morse(const MorseReport& report, int n, int s);

struct TableOptions {
  int k_max = 9;
  int n_max = 3;
};

/// Machine- and human-readable reproductions of both result tables.
std::string render_table_markdown(const TableOptions& opts);
std::string render_table_csv(const TableOptions& opts);
std::string prediction_to_json(const GermDescriptor& d, const Prediction& p);

}  // namespace ademf

#endif
