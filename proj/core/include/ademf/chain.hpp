#ifndef ADEMF_CHAIN_HPP
#define ADEMF_CHAIN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ademf/numbers.hpp"

namespace ademf {

/**
 * Finite chain complex of free Z-modules given by cells per dimension and
 * boundary incidence maps with orientation signs.  boundary[d][i] lists the
 * (d-1)-cells of cell i of dimension d; boundary-of-boundary must vanish
 * over the integers (checked by validate()).
 */
struct CellComplex {
  struct Entry {
    std::int64_t cell;
    std::int64_t coeff;
  };
  // cells_per_dim[d] = number of d-cells; boundary[d][i] = boundary chain.
  std::vector<std::int64_t> cells_per_dim;
  std::vector<std::vector<std::vector<Entry>>> boundary;

  int top_dim() const { return static_cast<int>(cells_per_dim.size()) - 1; }
  std::int64_t cell_count(int dim) const;
  bool empty() const;
  std::int64_t euler_characteristic() const;
  /// Throws unless incidences are in range and dd = 0 over Z.
  void validate() const;
};

struct HomologySummary {
  std::vector<std::int64_t> betti;   // b_0 .. b_topdim
  std::vector<BigInt> torsion;       // invariant factors > 1, all dims
  std::int64_t euler = 0;            // alternating cell count
  bool torsion_free() const { return torsion.empty(); }
};

/// Integer homology.  Unit-coefficient incidence pairs are eliminated first
/// (free-face collapses and coreductions, which preserve homology exactly);
/// the small remaining core goes through a dense Smith normal form, so
/// torsion is detected and reported.
HomologySummary homology(const CellComplex& complex);

/// Dense-only route: Smith normal form of the raw boundary matrices with no
/// reduction pass.  Exponential-free but slow; intended as an independent
/// cross-check for tests.
HomologySummary homology_dense(const CellComplex& complex);

/// Smith normal form diagonal of an integer matrix (invariant factors,
/// including any trailing zeros removed).
std::vector<BigInt> smith_normal_form(std::vector<std::vector<BigInt>> m);

}  // namespace ademf

#endif
