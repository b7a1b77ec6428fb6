#ifndef ADEMF_MESH_HPP
#define ADEMF_MESH_HPP

#include <string>
#include <vector>

#include "ademf/chain.hpp"
#include "ademf/numbers.hpp"
#include "ademf/poly.hpp"

namespace ademf {

enum class Side { Plus, Minus };

/**
 * A real fibre to mesh: the level set {f = +eta} (or -eta) of a polynomial in
 * 2 or 3 spatial variables, intersected with the closed ball of radius
 * epsilon around the origin.
 *
 * Vertex signs are computed in exact integer arithmetic (the grid is rational
 * and the polynomial is rescaled to integer coefficients), so no sign is ever
 * misclassified.  A vertex value of exactly zero counts as the negative side,
 * which realizes the level set of f -+ eta shifted by an infinitesimal.
 */
struct FibreSpec {
  MultiPoly polynomial;
  Side side = Side::Plus;
  Rational epsilon = Rational(1, 2);
  Rational eta = Rational(1, 32);
  int resolution = 512;
};

void validate_spec(const FibreSpec& spec);

struct MeshResult {
  CellComplex complex;
  // diagnostics
  long crossed_cells = 0;
  long suspect_cells = 0;   // cells where interval analysis could not rule
                            // out a missed feature or tangency
  long boundary_vertices = 0;
  bool manifold_ok = true;  // dim 2: interior degree 2, boundary degree 1
  // smallest |h| over pointwise-evaluated grid vertices, in units where eta
  // itself scales to eta_unit; zero means some vertex lay exactly on the fibre
  BigInt min_abs_vertex_value = -1;
  BigInt eta_unit = 0;
  // dim-2 segment geometry for plotting (post-clip, approximate endpoints)
  std::vector<std::array<double, 4>> segments_xy;
};

/// Piecewise-linear approximation of the fibre as a cell complex.  dim 2 uses
/// marching squares with exact cell-midpoint ambiguity resolution; dim 3 uses
/// the symmetric 24-tetrahedra cube decomposition whose extra vertices are
/// exact face/body midpoint evaluations, which makes every connection choice
/// shared between neighbouring cells (no cracks).  Cells whose corners all
/// lie outside the ball are discarded; cells straddling the sphere keep their
/// surface pieces clipped combinatorially at the sphere crossings.
MeshResult mesh_fibre(const FibreSpec& spec);

/// Static SVG plot of a dim-2 fibre inside the disk.
std::string fibre_svg(const FibreSpec& spec, const MeshResult& mesh);

}  // namespace ademf

#endif
