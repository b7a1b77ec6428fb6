#ifndef ADEMF_GERM_HPP
#define ADEMF_GERM_HPP

#include <string>
#include <vector>

#include "ademf/poly.hpp"

namespace ademf {

enum class Family { A, D, E6, E7, E8 };
enum class Sign { Plus, Minus };

std::string family_str(Family f);

/**
 * Which singularity a germ is: the family, k (A and D only), the sign
 * variant (A, D, E6), the ambient dimension n+1 and the suspension signature
 * (t_pos positive squares, s negative squares, t_pos + s = n - 1).
 *
 * E7 and E8 carry no sign field at all rather than an ignored one.
 */
struct GermDescriptor {
  Family family = Family::A;
  int k = 0;           // meaningful for A (k >= 2) and D (k >= 4)
  Sign sign = Sign::Plus;  // meaningful for A, D, E6
  int n = 1;           // germ lives on R^(n+1)
  int s = 0;           // negative squares
  int t_pos = 0;       // positive squares

  bool has_k() const { return family == Family::A || family == Family::D; }
  bool has_sign() const { return family != Family::E7 && family != Family::E8; }
  /// Spatial variables (x, y, x1, ..., x{n-1}).
  std::vector<std::string> spatial_vars() const;

  bool operator==(const GermDescriptor& o) const = default;
};

/// All invariant violations, empty when the descriptor is valid.
std::vector<std::string> validate(const GermDescriptor& d);
bool is_valid(const GermDescriptor& d);

/// The catalog polynomial of d in variables (x, y, x1, ..., x{n-1}).
MultiPoly build_germ(const GermDescriptor& d);

/// Every valid descriptor with k <= k_max and n <= n_max, in a fixed
/// deterministic order, duplicate-free.  Requires k_max >= 4, n_max >= 1.
std::vector<GermDescriptor> enumerate_catalog(int k_max, int n_max);

/// Canonical code, e.g. "A3+s0n1", "D4-s1n2", "E7s0n1".
std::string germ_code(const GermDescriptor& d);
GermDescriptor parse_germ_code(const std::string& code);

}  // namespace ademf

#endif
