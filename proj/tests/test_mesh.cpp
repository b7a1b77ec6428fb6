#include "doctest.h"

#include "ademf/mesh.hpp"

using namespace ademf;

namespace {

FibreSpec make_spec(const char* poly, Side side, Rational eps, Rational eta,
                    int res, bool three_d = false) {
  FibreSpec spec;
  std::vector<std::string> vars =
      three_d ? std::vector<std::string>{"x", "y", "x1"}
              : std::vector<std::string>{"x", "y"};
  spec.polynomial = parse_poly(vars, poly);
  spec.side = side;
  spec.epsilon = eps;
  spec.eta = eta;
  spec.resolution = res;
  return spec;
}

}  // namespace

TEST_CASE("spec validation") {
  auto spec = make_spec("x^2 + y^2", Side::Plus, Rational(1, 2),
                        Rational(1, 4), 64);
  CHECK_THROWS_AS(mesh_fibre(spec), std::invalid_argument);  // eta > eps/8
  spec.eta = Rational(1, 32);
  spec.resolution = 8;
  CHECK_THROWS_AS(mesh_fibre(spec), std::invalid_argument);
  FibreSpec one_var;
  one_var.polynomial = parse_poly({"x"}, "x^2");
  CHECK_THROWS_AS(mesh_fibre(one_var), std::invalid_argument);
}

TEST_CASE("negative fibre of a nonnegative germ is empty") {
  auto spec = make_spec("x^4 + y^2", Side::Minus, Rational(1, 2),
                        Rational(1, 256), 64);
  MeshResult mesh = mesh_fibre(spec);
  CHECK(mesh.complex.empty());
  CHECK(mesh.suspect_cells == 0);
  auto h = homology(mesh.complex);
  for (auto b : h.betti) CHECK(b == 0);
}

TEST_CASE("positive fibre of x^4 + y^2 is one closed loop") {
  auto spec = make_spec("x^4 + y^2", Side::Plus, Rational(1, 2),
                        Rational(1, 256), 128);
  MeshResult mesh = mesh_fibre(spec);
  CHECK(!mesh.complex.empty());
  CHECK(mesh.manifold_ok);
  CHECK(mesh.boundary_vertices == 0);  // loop stays inside the ball
  auto h = homology(mesh.complex);
  CHECK(h.betti == std::vector<std::int64_t>{1, 1});
  CHECK(h.euler == 0);
}

TEST_CASE("positive fibre of x^3 + y^2 is a single arc to the boundary") {
  auto spec = make_spec("x^3 + y^2", Side::Plus, Rational(1, 2),
                        Rational(1, 64), 128);
  MeshResult mesh = mesh_fibre(spec);
  CHECK(mesh.manifold_ok);
  CHECK(mesh.boundary_vertices == 2);  // endpoints on the sphere
  auto h = homology(mesh.complex);
  CHECK(h.betti == std::vector<std::int64_t>{1, 0});
  CHECK(h.euler == 1);
}

TEST_CASE("D4- positive fibre has three components") {
  // x^2 y - y^3 = eta: three branches through the ball
  auto spec = make_spec("x^2*y - y^3", Side::Plus, Rational(1, 2),
                        Rational(1, 64), 256);
  MeshResult mesh = mesh_fibre(spec);
  CHECK(mesh.manifold_ok);
  auto h = homology(mesh.complex);
  CHECK(h.betti == std::vector<std::int64_t>{3, 0});
}

TEST_CASE("exact vertex signs stay clear of the level") {
  // eta = 1/100 puts the fibre off the dyadic grid (no integer solutions of
  // 25 a^4 + 409600 b^2 = 2^26), so every vertex value is bounded away from
  // zero and a relative eta-shift of 1e-12 cannot flip any sign
  auto spec = make_spec("x^4 + y^2", Side::Plus, Rational(1, 2),
                        Rational(1, 100), 64);
  MeshResult mesh = mesh_fibre(spec);
  CHECK(mesh.min_abs_vertex_value > 0);
  CHECK(mesh.min_abs_vertex_value * BigInt(1000000000000LL) > mesh.eta_unit);
}

TEST_CASE("vertices exactly on the fibre are classified consistently") {
  // eta = 1/256 makes (0, +-1/16) grid points with h exactly zero; the
  // vertex lands on the negative side and the extracted loop is unchanged
  auto spec = make_spec("x^4 + y^2", Side::Plus, Rational(1, 2),
                        Rational(1, 256), 64);
  MeshResult mesh = mesh_fibre(spec);
  CHECK(mesh.min_abs_vertex_value == 0);
  auto h = homology(mesh.complex);
  CHECK(h.betti == std::vector<std::int64_t>{1, 1});
  CHECK(mesh.manifold_ok);
}

TEST_CASE("marching cubes: sphere comes out as S^2") {
  auto spec = make_spec("x^2 + y^2 + x1^2", Side::Plus, Rational(1, 2),
                        Rational(1, 16), 48, true);
  MeshResult mesh = mesh_fibre(spec);
  auto h = homology(mesh.complex);
  CHECK(h.betti == std::vector<std::int64_t>{1, 0, 1});
  CHECK(h.torsion_free());
  CHECK(h.euler == 2);
  CHECK(mesh.boundary_vertices == 0);
}

TEST_CASE("marching cubes: one-sheet quadric clipped by the ball") {
  // x^2 + y^2 - x1^2 = eta: a cylinder-like band, homotopy S^1
  auto spec = make_spec("x^2 + y^2 - x1^2", Side::Plus, Rational(1, 2),
                        Rational(1, 16), 48, true);
  MeshResult mesh = mesh_fibre(spec);
  auto h = homology(mesh.complex);
  CHECK(h.betti == std::vector<std::int64_t>{1, 1, 0});
  CHECK(mesh.boundary_vertices > 0);
}

TEST_CASE("marching cubes: two-sheet side gives two disks") {
  auto spec = make_spec("x^2 + y^2 - x1^2", Side::Minus, Rational(1, 2),
                        Rational(1, 16), 48, true);
  MeshResult mesh = mesh_fibre(spec);
  auto h = homology(mesh.complex);
  CHECK(h.betti == std::vector<std::int64_t>{2, 0, 0});
}

TEST_CASE("euler consistency holds on every mesh run") {
  for (const char* poly : {"x^3 + y^2", "x^4 + y^2", "x^2*y - y^3"}) {
    for (Side side : {Side::Plus, Side::Minus}) {
      auto spec = make_spec(poly, side, Rational(1, 2), Rational(1, 64), 96);
      MeshResult mesh = mesh_fibre(spec);
      auto h = homology(mesh.complex);  // homology() asserts the identity
      std::int64_t chi = 0;
      for (size_t i = 0; i < h.betti.size(); ++i)
        chi += (i % 2 ? -1 : 1) * h.betti[i];
      CHECK(chi == h.euler);
    }
  }
}

TEST_CASE("svg plot contains the clipping circle and curve segments") {
  auto spec = make_spec("x^4 + y^2", Side::Plus, Rational(1, 2),
                        Rational(1, 256), 64);
  MeshResult mesh = mesh_fibre(spec);
  std::string svg = fibre_svg(spec, mesh);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("<circle") != std::string::npos);
  CHECK(svg.find("<line") != std::string::npos);
}
