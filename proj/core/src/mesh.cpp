#include "ademf/mesh.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace ademf {

namespace {

using I128 = __int128;

struct I128Interval {
  I128 lo, hi;
};

// Polynomial rescaled to integer coefficients on the lattice
// x_v = eps * X_v / res with integer X in [-res, res].  Signs of the rescaled
// values equal signs of the original, exactly.
struct ScaledPoly {
  struct Term {
    std::array<int, 3> e{0, 0, 0};
    I128 c = 0;
    BigInt c_big;
  };
  int dim = 0;
  int res = 0;
  int max_deg = 0;
  bool fits = true;  // false: fall back to exact big-int evaluation
  std::vector<Term> terms;
  // power_table[axis-independent][e][X + res] = X^e  (shared across axes)
  std::vector<std::vector<I128>> powers;
  BigInt eta_unit;  // |scale| applied to an eta-sized constant

  ScaledPoly(const MultiPoly& h, const Rational& eps, int resolution) {
    dim = static_cast<int>(h.variables().size());
    res = resolution;
    max_deg = h.total_degree();
    BigInt d_lcm = 1;
    for (const auto& [e, c] : h.terms()) {
      (void)e;
      BigInt den = denominator(c);
      d_lcm = lcm(d_lcm, den);
    }
    BigInt e_n = numerator(eps), e_d = denominator(eps);
    BigInt beta = e_d * res;
    BigInt bound = 0;
    for (const auto& [e, c] : h.terms()) {
      int total = 0;
      Term t;
      for (int v = 0; v < dim; ++v) {
        t.e[static_cast<size_t>(v)] = e[static_cast<size_t>(v)];
        total += e[static_cast<size_t>(v)];
      }
      BigInt scaled = numerator(c) * (d_lcm / denominator(c)) *
                      pow_int(e_n, static_cast<unsigned>(total)) *
                      pow_int(beta, static_cast<unsigned>(max_deg - total));
      t.c_big = scaled;
      bound += abs(scaled) * pow_int(BigInt(res), static_cast<unsigned>(total));
      terms.push_back(std::move(t));
    }
    eta_unit = d_lcm * pow_int(beta, static_cast<unsigned>(max_deg));
    BigInt limit = pow_int(BigInt(2), 126);
    fits = bound < limit;
    if (fits) {
      for (auto& t : terms) {
        bool neg = t.c_big < 0;
        BigInt mag = abs(t.c_big);
        I128 v = 0;
        BigInt hi = mag >> 64;
        BigInt lo = mag - (hi << 64);
        v = (static_cast<I128>(hi.convert_to<std::uint64_t>()) << 64) +
            static_cast<I128>(lo.convert_to<std::uint64_t>());
        t.c = neg ? -v : v;
      }
      powers.assign(static_cast<size_t>(max_deg) + 1,
                    std::vector<I128>(static_cast<size_t>(2 * res + 1)));
      for (int x = -res; x <= res; ++x) {
        I128 acc = 1;
        for (int e = 0; e <= max_deg; ++e) {
          powers[static_cast<size_t>(e)][static_cast<size_t>(x + res)] = acc;
          acc *= x;
        }
      }
    }
  }

  I128 eval_fast(const std::array<int, 3>& x) const {
    I128 acc = 0;
    for (const auto& t : terms) {
      I128 v = t.c;
      for (int a = 0; a < dim; ++a)
        if (t.e[static_cast<size_t>(a)])
          v *= powers[static_cast<size_t>(t.e[static_cast<size_t>(a)])]
                     [static_cast<size_t>(x[static_cast<size_t>(a)] + res)];
      acc += v;
    }
    return acc;
  }

  BigInt eval_big(const std::array<int, 3>& x) const {
    BigInt acc = 0;
    for (const auto& t : terms) {
      BigInt v = t.c_big;
      for (int a = 0; a < dim; ++a)
        if (t.e[static_cast<size_t>(a)])
          v *= pow_int(BigInt(x[static_cast<size_t>(a)]),
                       static_cast<unsigned>(t.e[static_cast<size_t>(a)]));
      acc += v;
    }
    return acc;
  }

  BigInt value(const std::array<int, 3>& x) const {
    if (fits) return to_bigint(eval_fast(x));
    return eval_big(x);
  }

  bool positive(const std::array<int, 3>& x) const {
    if (fits) return eval_fast(x) > 0;
    return eval_big(x) > 0;
  }

  static I128Interval ipow(I128 lo, I128 hi, int e) {
    auto p = [](I128 b, int n) {
      I128 acc = 1;
      for (int i = 0; i < n; ++i) acc *= b;
      return acc;
    };
    if (e % 2 == 1 || lo >= 0) return {p(lo, e), p(hi, e)};
    if (hi <= 0) return {p(hi, e), p(lo, e)};
    return {0, std::max(p(lo, e), p(hi, e))};
  }

  // Sound range enclosure over an integer box (naive extension).
  I128Interval eval_interval(const std::array<int, 3>& lo,
                             const std::array<int, 3>& hi) const {
    I128Interval acc{0, 0};
    for (const auto& t : terms) {
      I128Interval v{t.c, t.c};
      for (int a = 0; a < dim; ++a) {
        int e = t.e[static_cast<size_t>(a)];
        if (!e) continue;
        I128Interval p = ipow(lo[static_cast<size_t>(a)],
                              hi[static_cast<size_t>(a)], e);
        I128 c1 = v.lo * p.lo, c2 = v.lo * p.hi, c3 = v.hi * p.lo,
             c4 = v.hi * p.hi;
        v = {std::min(std::min(c1, c2), std::min(c3, c4)),
             std::max(std::max(c1, c2), std::max(c3, c4))};
      }
      acc = {acc.lo + v.lo, acc.hi + v.hi};
    }
    return acc;
  }

  // Enclosure with big-int arithmetic (fallback when coefficients are too
  // large for the fast path).
  std::pair<BigInt, BigInt> eval_interval_big(const std::array<int, 3>& lo,
                                              const std::array<int, 3>& hi) const {
    BigInt alo = 0, ahi = 0;
    for (const auto& t : terms) {
      BigInt vlo = t.c_big, vhi = t.c_big;
      for (int a = 0; a < dim; ++a) {
        int e = t.e[static_cast<size_t>(a)];
        if (!e) continue;
        BigInt plo, phi;
        BigInt l = pow_int(BigInt(lo[static_cast<size_t>(a)]),
                           static_cast<unsigned>(e));
        BigInt h = pow_int(BigInt(hi[static_cast<size_t>(a)]),
                           static_cast<unsigned>(e));
        if (e % 2 == 1 || lo[static_cast<size_t>(a)] >= 0) {
          plo = l;
          phi = h;
        } else if (hi[static_cast<size_t>(a)] <= 0) {
          plo = h;
          phi = l;
        } else {
          plo = 0;
          phi = std::max(l, h);
        }
        BigInt c1 = vlo * plo, c2 = vlo * phi, c3 = vhi * plo, c4 = vhi * phi;
        vlo = std::min(std::min(c1, c2), std::min(c3, c4));
        vhi = std::max(std::max(c1, c2), std::max(c3, c4));
      }
      alo += vlo;
      ahi += vhi;
    }
    return {alo, ahi};
  }

  bool interval_excludes(const std::array<int, 3>& lo,
                         const std::array<int, 3>& hi) const {
    if (fits) {
      I128Interval iv = eval_interval(lo, hi);
      return iv.lo > 0 || iv.hi < 0;
    }
    auto [l, h] = eval_interval_big(lo, hi);
    return l > 0 || h < 0;
  }

  // Sign when the region is certainly uniform; call only after
  // interval_excludes returned true.
  bool uniform_sign_positive(const std::array<int, 3>& lo,
                             const std::array<int, 3>& hi) const {
    if (fits) return eval_interval(lo, hi).lo > 0;
    return eval_interval_big(lo, hi).first > 0;
  }

  // Recursive bisection exclusion: true if 0 is certainly not attained.
  bool excludes_zero(std::array<int, 3> lo, std::array<int, 3> hi,
                     int depth) const {
    if (interval_excludes(lo, hi)) return true;
    if (depth == 0) return false;
    int widest = 0, w = -1;
    for (int a = 0; a < dim; ++a)
      if (hi[static_cast<size_t>(a)] - lo[static_cast<size_t>(a)] > w) {
        w = hi[static_cast<size_t>(a)] - lo[static_cast<size_t>(a)];
        widest = a;
      }
    if (w <= 0) return false;
    int mid = lo[static_cast<size_t>(widest)] + w / 2;
    auto lo2 = lo, hi1 = hi;
    hi1[static_cast<size_t>(widest)] = mid;
    lo2[static_cast<size_t>(widest)] = mid;
    return excludes_zero(lo, hi1, depth - 1) &&
           excludes_zero(lo2, hi, depth - 1);
  }
};

// Level polynomial h = f -+ eta in the spatial variables.
MultiPoly level_poly(const FibreSpec& spec) {
  Rational shift = spec.side == Side::Plus ? -spec.eta : spec.eta;
  return spec.polynomial +
         MultiPoly::constant(spec.polynomial.variables(), shift);
}

Rational lattice_coord(const Rational& eps, int res, int x) {
  return eps * Rational(x, res);
}

struct PairHash {
  size_t operator()(const std::pair<std::int64_t, std::int64_t>& p) const {
    return std::hash<std::int64_t>()(p.first * 1000003 ^ p.second);
  }
};

// Interned mesh vertices.  kind 0: cut point on a lattice segment (key =
// lattice point ids); kind 1: sphere crossing on a mesh edge (key = mesh
// vertex ids).  Sphere vertices carry no exact coordinates; they only matter
// combinatorially and for the boundary flag.
struct VertexPool {
  struct Vertex {
    std::vector<Rational> coords;  // empty for sphere vertices
    bool on_boundary = false;
  };
  std::vector<Vertex> vertices;
  std::unordered_map<std::pair<std::int64_t, std::int64_t>, std::int64_t,
                     PairHash>
      cut_ids, sphere_ids;

  std::int64_t cut(std::int64_t a, std::int64_t b,
                   std::vector<Rational> coords) {
    if (a > b) std::swap(a, b);
    auto [it, inserted] = cut_ids.try_emplace({a, b}, 0);
    if (inserted) {
      it->second = static_cast<std::int64_t>(vertices.size());
      vertices.push_back({std::move(coords), false});
    }
    return it->second;
  }

  std::int64_t sphere(std::int64_t a, std::int64_t b) {
    if (a > b) std::swap(a, b);
    auto [it, inserted] = sphere_ids.try_emplace({a, b}, 0);
    if (inserted) {
      it->second = static_cast<std::int64_t>(vertices.size());
      vertices.push_back({{}, true});
    }
    return it->second;
  }
};

// ---------------------------------------------------------------------------
// dim 2: marching squares over the plain lattice X = 2i - res (cell centres
// sit at odd X, so one rescaled polynomial serves corners and deciders).

struct Mesh2D {
  const FibreSpec& spec;
  MultiPoly h;
  ScaledPoly scaled;
  int res;
  std::vector<bool> sign;  // (res+1)^2, true = h > 0
  VertexPool pool;
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;
  MeshResult result;
  std::vector<MultiPoly> grad;
  BigInt min_abs = -1;

  explicit Mesh2D(const FibreSpec& s)
      : spec(s),
        h(level_poly(s)),
        scaled(h, s.epsilon, s.resolution),
        res(s.resolution),
        grad(h.jacobian(h.variables())) {}

  int lat_x(int i) const { return 2 * i - res; }
  std::int64_t lattice_id(int i, int j) const {
    return static_cast<std::int64_t>(j) * (res + 1) + i;
  }
  bool corner_positive(int i, int j) const {
    return sign[static_cast<size_t>(lattice_id(i, j))];
  }
  bool corner_outside_ball(int i, int j) const {
    long x = lat_x(i), y = lat_x(j);
    return x * x + y * y > static_cast<long>(res) * res;
  }

  void compute_signs() {
    sign.assign(static_cast<size_t>(res + 1) * (res + 1), false);
    for (int j = 0; j <= res; ++j)
      for (int i = 0; i <= res; ++i) {
        std::array<int, 3> p{lat_x(i), lat_x(j), 0};
        BigInt v = scaled.value(p);
        sign[static_cast<size_t>(lattice_id(i, j))] = v > 0;
        BigInt a = abs(v);
        if (min_abs < 0 || a < min_abs) min_abs = a;
      }
  }

  std::vector<Rational> cut_coords(int i1, int j1, int i2, int j2) {
    std::array<int, 3> p1{lat_x(i1), lat_x(j1), 0}, p2{lat_x(i2), lat_x(j2), 0};
    Rational ha(scaled.value(p1)), hb(scaled.value(p2));
    Rational tau = ha / (ha - hb);
    Rational xa = lattice_coord(spec.epsilon, res, p1[0]);
    Rational ya = lattice_coord(spec.epsilon, res, p1[1]);
    Rational xb = lattice_coord(spec.epsilon, res, p2[0]);
    Rational yb = lattice_coord(spec.epsilon, res, p2[1]);
    return {xa + (xb - xa) * tau, ya + (yb - ya) * tau};
  }

  std::int64_t cut_vertex(int i1, int j1, int i2, int j2) {
    std::int64_t a = lattice_id(i1, j1), b = lattice_id(i2, j2);
    if (pool.cut_ids.count({std::min(a, b), std::max(a, b)}) == 0)
      return pool.cut(a, b, cut_coords(i1, j1, i2, j2));
    return pool.cut(a, b, {});
  }

  void emit_segment(std::int64_t va, std::int64_t vb) {
    // clip against the closed disk
    auto inside = [&](std::int64_t v) {
      const auto& c = pool.vertices[static_cast<size_t>(v)].coords;
      return c[0] * c[0] + c[1] * c[1] <= spec.epsilon * spec.epsilon;
    };
    bool ia = inside(va), ib = inside(vb);
    if (!ia && !ib) return;
    if (ia && ib) {
      edges.emplace_back(va, vb);
      return;
    }
    std::int64_t in = ia ? va : vb, out = ia ? vb : va;
    std::int64_t s = pool.sphere(va, vb);
    (void)out;
    edges.emplace_back(in, s);
  }

  // Segment endpoints for one cell given the positive-corner mask; corners
  // c0=(i,j) c1=(i+1,j) c2=(i+1,j+1) c3=(i,j+1); edges 0..3 = bottom, right,
  // top, left.
  void process_cell(int i, int j) {
    int mask = (corner_positive(i, j) ? 1 : 0) |
               (corner_positive(i + 1, j) ? 2 : 0) |
               (corner_positive(i + 1, j + 1) ? 4 : 0) |
               (corner_positive(i, j + 1) ? 8 : 0);
    if (mask == 0 || mask == 15) return;
    ++result.crossed_cells;

    auto edge_vertex = [&](int e) {
      switch (e) {
        case 0: return cut_vertex(i, j, i + 1, j);
        case 1: return cut_vertex(i + 1, j, i + 1, j + 1);
        case 2: return cut_vertex(i, j + 1, i + 1, j + 1);
        default: return cut_vertex(i, j, i, j + 1);
      }
    };
    auto seg = [&](int e1, int e2) {
      emit_segment(edge_vertex(e1), edge_vertex(e2));
    };

    switch (mask) {
      case 1: case 14: seg(0, 3); break;
      case 2: case 13: seg(0, 1); break;
      case 4: case 11: seg(1, 2); break;
      case 8: case 7: seg(2, 3); break;
      case 3: case 12: seg(3, 1); break;
      case 6: case 9: seg(0, 2); break;
      case 5: case 10: {
        // ambiguous: resolved by one exact midpoint evaluation
        std::array<int, 3> centre{2 * i + 1 - res, 2 * j + 1 - res, 0};
        bool centre_pos = scaled.positive(centre);
        bool diag02 = mask == 5;  // c0 and c2 positive
        if (diag02 == centre_pos) {
          seg(0, 1);
          seg(2, 3);
        } else {
          seg(0, 3);
          seg(1, 2);
        }
        break;
      }
      default: break;
    }

    // tangency guard: a crossed cell where no gradient component has a
    // certain sign could hide a feature between grid points
    Box cell_box{
        Interval(lattice_coord(spec.epsilon, res, lat_x(i)),
                 lattice_coord(spec.epsilon, res, lat_x(i + 1))),
        Interval(lattice_coord(spec.epsilon, res, lat_x(j)),
                 lattice_coord(spec.epsilon, res, lat_x(j + 1)))};
    bool grad_ok = false;
    for (const auto& g : grad)
      if (!g.eval_interval_bisect(cell_box, 1).contains_zero()) {
        grad_ok = true;
        break;
      }
    if (!grad_ok) ++result.suspect_cells;
  }

  // Quadtree sweep over uniform-sign regions: any region whose enclosure
  // cannot exclude zero after refinement is a potential missed feature.
  // Regions entirely outside the ball are irrelevant and skipped.
  void sweep_uniform(int i0, int i1, int j0, int j1) {
    long rx0 = lat_x(i0), rx1 = lat_x(i1), ry0 = lat_x(j0), ry1 = lat_x(j1);
    auto clamp0 = [](long a, long b) {
      if (a > 0) return a;
      if (b < 0) return b;
      return 0L;
    };
    long nx = clamp0(rx0, rx1), ny = clamp0(ry0, ry1);
    if (nx * nx + ny * ny > static_cast<long>(res) * res) return;
    std::array<int, 3> lo{lat_x(i0), lat_x(j0), 0};
    std::array<int, 3> hi{lat_x(i1), lat_x(j1), 0};
    if (scaled.excludes_zero(lo, hi, 0)) return;
    if (i1 - i0 <= 1 && j1 - j0 <= 1) {
      // single cell: crossed cells are handled during extraction
      int mask = (corner_positive(i0, j0) ? 1 : 0) |
                 (corner_positive(i1, j0) ? 2 : 0) |
                 (corner_positive(i1, j1) ? 4 : 0) |
                 (corner_positive(i0, j1) ? 8 : 0);
      if (mask != 0 && mask != 15) return;
      if (!scaled.excludes_zero(lo, hi, 4)) ++result.suspect_cells;
      return;
    }
    int im = (i0 + i1) / 2, jm = (j0 + j1) / 2;
    if (i1 - i0 >= j1 - j0) {
      sweep_uniform(i0, im, j0, j1);
      sweep_uniform(im, i1, j0, j1);
    } else {
      sweep_uniform(i0, i1, j0, jm);
      sweep_uniform(i0, i1, jm, j1);
    }
  }

  MeshResult run() {
    compute_signs();
    for (int j = 0; j < res; ++j)
      for (int i = 0; i < res; ++i) {
        if (corner_outside_ball(i, j) && corner_outside_ball(i + 1, j) &&
            corner_outside_ball(i + 1, j + 1) &&
            corner_outside_ball(i, j + 1))
          continue;  // cell entirely outside the closed ball
        process_cell(i, j);
      }
    sweep_uniform(0, res, 0, res);
    build_complex();
    result.min_abs_vertex_value = min_abs;
    // eta in rescaled units: eta * D * beta^deg (exact integer)
    result.eta_unit =
        scaled.eta_unit * numerator(spec.eta) / denominator(spec.eta);
    if (result.eta_unit == 0) result.eta_unit = 1;
    return std::move(result);
  }

  void build_complex() {
    CellComplex& c = result.complex;
    // keep only vertices referenced by surviving edges
    std::vector<std::int64_t> remap(pool.vertices.size(), -1);
    std::int64_t next = 0;
    std::vector<int> degree;
    for (auto& [a, b] : edges) {
      for (std::int64_t* v : {&a, &b}) {
        if (remap[static_cast<size_t>(*v)] < 0) {
          remap[static_cast<size_t>(*v)] = next++;
          degree.push_back(0);
        }
        *v = remap[static_cast<size_t>(*v)];
      }
      ++degree[static_cast<size_t>(a)];
      ++degree[static_cast<size_t>(b)];
    }
    c.cells_per_dim = {next, static_cast<std::int64_t>(edges.size())};
    c.boundary.resize(2);
    c.boundary[0].assign(static_cast<size_t>(next), {});
    c.boundary[1].reserve(edges.size());
    for (const auto& [a, b] : edges)
      c.boundary[1].push_back({{a, -1}, {b, 1}});

    // manifold check + record boundary flags / geometry
    std::vector<bool> on_boundary(static_cast<size_t>(next), false);
    std::vector<std::array<double, 2>> xy(static_cast<size_t>(next),
                                          {0.0, 0.0});
    for (size_t v = 0; v < pool.vertices.size(); ++v) {
      std::int64_t m = remap[v];
      if (m < 0) continue;
      on_boundary[static_cast<size_t>(m)] = pool.vertices[v].on_boundary;
      if (!pool.vertices[v].coords.empty())
        xy[static_cast<size_t>(m)] = {
            pool.vertices[v].coords[0].convert_to<double>(),
            pool.vertices[v].coords[1].convert_to<double>()};
    }
    for (std::int64_t v = 0; v < next; ++v) {
      int want = on_boundary[static_cast<size_t>(v)] ? 1 : 2;
      if (degree[static_cast<size_t>(v)] != want) result.manifold_ok = false;
      if (on_boundary[static_cast<size_t>(v)]) ++result.boundary_vertices;
    }
    // geometry for SVG: project sphere vertices onto the circle along their
    // partner direction (display only)
    double eps_d = spec.epsilon.convert_to<double>();
    for (const auto& [a, b] : edges) {
      std::array<double, 2> pa = xy[static_cast<size_t>(a)];
      std::array<double, 2> pb = xy[static_cast<size_t>(b)];
      if (on_boundary[static_cast<size_t>(b)]) {
        double nrm = std::hypot(pa[0], pa[1]);
        if (nrm > 0) pb = {pa[0] / nrm * eps_d, pa[1] / nrm * eps_d};
      }
      result.segments_xy.push_back({pa[0], pa[1], pb[0], pb[1]});
    }
  }
};

// ---------------------------------------------------------------------------
// dim 3: doubled lattice X = m - res for m in [0, 2res]; cube corners sit at
// even m, face centres and body centres at mixed/odd m.  Each cube splits
// into 24 tetrahedra (4 per face, apex at the body centre); all decision
// vertices are exact midpoint evaluations shared between neighbours.

struct Mesh3D {
  const FibreSpec& spec;
  MultiPoly h;
  ScaledPoly scaled;
  int res;   // cubes per axis
  int side;  // doubled lattice points per axis = 2*res + 1
  std::vector<bool> sign, sign_known;
  VertexPool pool;
  std::vector<std::array<std::int64_t, 3>> triangles;
  MeshResult result;
  std::vector<MultiPoly> grad;
  BigInt min_abs = -1;

  explicit Mesh3D(const FibreSpec& s)
      : spec(s),
        h(level_poly(s)),
        scaled(h, s.epsilon, s.resolution),
        res(s.resolution),
        side(2 * s.resolution + 1),
        grad(h.jacobian(h.variables())) {}

  std::int64_t lattice_id(int mx, int my, int mz) const {
    return (static_cast<std::int64_t>(mz) * side + my) * side + mx;
  }

  bool lattice_sign(int mx, int my, int mz) {
    std::int64_t id = lattice_id(mx, my, mz);
    if (!sign_known[static_cast<size_t>(id)]) {
      std::array<int, 3> p{mx - res, my - res, mz - res};
      BigInt v = scaled.value(p);
      sign[static_cast<size_t>(id)] = v > 0;
      sign_known[static_cast<size_t>(id)] = true;
      BigInt a = abs(v);
      if (min_abs < 0 || a < min_abs) min_abs = a;
    }
    return sign[static_cast<size_t>(id)];
  }

  // Octree pass: regions whose enclosure excludes zero get a uniform sign
  // without pointwise work; undecidable single cubes away from any sign
  // change are counted as suspects.
  void presolve(int cx0, int cx1, int cy0, int cy1, int cz0, int cz1) {
    std::array<int, 3> lo{2 * cx0 - res, 2 * cy0 - res, 2 * cz0 - res};
    std::array<int, 3> hi{2 * cx1 - res, 2 * cy1 - res, 2 * cz1 - res};
    if (scaled.interval_excludes(lo, hi)) {
      bool s = scaled.uniform_sign_positive(lo, hi);
      for (int mz = 2 * cz0; mz <= 2 * cz1; ++mz)
        for (int my = 2 * cy0; my <= 2 * cy1; ++my) {
          std::int64_t base = lattice_id(2 * cx0, my, mz);
          for (int mx = 2 * cx0; mx <= 2 * cx1; ++mx, ++base) {
            sign[static_cast<size_t>(base)] = s;
            sign_known[static_cast<size_t>(base)] = true;
          }
        }
      return;
    }
    int wx = cx1 - cx0, wy = cy1 - cy0, wz = cz1 - cz0;
    if (wx <= 1 && wy <= 1 && wz <= 1) return;  // handled cube by cube
    if (wx >= wy && wx >= wz) {
      int m = (cx0 + cx1) / 2;
      presolve(cx0, m, cy0, cy1, cz0, cz1);
      presolve(m, cx1, cy0, cy1, cz0, cz1);
    } else if (wy >= wz) {
      int m = (cy0 + cy1) / 2;
      presolve(cx0, cx1, cy0, m, cz0, cz1);
      presolve(cx0, cx1, m, cy1, cz0, cz1);
    } else {
      int m = (cz0 + cz1) / 2;
      presolve(cx0, cx1, cy0, cy1, cz0, m);
      presolve(cx0, cx1, cy0, cy1, m, cz1);
    }
  }

  std::vector<Rational> cut_coords(const std::array<int, 3>& a,
                                   const std::array<int, 3>& b) {
    std::array<int, 3> pa{a[0] - res, a[1] - res, a[2] - res};
    std::array<int, 3> pb{b[0] - res, b[1] - res, b[2] - res};
    Rational ha(scaled.value(pa)), hb(scaled.value(pb));
    Rational tau = ha / (ha - hb);
    std::vector<Rational> out(3);
    for (int v = 0; v < 3; ++v) {
      Rational ca = lattice_coord(spec.epsilon, res, pa[static_cast<size_t>(v)]);
      Rational cb = lattice_coord(spec.epsilon, res, pb[static_cast<size_t>(v)]);
      out[static_cast<size_t>(v)] = ca + (cb - ca) * tau;
    }
    return out;
  }

  std::int64_t cut_vertex(const std::array<int, 3>& a,
                          const std::array<int, 3>& b) {
    std::int64_t ia = lattice_id(a[0], a[1], a[2]);
    std::int64_t ib = lattice_id(b[0], b[1], b[2]);
    auto key = std::minmax(ia, ib);
    if (pool.cut_ids.count({key.first, key.second}))
      return pool.cut(ia, ib, {});
    return pool.cut(ia, ib, cut_coords(a, b));
  }

  void march_tet(const std::array<std::array<int, 3>, 4>& v) {
    bool pos[4];
    int npos = 0;
    for (int i = 0; i < 4; ++i) {
      pos[i] = lattice_sign(v[static_cast<size_t>(i)][0],
                            v[static_cast<size_t>(i)][1],
                            v[static_cast<size_t>(i)][2]);
      if (pos[i]) ++npos;
    }
    if (npos == 0 || npos == 4) return;
    if (npos == 1 || npos == 3) {
      bool lone_sign = npos == 1;
      int lone = -1;
      for (int i = 0; i < 4; ++i)
        if (pos[i] == lone_sign) lone = i;
      std::array<std::int64_t, 3> tri;
      int t = 0;
      for (int i = 0; i < 4; ++i)
        if (i != lone)
          tri[static_cast<size_t>(t++)] =
              cut_vertex(v[static_cast<size_t>(lone)], v[static_cast<size_t>(i)]);
      triangles.push_back(tri);
      return;
    }
    // 2-2: quad around the two cut pairs
    int p[2], n[2], ip = 0, in = 0;
    for (int i = 0; i < 4; ++i)
      (pos[i] ? p[ip++] : n[in++]) = i;
    std::int64_t q0 = cut_vertex(v[static_cast<size_t>(p[0])],
                                 v[static_cast<size_t>(n[0])]);
    std::int64_t q1 = cut_vertex(v[static_cast<size_t>(p[0])],
                                 v[static_cast<size_t>(n[1])]);
    std::int64_t q2 = cut_vertex(v[static_cast<size_t>(p[1])],
                                 v[static_cast<size_t>(n[1])]);
    std::int64_t q3 = cut_vertex(v[static_cast<size_t>(p[1])],
                                 v[static_cast<size_t>(n[0])]);
    triangles.push_back({q0, q1, q2});
    triangles.push_back({q0, q2, q3});
  }

  void process_cube(int i, int j, int k) {
    // 15 decision points: corners, face centres, body centre
    std::array<int, 3> body{2 * i + 1, 2 * j + 1, 2 * k + 1};
    std::array<std::array<int, 3>, 8> corner;
    for (int c = 0; c < 8; ++c)
      corner[static_cast<size_t>(c)] = {2 * (i + (c & 1)), 2 * (j + ((c >> 1) & 1)),
                                        2 * (k + ((c >> 2) & 1))};
    bool first = lattice_sign(corner[0][0], corner[0][1], corner[0][2]);
    bool uniform = true;
    for (int c = 1; c < 8 && uniform; ++c)
      uniform = lattice_sign(corner[static_cast<size_t>(c)][0],
                             corner[static_cast<size_t>(c)][1],
                             corner[static_cast<size_t>(c)][2]) == first;
    // face centres: (axis, direction)
    std::array<std::array<int, 3>, 6> face;
    for (int a = 0; a < 3; ++a)
      for (int d = 0; d < 2; ++d) {
        std::array<int, 3> f = body;
        f[static_cast<size_t>(a)] = 2 * ((a == 0 ? i : a == 1 ? j : k) + d);
        face[static_cast<size_t>(2 * a + d)] = f;
      }
    if (uniform) {
      for (int f = 0; f < 6 && uniform; ++f)
        uniform = lattice_sign(face[static_cast<size_t>(f)][0],
                               face[static_cast<size_t>(f)][1],
                               face[static_cast<size_t>(f)][2]) == first;
      if (uniform) uniform = lattice_sign(body[0], body[1], body[2]) == first;
      if (uniform) return;
    }
    ++result.crossed_cells;

    // 24 tetrahedra: per face, per face edge
    static const int face_corners[6][4] = {
        // axis x, d=0 plane: corners with bit0 = 0, in cyclic order
        {0, 2, 6, 4}, {1, 3, 7, 5},  // x faces
        {0, 1, 5, 4}, {2, 3, 7, 6},  // y faces
        {0, 1, 3, 2}, {4, 5, 7, 6},  // z faces
    };
    for (int f = 0; f < 6; ++f) {
      const auto& fc = face_corners[f];
      for (int e = 0; e < 4; ++e) {
        std::array<std::array<int, 3>, 4> tet{
            corner[static_cast<size_t>(fc[e])],
            corner[static_cast<size_t>(fc[(e + 1) % 4])],
            face[static_cast<size_t>(f)], body};
        march_tet(tet);
      }
    }

    // tangency guard on crossed cubes
    Box cell_box(3);
    int lo[3] = {2 * i - res, 2 * j - res, 2 * k - res};
    for (int a = 0; a < 3; ++a)
      cell_box[static_cast<size_t>(a)] =
          Interval(lattice_coord(spec.epsilon, res, lo[a]),
                   lattice_coord(spec.epsilon, res, lo[a] + 2));
    bool grad_ok = false;
    for (const auto& g : grad)
      if (!g.eval_interval(cell_box).contains_zero()) {
        grad_ok = true;
        break;
      }
    if (!grad_ok) ++result.suspect_cells;
  }

  void sweep_uniform(int cx0, int cx1, int cy0, int cy1, int cz0, int cz1) {
    std::array<int, 3> lo{2 * cx0 - res, 2 * cy0 - res, 2 * cz0 - res};
    std::array<int, 3> hi{2 * cx1 - res, 2 * cy1 - res, 2 * cz1 - res};
    auto clamp0 = [](int a, int b) {
      if (a > 0) return static_cast<long>(a);
      if (b < 0) return static_cast<long>(b);
      return 0L;
    };
    long nx = clamp0(lo[0], hi[0]), ny = clamp0(lo[1], hi[1]),
         nz = clamp0(lo[2], hi[2]);
    if (nx * nx + ny * ny + nz * nz > static_cast<long>(res) * res) return;
    if (scaled.excludes_zero(lo, hi, 0)) return;
    if (cx1 - cx0 <= 1 && cy1 - cy0 <= 1 && cz1 - cz0 <= 1) {
      // crossed cubes already guarded during extraction
      bool first = lattice_sign(2 * cx0, 2 * cy0, 2 * cz0);
      for (int dz = 0; dz <= 1; ++dz)
        for (int dy = 0; dy <= 1; ++dy)
          for (int dx = 0; dx <= 1; ++dx)
            if (lattice_sign(2 * (cx0 + dx), 2 * (cy0 + dy),
                             2 * (cz0 + dz)) != first)
              return;
      if (!scaled.excludes_zero(lo, hi, 3)) ++result.suspect_cells;
      return;
    }
    int wx = cx1 - cx0, wy = cy1 - cy0, wz = cz1 - cz0;
    if (wx >= wy && wx >= wz) {
      int m = (cx0 + cx1) / 2;
      sweep_uniform(cx0, m, cy0, cy1, cz0, cz1);
      sweep_uniform(m, cx1, cy0, cy1, cz0, cz1);
    } else if (wy >= wz) {
      int m = (cy0 + cy1) / 2;
      sweep_uniform(cx0, cx1, cy0, m, cz0, cz1);
      sweep_uniform(cx0, cx1, m, cy1, cz0, cz1);
    } else {
      int m = (cz0 + cz1) / 2;
      sweep_uniform(cx0, cx1, cy0, cy1, cz0, m);
      sweep_uniform(cx0, cx1, cy0, cy1, m, cz1);
    }
  }

  bool cube_outside_ball(int i, int j, int k) const {
    for (int c = 0; c < 8; ++c) {
      long x = 2 * (i + (c & 1)) - res;
      long y = 2 * (j + ((c >> 1) & 1)) - res;
      long z = 2 * (k + ((c >> 2) & 1)) - res;
      if (x * x + y * y + z * z <= static_cast<long>(res) * res) return false;
    }
    return true;
  }

  MeshResult run() {
    sign.assign(static_cast<size_t>(side) * side * side, false);
    sign_known.assign(sign.size(), false);
    presolve(0, res, 0, res, 0, res);
    for (int k = 0; k < res; ++k)
      for (int j = 0; j < res; ++j)
        for (int i = 0; i < res; ++i) {
          if (cube_outside_ball(i, j, k)) continue;
          process_cube(i, j, k);
        }
    sweep_uniform(0, res, 0, res, 0, res);
    clip_and_build();
    result.min_abs_vertex_value = min_abs;
    result.eta_unit =
        scaled.eta_unit * numerator(spec.eta) / denominator(spec.eta);
    if (result.eta_unit == 0) result.eta_unit = 1;
    return std::move(result);
  }

  void clip_and_build() {
    Rational eps2 = spec.epsilon * spec.epsilon;
    auto inside = [&](std::int64_t v) {
      const auto& c = pool.vertices[static_cast<size_t>(v)].coords;
      if (c.empty()) return true;  // sphere vertices lie on the boundary
      return c[0] * c[0] + c[1] * c[1] + c[2] * c[2] <= eps2;
    };
    std::vector<std::array<std::int64_t, 3>> kept;
    kept.reserve(triangles.size());
    for (const auto& tri : triangles) {
      bool in[3];
      int nin = 0;
      for (int v = 0; v < 3; ++v) {
        in[v] = inside(tri[static_cast<size_t>(v)]);
        if (in[v]) ++nin;
      }
      if (nin == 0) continue;
      if (nin == 3) {
        kept.push_back(tri);
        continue;
      }
      if (nin == 2) {
        int out = !in[0] ? 0 : (!in[1] ? 1 : 2);
        std::int64_t vo = tri[static_cast<size_t>(out)];
        std::int64_t v1 = tri[static_cast<size_t>((out + 1) % 3)];
        std::int64_t v2 = tri[static_cast<size_t>((out + 2) % 3)];
        std::int64_t s1 = pool.sphere(vo, v1);
        std::int64_t s2 = pool.sphere(vo, v2);
        kept.push_back({v1, v2, s2});
        kept.push_back({v1, s2, s1});
      } else {
        int keep = in[0] ? 0 : (in[1] ? 1 : 2);
        std::int64_t vi = tri[static_cast<size_t>(keep)];
        std::int64_t o1 = tri[static_cast<size_t>((keep + 1) % 3)];
        std::int64_t o2 = tri[static_cast<size_t>((keep + 2) % 3)];
        kept.push_back({vi, pool.sphere(vi, o1), pool.sphere(vi, o2)});
      }
    }

    // drop degenerate triangles, remap vertices, build edge set
    CellComplex& c = result.complex;
    std::vector<std::int64_t> remap(pool.vertices.size(), -1);
    std::int64_t next = 0;
    std::unordered_map<std::pair<std::int64_t, std::int64_t>, std::int64_t,
                       PairHash>
        edge_ids;
    std::vector<std::array<std::int64_t, 2>> edge_list;
    c.boundary.resize(3);
    for (auto tri : kept) {
      std::sort(tri.begin(), tri.end());
      if (tri[0] == tri[1] || tri[1] == tri[2]) continue;
      for (auto& v : tri) {
        if (remap[static_cast<size_t>(v)] < 0)
          remap[static_cast<size_t>(v)] = next++;
        v = remap[static_cast<size_t>(v)];
      }
      std::sort(tri.begin(), tri.end());
      auto edge_of = [&](std::int64_t a, std::int64_t b) {
        auto key = std::minmax(a, b);
        auto [it, inserted] =
            edge_ids.try_emplace({key.first, key.second}, 0);
        if (inserted) {
          it->second = static_cast<std::int64_t>(edge_list.size());
          edge_list.push_back({key.first, key.second});
        }
        return it->second;
      };
      std::int64_t e01 = edge_of(tri[0], tri[1]);
      std::int64_t e02 = edge_of(tri[0], tri[2]);
      std::int64_t e12 = edge_of(tri[1], tri[2]);
      c.boundary[2].push_back({{e12, 1}, {e02, -1}, {e01, 1}});
    }
    c.boundary[0].assign(static_cast<size_t>(next), {});
    c.boundary[1].reserve(edge_list.size());
    for (const auto& e : edge_list)
      c.boundary[1].push_back({{e[0], -1}, {e[1], 1}});
    c.cells_per_dim = {next, static_cast<std::int64_t>(edge_list.size()),
                       static_cast<std::int64_t>(c.boundary[2].size())};
    for (size_t v = 0; v < pool.vertices.size(); ++v)
      if (remap[v] >= 0 && pool.vertices[v].on_boundary)
        ++result.boundary_vertices;
  }
};

}  // namespace

void validate_spec(const FibreSpec& spec) {
  size_t dim = spec.polynomial.variables().size();
  if (dim != 2 && dim != 3)
    throw std::invalid_argument("mesh_fibre: spatial dimension must be 2 or 3");
  if (spec.eta <= 0 || spec.epsilon <= 0)
    throw std::invalid_argument("mesh_fibre: eta and epsilon must be positive");
  if (spec.eta > spec.epsilon / 8)
    throw std::invalid_argument("mesh_fibre: eta must satisfy eta <= epsilon/8");
  if (spec.resolution < 16)
    throw std::invalid_argument("mesh_fibre: resolution must be >= 16");
}

MeshResult mesh_fibre(const FibreSpec& spec) {
  validate_spec(spec);
  if (spec.polynomial.variables().size() == 2) {
    Mesh2D mesher(spec);
    return mesher.run();
  }
  Mesh3D mesher(spec);
  return mesher.run();
}

std::string fibre_svg(const FibreSpec& spec, const MeshResult& mesh) {
  double eps = spec.epsilon.convert_to<double>();
  double scale = 360.0 / (2 * eps);
  auto tx = [&](double x) { return 20.0 + (x + eps) * scale; };
  auto ty = [&](double y) { return 20.0 + (eps - y) * scale; };
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" "
         "height=\"400\" viewBox=\"0 0 400 400\">\n";
  svg << "  <circle cx=\"" << tx(0) << "\" cy=\"" << ty(0) << "\" r=\""
      << eps * scale << "\" fill=\"none\" stroke=\"#888\" "
         "stroke-dasharray=\"4 3\"/>\n";
  for (const auto& s : mesh.segments_xy)
    svg << "  <line x1=\"" << tx(s[0]) << "\" y1=\"" << ty(s[1]) << "\" x2=\""
        << tx(s[2]) << "\" y2=\"" << ty(s[3])
        << "\" stroke=\"#1565c0\" stroke-width=\"1.2\"/>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace ademf
