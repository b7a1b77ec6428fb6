#include "ademf/chain.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace ademf {

std::int64_t CellComplex::cell_count(int dim) const {
  if (dim < 0 || dim > top_dim()) return 0;
  return cells_per_dim[static_cast<size_t>(dim)];
}

bool CellComplex::empty() const {
  for (auto c : cells_per_dim)
    if (c > 0) return false;
  return true;
}

std::int64_t CellComplex::euler_characteristic() const {
  std::int64_t chi = 0;
  for (size_t d = 0; d < cells_per_dim.size(); ++d)
    chi += (d % 2 == 0 ? 1 : -1) * cells_per_dim[d];
  return chi;
}

void CellComplex::validate() const {
  if (boundary.size() != cells_per_dim.size())
    throw std::invalid_argument("boundary table size mismatch");
  for (size_t d = 0; d < boundary.size(); ++d) {
    if (static_cast<std::int64_t>(boundary[d].size()) != cells_per_dim[d])
      throw std::invalid_argument("boundary row count mismatch");
    for (const auto& chain : boundary[d]) {
      if (d == 0 && !chain.empty())
        throw std::invalid_argument("vertices must have empty boundary");
      for (const auto& e : chain)
        if (e.cell < 0 || e.cell >= cells_per_dim[d - 1])
          throw std::invalid_argument("incidence reference out of range");
    }
  }
  // dd = 0 over the integers
  for (size_t d = 2; d < boundary.size(); ++d) {
    for (const auto& chain : boundary[d]) {
      std::map<std::int64_t, std::int64_t> acc;
      for (const auto& e : chain)
        for (const auto& f : boundary[d - 1][static_cast<size_t>(e.cell)])
          acc[f.cell] += e.coeff * f.coeff;
      for (const auto& [cell, coeff] : acc)
        if (coeff != 0)
          throw std::invalid_argument("boundary of boundary is nonzero");
    }
  }
}

// ---------------------------------------------------------------------------
// Smith normal form (dense, exact).

std::vector<BigInt> smith_normal_form(std::vector<std::vector<BigInt>> m) {
  std::vector<BigInt> diag;
  if (m.empty() || m[0].empty()) return diag;
  const size_t rows = m.size(), cols = m[0].size();
  size_t r = 0;
  auto nonzero_at_or_after = [&](size_t start, size_t& pi, size_t& pj) {
    bool found = false;
    BigInt best;
    for (size_t i = start; i < rows; ++i)
      for (size_t j = start; j < cols; ++j) {
        if (m[i][j] == 0) continue;
        BigInt mag = abs(m[i][j]);
        if (!found || mag < best) {
          found = true;
          best = mag;
          pi = i;
          pj = j;
        }
      }
    return found;
  };
  while (r < rows && r < cols) {
    size_t pi = r, pj = r;
    if (!nonzero_at_or_after(r, pi, pj)) break;
    std::swap(m[pi], m[r]);
    for (size_t i = 0; i < rows; ++i) std::swap(m[i][pj], m[i][r]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (size_t i = r + 1; i < rows; ++i) {
        if (m[i][r] == 0) continue;
        BigInt q = m[i][r] / m[r][r];
        for (size_t j = r; j < cols; ++j) m[i][j] -= q * m[r][j];
        if (m[i][r] != 0) {  // remainder smaller than pivot; swap up
          std::swap(m[i], m[r]);
          clean = false;
        }
      }
      for (size_t j = r + 1; j < cols; ++j) {
        if (m[r][j] == 0) continue;
        BigInt q = m[r][j] / m[r][r];
        for (size_t i = r; i < rows; ++i) m[i][j] -= q * m[i][r];
        if (m[r][j] != 0) {
          for (size_t i = 0; i < rows; ++i) std::swap(m[i][j], m[i][r]);
          clean = false;
        }
      }
      if (clean) {
        // divisibility pass for invariant factors
        for (size_t i = r + 1; i < rows && clean; ++i)
          for (size_t j = r + 1; j < cols && clean; ++j)
            if (m[i][j] % m[r][r] != 0) {
              for (size_t l = r; l < cols; ++l) m[r][l] += m[i][l];
              clean = false;
            }
      }
    }
    diag.push_back(abs(m[r][r]));
    ++r;
  }
  return diag;
}

// ---------------------------------------------------------------------------
// Reduction engine: iterated elimination of incidence pairs with coefficient
// +-1.  Each elimination splits off an acyclic two-cell summand, so homology
// (including torsion) is preserved; what survives goes through the dense SNF.

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  __int128 p = static_cast<__int128>(a) * b;
  if (p > std::numeric_limits<std::int64_t>::max() ||
      p < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("chain reduction coefficient overflow");
  return static_cast<std::int64_t>(p);
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  __int128 p = static_cast<__int128>(a) - b;
  if (p > std::numeric_limits<std::int64_t>::max() ||
      p < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("chain reduction coefficient overflow");
  return static_cast<std::int64_t>(p);
}

struct Reducer {
  // Compact adjacency: boundaries and coboundaries live in short vectors
  // (mesh incidence degrees are tiny), which keeps memory linear in the
  // number of incidences even for million-cell complexes.
  struct RCell {
    std::vector<std::pair<std::int64_t, std::int64_t>> bnd;  // (face, coeff)
    std::vector<std::int64_t> cob;
    int dim = 0;
    bool alive = false;

    std::int64_t* find_bnd(std::int64_t face) {
      for (auto& e : bnd)
        if (e.first == face) return &e.second;
      return nullptr;
    }
    void erase_bnd(std::int64_t face) {
      for (size_t i = 0; i < bnd.size(); ++i)
        if (bnd[i].first == face) {
          bnd[i] = bnd.back();
          bnd.pop_back();
          return;
        }
    }
    void erase_cob(std::int64_t id) {
      for (size_t i = 0; i < cob.size(); ++i)
        if (cob[i] == id) {
          cob[i] = cob.back();
          cob.pop_back();
          return;
        }
    }
  };

  std::vector<RCell> cells;
  std::vector<std::int64_t> stack;
  long eliminations = 0;

  void push(std::int64_t id) { stack.push_back(id); }

  void eliminate(std::int64_t a, std::int64_t b) {
    RCell& ca = cells[static_cast<size_t>(a)];
    RCell& cb = cells[static_cast<size_t>(b)];
    std::int64_t lambda = *cb.find_bnd(a);  // +-1
    // Remaining entries of the pivot column
    std::vector<std::pair<std::int64_t, std::int64_t>> rest;
    for (const auto& [e, g] : cb.bnd)
      if (e != a) rest.emplace_back(e, g);

    // Update the other cofaces of a (column operations, may fill in).
    std::vector<std::int64_t> cofaces = ca.cob;
    for (std::int64_t c : cofaces) {
      if (c == b) continue;
      RCell& cc = cells[static_cast<size_t>(c)];
      std::int64_t delta = *cc.find_bnd(a);
      cc.erase_bnd(a);
      std::int64_t factor = checked_mul(delta, lambda);  // delta / lambda
      for (const auto& [e, g] : rest) {
        std::int64_t* cur = cc.find_bnd(e);
        if (cur) {
          *cur = checked_sub(*cur, checked_mul(factor, g));
          if (*cur == 0) {
            cc.erase_bnd(e);
            cells[static_cast<size_t>(e)].erase_cob(c);
            push(e);
          }
        } else {
          cc.bnd.emplace_back(e, checked_sub(0, checked_mul(factor, g)));
          cells[static_cast<size_t>(e)].cob.push_back(c);
        }
      }
      push(c);
    }
    // b disappears from the boundaries of its cofaces unchanged otherwise.
    std::vector<std::int64_t> b_cofaces = cb.cob;
    for (std::int64_t e : b_cofaces) {
      cells[static_cast<size_t>(e)].erase_bnd(b);
      push(e);
    }
    for (const auto& [f, g] : cb.bnd) {
      (void)g;
      if (f != a) {
        cells[static_cast<size_t>(f)].erase_cob(b);
        push(f);
      }
    }
    for (const auto& [f, g] : ca.bnd) {
      (void)g;
      cells[static_cast<size_t>(f)].erase_cob(a);
      push(f);
    }
    ca.alive = cb.alive = false;
    RCell().bnd.swap(ca.bnd);
    RCell().cob.swap(ca.cob);
    RCell().bnd.swap(cb.bnd);
    RCell().cob.swap(cb.cob);
    ++eliminations;
  }

  bool try_candidate(std::int64_t id) {
    RCell& c = cells[static_cast<size_t>(id)];
    if (!c.alive) return false;
    // coreduction pair: singleton boundary with unit coefficient
    if (c.bnd.size() == 1) {
      auto [face, coeff] = c.bnd.front();
      if ((coeff == 1 || coeff == -1) &&
          cells[static_cast<size_t>(face)].alive) {
        eliminate(face, id);
        return true;
      }
    }
    // collapse pair: unique coface incident with unit coefficient
    if (c.cob.size() == 1) {
      std::int64_t b = c.cob.front();
      RCell& cb = cells[static_cast<size_t>(b)];
      if (cb.alive) {
        std::int64_t* coeff = cb.find_bnd(id);
        if (coeff && (*coeff == 1 || *coeff == -1)) {
          eliminate(id, b);
          return true;
        }
      }
    }
    return false;
  }

  void run_zero_fill() {
    while (!stack.empty()) {
      std::int64_t id = stack.back();
      stack.pop_back();
      try_candidate(id);
    }
  }

  // One generic unit-pivot elimination, smallest fill first.
  bool run_one_generic() {
    std::int64_t best_a = -1, best_b = -1;
    long best_fill = -1;
    for (size_t b = 0; b < cells.size(); ++b) {
      const RCell& cb = cells[b];
      if (!cb.alive) continue;
      for (const auto& [a, coeff] : cb.bnd) {
        if (coeff != 1 && coeff != -1) continue;
        long fill =
            (static_cast<long>(cells[static_cast<size_t>(a)].cob.size()) - 1) *
            (static_cast<long>(cb.bnd.size()) - 1);
        if (best_fill < 0 || fill < best_fill) {
          best_fill = fill;
          best_a = a;
          best_b = static_cast<std::int64_t>(b);
        }
      }
    }
    if (best_a < 0) return false;
    eliminate(best_a, best_b);
    return true;
  }
};

}  // namespace

static HomologySummary homology_impl(const CellComplex& complex,
                                     bool use_reduction) {
  complex.validate();
  const int top = complex.top_dim();
  HomologySummary out;
  out.euler = complex.euler_characteristic();
  out.betti.assign(static_cast<size_t>(std::max(top + 1, 0)), 0);
  if (complex.empty()) return out;

  // Internal dims shift by one; cell 0 is the augmentation cell, so dim-1
  // homology below is reduced homology and b_0 gains one at the end.
  Reducer red;
  std::vector<std::vector<std::int64_t>> ids(
      static_cast<size_t>(top + 1));
  red.cells.emplace_back();
  red.cells[0].dim = 0;
  red.cells[0].alive = true;
  for (int d = 0; d <= top; ++d) {
    ids[static_cast<size_t>(d)].resize(
        static_cast<size_t>(complex.cell_count(d)));
    for (std::int64_t i = 0; i < complex.cell_count(d); ++i) {
      Reducer::RCell cell;
      cell.dim = d + 1;
      cell.alive = true;
      std::int64_t id = static_cast<std::int64_t>(red.cells.size());
      ids[static_cast<size_t>(d)][static_cast<size_t>(i)] = id;
      red.cells.push_back(std::move(cell));
    }
  }
  for (int d = 0; d <= top; ++d)
    for (std::int64_t i = 0; i < complex.cell_count(d); ++i) {
      std::int64_t id = ids[static_cast<size_t>(d)][static_cast<size_t>(i)];
      auto& cell = red.cells[static_cast<size_t>(id)];
      if (d == 0) {
        cell.bnd.emplace_back(0, 1);  // augmentation
        red.cells[0].cob.push_back(id);
      } else {
        // accumulate (duplicate face references are summed)
        std::map<std::int64_t, std::int64_t> acc;
        for (const auto& e :
             complex.boundary[static_cast<size_t>(d)][static_cast<size_t>(i)])
          acc[ids[static_cast<size_t>(d - 1)][static_cast<size_t>(e.cell)]] +=
              e.coeff;
        for (const auto& [face, coeff] : acc) {
          if (coeff == 0) continue;
          cell.bnd.emplace_back(face, coeff);
          red.cells[static_cast<size_t>(face)].cob.push_back(id);
        }
      }
    }

  if (use_reduction) {
    for (size_t i = 0; i < red.cells.size(); ++i)
      red.push(static_cast<std::int64_t>(i));
    red.run_zero_fill();
    while (red.run_one_generic()) red.run_zero_fill();
  }

  // Core: dense SNF per dimension pair on the surviving cells.
  const int internal_top = top + 1;
  std::vector<std::vector<std::int64_t>> alive(
      static_cast<size_t>(internal_top + 1));
  std::vector<std::int64_t> slot(red.cells.size(), -1);
  for (size_t i = 0; i < red.cells.size(); ++i) {
    if (!red.cells[i].alive) continue;
    auto& bucket = alive[static_cast<size_t>(red.cells[i].dim)];
    slot[i] = static_cast<std::int64_t>(bucket.size());
    bucket.push_back(static_cast<std::int64_t>(i));
  }
  std::vector<std::int64_t> rank(static_cast<size_t>(internal_top + 2), 0);
  for (int d = internal_top; d >= 1; --d) {
    const auto& rows = alive[static_cast<size_t>(d - 1)];
    const auto& cols = alive[static_cast<size_t>(d)];
    if (rows.empty() || cols.empty()) continue;
    std::vector<std::vector<BigInt>> mat(
        rows.size(), std::vector<BigInt>(cols.size(), BigInt(0)));
    for (size_t j = 0; j < cols.size(); ++j)
      for (const auto& [face, coeff] :
           red.cells[static_cast<size_t>(cols[j])].bnd)
        mat[static_cast<size_t>(slot[static_cast<size_t>(face)])][j] = coeff;
    auto diag = smith_normal_form(std::move(mat));
    rank[static_cast<size_t>(d)] = static_cast<std::int64_t>(diag.size());
    for (const auto& f : diag)
      if (f > 1) out.torsion.push_back(f);
  }

  for (int d = 0; d <= internal_top; ++d) {
    std::int64_t b =
        static_cast<std::int64_t>(alive[static_cast<size_t>(d)].size()) -
        rank[static_cast<size_t>(d)] - rank[static_cast<size_t>(d + 1)];
    if (d == 0) {
      if (b != 0)
        throw std::logic_error("augmented complex has dim -1 homology");
      continue;
    }
    out.betti[static_cast<size_t>(d - 1)] = b;
  }
  out.betti[0] += 1;  // reduced -> unreduced

  // Euler cross-check: alternating cell counts must equal alternating Betti.
  std::int64_t chi_betti = 0;
  for (size_t i = 0; i < out.betti.size(); ++i)
    chi_betti += (i % 2 == 0 ? 1 : -1) * out.betti[i];
  if (chi_betti != out.euler)
    throw std::logic_error("Euler characteristic mismatch in homology");
  return out;
}

HomologySummary homology(const CellComplex& complex) {
  return homology_impl(complex, true);
}

HomologySummary homology_dense(const CellComplex& complex) {
  return homology_impl(complex, false);
}

}  // namespace ademf
