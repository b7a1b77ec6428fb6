#include "ademf/critical.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "json.hpp"

namespace ademf {

namespace {

using PolyMatrix = std::vector<std::vector<MultiPoly>>;
using RatMatrix = std::vector<std::vector<Rational>>;
using IvMatrix = std::vector<std::vector<Interval>>;

std::vector<Rational> box_midpoint(const Box& box) {
  std::vector<Rational> m;
  m.reserve(box.size());
  for (const auto& iv : box) m.push_back(iv.mid());
  return m;
}

IvMatrix eval_matrix(const PolyMatrix& mat, const Box& box) {
  IvMatrix out(mat.size());
  for (size_t i = 0; i < mat.size(); ++i) {
    out[i].reserve(mat.size());
    for (size_t j = 0; j < mat[i].size(); ++j)
      out[i].push_back(mat[i][j].eval_interval(box));
  }
  return out;
}

// Exact inverse via Gauss-Jordan; nullopt when singular.
std::optional<RatMatrix> invert(RatMatrix m) {
  const size_t d = m.size();
  RatMatrix inv(d, std::vector<Rational>(d, Rational(0)));
  for (size_t i = 0; i < d; ++i) inv[i][i] = 1;
  for (size_t col = 0; col < d; ++col) {
    size_t pivot = col;
    while (pivot < d && m[pivot][col] == 0) ++pivot;
    if (pivot == d) return std::nullopt;
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    Rational p = m[col][col];
    for (size_t j = 0; j < d; ++j) {
      m[col][j] /= p;
      inv[col][j] /= p;
    }
    for (size_t row = 0; row < d; ++row) {
      if (row == col || m[row][col] == 0) continue;
      Rational factor = m[row][col];
      for (size_t j = 0; j < d; ++j) {
        m[row][j] -= factor * m[col][j];
        inv[row][j] -= factor * inv[col][j];
      }
    }
  }
  return inv;
}

struct GradientSystem {
  std::vector<MultiPoly> grad;
  PolyMatrix hess;
};

GradientSystem make_system(const MultiPoly& f,
                           const std::vector<std::string>& vars) {
  return GradientSystem{f.jacobian(vars), f.hessian(vars)};
}

// Krawczyk operator K(X) = m - Y g(m) + (I - Y H(X)) (X - m).  Returns the
// image when it lies strictly inside X (existence + uniqueness + the Hessian
// is nonsingular over X), nullopt otherwise.
std::optional<Box> krawczyk_once(const GradientSystem& sys, const Box& box) {
  const size_t d = box.size();
  auto m = box_midpoint(box);
  RatMatrix jm(d, std::vector<Rational>(d));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) jm[i][j] = sys.hess[i][j].evaluate(m);
  auto y = invert(std::move(jm));
  if (!y) return std::nullopt;

  std::vector<Rational> gm(d);
  for (size_t i = 0; i < d; ++i) gm[i] = sys.grad[i].evaluate(m);
  IvMatrix hx = eval_matrix(sys.hess, box);

  Box k(d);
  for (size_t i = 0; i < d; ++i) {
    Rational newton = m[i];
    for (size_t j = 0; j < d; ++j) newton -= (*y)[i][j] * gm[j];
    Interval acc{newton};
    for (size_t j = 0; j < d; ++j) {
      Interval r = (i == j) ? Interval(Rational(1)) : Interval(Rational(0));
      for (size_t l = 0; l < d; ++l) r = r - hx[l][j] * (*y)[i][l];
      acc = acc + r * (box[j] - Interval(m[j]));
    }
    k[i] = acc;
  }
  if (!box_strictly_contains(box, k)) return std::nullopt;
  return k;
}

// Contract a certified box toward the zero; endpoints are rounded outward to
// dyadics to keep coefficient sizes bounded across iterations.
Box refine_enclosure(const GradientSystem& sys, Box box, unsigned rounds) {
  for (unsigned r = 0; r < rounds; ++r) {
    auto k = krawczyk_once(sys, box);
    if (!k) break;
    Box next(box.size());
    bool progressed = false;
    for (size_t i = 0; i < box.size(); ++i) {
      auto meet = (*k)[i].intersect(box[i]);
      next[i] = meet ? meet->round_out(192) : box[i];
      if (next[i].width() < box[i].width()) progressed = true;
    }
    box = std::move(next);
    if (!progressed) break;
  }
  for (auto& iv : box) iv = iv.round_out(64);
  return box;
}

// Split point chosen off-centre (and never exactly at zero) so that zeros
// sitting on coordinate hyperplanes end up strictly inside one child.
Rational split_point(const Interval& iv) {
  Rational w = iv.width();
  Rational cand = iv.lo + w * Rational(29, 64);
  if (cand == 0) cand = iv.lo + w * Rational(33, 64);
  if (cand == 0) cand = iv.mid();
  return cand;
}

bool interval_excludes_zero(const std::vector<MultiPoly>& grad,
                            const Box& box) {
  for (const auto& g : grad)
    if (!g.eval_interval(box).contains_zero()) return true;
  return false;
}

}  // namespace

std::vector<const Certificate*> CertifyResult::unique_zeros() const {
  std::vector<const Certificate*> out;
  for (const auto& c : certificates)
    if (c.kind == CertKind::UniqueZero) out.push_back(&c);
  return out;
}

CertifyResult certify_points(const MultiPoly& f,
                             const std::vector<std::string>& vars,
                             const Box& box, const CertifyOptions& opts) {
  if (box.empty() || box.size() != vars.size())
    throw std::invalid_argument("certify_points: box/variable mismatch");
  GradientSystem sys = make_system(f, vars);
  CertifyResult result;
  std::vector<Box> stack{box};
  while (!stack.empty()) {
    if (result.boxes_processed >= opts.max_boxes) {
      result.budget_exhausted = true;
      for (auto& b : stack) result.undecided.push_back(std::move(b));
      break;
    }
    Box b = std::move(stack.back());
    stack.pop_back();
    ++result.boxes_processed;

    if (interval_excludes_zero(sys.grad, b)) {
      result.certificates.push_back({b, CertKind::NoZero, {}});
      continue;
    }
    if (auto k = krawczyk_once(sys, b)) {
      Certificate cert;
      cert.kind = CertKind::UniqueZero;
      cert.enclosure = refine_enclosure(sys, *k, 24);
      cert.box = std::move(b);
      result.certificates.push_back(std::move(cert));
      continue;
    }
    if (box_max_width(b) < opts.min_width) {
      result.undecided.push_back(std::move(b));
      continue;
    }
    size_t widest = 0;
    Rational w(-1);
    for (size_t i = 0; i < b.size(); ++i)
      if (b[i].width() > w) {
        w = b[i].width();
        widest = i;
      }
    Rational sp = split_point(b[widest]);
    Box left = b, right = b;
    left[widest] = Interval(b[widest].lo, sp);
    right[widest] = Interval(sp, b[widest].hi);
    stack.push_back(std::move(right));
    stack.push_back(std::move(left));
  }
  // Deterministic order: sort certificates by box lower corner.
  std::sort(result.certificates.begin(), result.certificates.end(),
            [](const Certificate& a, const Certificate& b) {
              for (size_t i = 0; i < a.box.size(); ++i) {
                if (a.box[i].lo != b.box[i].lo)
                  return a.box[i].lo < b.box[i].lo;
              }
              return false;
            });
  return result;
}

// ---------------------------------------------------------------------------
// Closed forms.  Locations come from the defining equations in the proofs
// (x = 0, (k-1) y^{k-2} = t and friends); printed Hessians and point formulas
// are treated as display-only and every index is recomputed from a certified
// Hessian below.

std::vector<CriticalPoint> closed_form_points(const MorsificationFamily& fam,
                                              const Rational& t0) {
  if (t0 == 0)
    throw std::domain_error("closed_form_points: t = 0 is the germ itself");
  if (!fam.interval.contains(t0))
    throw std::domain_error("closed_form_points: t outside admissible interval");
  const int k = fam.germ.k;
  std::vector<std::pair<RealAlg, RealAlg>> curve;
  switch (fam.case_tag) {
    case CaseTag::APlusEven:
    case CaseTag::AMinusEven:
    case CaseTag::DPlusEven:
    case CaseTag::E6Any:
    case CaseTag::E8Only:
      break;
    case CaseTag::APlusOdd:
      curve.emplace_back(RealAlg::root(t0, static_cast<unsigned>(k)),
                         RealAlg::rational(Rational(0)));
      break;
    case CaseTag::AMinusOdd:
      curve.emplace_back(
          RealAlg::root(-t0 / Rational(k + 1), static_cast<unsigned>(k)),
          RealAlg::rational(Rational(0)));
      break;
    case CaseTag::DPlusOdd:
      curve.emplace_back(
          RealAlg::rational(Rational(0)),
          RealAlg::root(t0 / Rational(k - 1), static_cast<unsigned>(k - 2)));
      break;
    case CaseTag::DMinusOdd:
      curve.emplace_back(RealAlg::rational(Rational(0)),
                         RealAlg::root(t0, static_cast<unsigned>(k - 2)));
      break;
    case CaseTag::DMinusEven: {
      RealAlg y = RealAlg::root(t0, static_cast<unsigned>(k - 2));
      curve.emplace_back(RealAlg::rational(Rational(0)), y);
      curve.emplace_back(RealAlg::rational(Rational(0)), y.negated());
      break;
    }
    case CaseTag::E7Only:
      curve.emplace_back(
          RealAlg::rational(-t0),
          RealAlg::root(Rational(-3) * (t0 * t0 + t0), 3));
      break;
  }

  const size_t dim = fam.germ.spatial_vars().size();
  std::vector<CriticalPoint> points;
  for (auto& [px, py] : curve) {
    CriticalPoint pt;
    pt.exact = {px, py};
    for (size_t i = 2; i < dim; ++i)
      pt.exact.push_back(RealAlg::rational(Rational(0)));
    pt.location.reserve(dim);
    for (const auto& coord : pt.exact)
      pt.location.push_back(coord.enclosure(48));
    pt.source = PointSource::ClosedForm;
    points.push_back(std::move(pt));
  }
  return points;
}

// ---------------------------------------------------------------------------
// Hessian signatures.

namespace {

struct SignState {
  bool ok = true;  // false: some needed sign could not be certified
  HessianSignature sig;
};

int certified_sign(const Interval& iv, bool& ok) {
  if (iv.strictly_positive()) return 1;
  if (iv.strictly_negative()) return -1;
  if (iv.lo == 0 && iv.hi == 0) return 0;
  ok = false;
  return 0;
}

// Interval determinant by cofactor expansion along the first row.
Interval interval_det(const IvMatrix& m, std::vector<size_t> rows,
                      std::vector<size_t> cols) {
  const size_t d = rows.size();
  if (d == 1) return m[rows[0]][cols[0]];
  Interval acc{Rational(0)};
  for (size_t j = 0; j < d; ++j) {
    std::vector<size_t> sub_rows(rows.begin() + 1, rows.end());
    std::vector<size_t> sub_cols;
    for (size_t l = 0; l < d; ++l)
      if (l != j) sub_cols.push_back(cols[l]);
    Interval minor = interval_det(m, sub_rows, sub_cols);
    Interval contrib = m[rows[0]][cols[j]] * minor;
    acc = (j % 2 == 0) ? acc + contrib : acc - contrib;
  }
  return acc;
}

// Sum of all j x j principal minors restricted to the index set `idx`.
Interval principal_minor_sum(const IvMatrix& m, const std::vector<size_t>& idx,
                             size_t j) {
  const size_t n = idx.size();
  if (j == 0) return Interval(Rational(1));
  Interval acc{Rational(0)};
  std::vector<size_t> c(j);
  for (size_t i = 0; i < j; ++i) c[i] = i;
  std::vector<size_t> pick(j);
  for (;;) {
    for (size_t i = 0; i < j; ++i) pick[i] = idx[c[i]];
    acc = acc + interval_det(m, pick, pick);
    // advance to the next j-combination of {0..n-1}
    size_t i = j;
    while (i > 0 && c[i - 1] == n - j + (i - 1)) --i;
    if (i == 0) break;
    ++c[i - 1];
    for (size_t l = i; l < j; ++l) c[l] = c[l - 1] + 1;
  }
  return acc;
}

// Signature of an interval symmetric block via certified characteristic
// polynomial coefficient signs and a Descartes count (all roots real).
SignState block_signature_general(const IvMatrix& m,
                                  const std::vector<size_t>& idx) {
  SignState st;
  const size_t d = idx.size();
  std::vector<int> esign(d + 1);
  esign[0] = 1;
  for (size_t j = 1; j <= d; ++j) {
    Interval ej = principal_minor_sum(m, idx, j);
    esign[j] = certified_sign(ej, st.ok);
    if (!st.ok) return st;
  }
  size_t rank = d;
  while (rank > 0 && esign[rank] == 0) --rank;
  st.sig.n_zero = static_cast<int>(d - rank);
  // q(x) = sum_{j=0..rank} (-1)^j e_j x^{rank-j}; positive roots = sign
  // variations (exact since all roots are real and nonzero).
  int variations = 0;
  int prev = 0;
  for (size_t j = 0; j <= rank; ++j) {
    int s = esign[j];
    if (j % 2 == 1) s = -s;
    if (s == 0) {
      // interior zero coefficient of a real-rooted polynomial is fine;
      // variations are counted over nonzero entries
      continue;
    }
    if (prev != 0 && s != prev) ++variations;
    prev = s;
  }
  st.sig.n_pos = variations;
  st.sig.n_neg = static_cast<int>(rank) - variations;
  return st;
}

SignState block_signature(const IvMatrix& m, const std::vector<size_t>& idx) {
  SignState st;
  if (idx.size() == 1) {
    int s = certified_sign(m[idx[0]][idx[0]], st.ok);
    if (!st.ok) return st;
    if (s > 0)
      st.sig.n_pos = 1;
    else if (s < 0)
      st.sig.n_neg = 1;
    else
      st.sig.n_zero = 1;
    return st;
  }
  if (idx.size() == 2) {
    const Interval& a = m[idx[0]][idx[0]];
    const Interval& b = m[idx[0]][idx[1]];
    const Interval& c = m[idx[1]][idx[1]];
    Interval det = a * c - b * b;
    Interval trace = a + c;
    if (det.strictly_negative()) {
      st.sig = {1, 1, 0};
      return st;
    }
    if (det.strictly_positive()) {
      int ts = certified_sign(trace, st.ok);
      if (!st.ok) return st;
      st.sig = ts > 0 ? HessianSignature{2, 0, 0} : HessianSignature{0, 2, 0};
      return st;
    }
    if (det.lo == 0 && det.hi == 0) {
      int ts = certified_sign(trace, st.ok);
      if (!st.ok) return st;
      if (ts > 0)
        st.sig = {1, 0, 1};
      else if (ts < 0)
        st.sig = {0, 1, 1};
      else
        st.sig = {0, 0, 2};
      return st;
    }
    st.ok = false;
    return st;
  }
  return block_signature_general(m, idx);
}

// Connected components of the symbolic nonzero off-diagonal pattern; the
// suspended Hessians decompose into the curve block plus 1 x 1 tail blocks.
std::vector<std::vector<size_t>> symbolic_blocks(const PolyMatrix& h) {
  const size_t d = h.size();
  std::vector<size_t> parent(d);
  for (size_t i = 0; i < d; ++i) parent[i] = i;
  std::function<size_t(size_t)> find = [&](size_t v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  for (size_t i = 0; i < d; ++i)
    for (size_t j = i + 1; j < d; ++j)
      if (!h[i][j].is_zero()) parent[find(i)] = find(j);
  std::vector<std::vector<size_t>> blocks;
  std::vector<int> slot(d, -1);
  for (size_t i = 0; i < d; ++i) {
    size_t root = find(i);
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[static_cast<size_t>(slot[root])].push_back(i);
  }
  return blocks;
}

}  // namespace

HessianSignature hessian_signature_at(const MultiPoly& f,
                                      const std::vector<std::string>& vars,
                                      const std::vector<RealAlg>& point) {
  if (point.size() != f.variables().size())
    throw std::invalid_argument("hessian_signature_at: point dimension");
  PolyMatrix h = f.hessian(vars);
  auto blocks = symbolic_blocks(h);
  for (unsigned bits : {24u, 48u, 96u, 192u, 384u}) {
    Box box;
    box.reserve(point.size());
    for (const auto& c : point) box.push_back(c.enclosure(bits));
    IvMatrix hx = eval_matrix(h, box);
    HessianSignature total;
    bool ok = true;
    for (const auto& blk : blocks) {
      SignState st = block_signature(hx, blk);
      if (!st.ok) {
        ok = false;
        break;
      }
      total.n_pos += st.sig.n_pos;
      total.n_neg += st.sig.n_neg;
      total.n_zero += st.sig.n_zero;
    }
    if (ok) return total;
  }
  throw std::runtime_error(
      "hessian_signature_at: could not certify eigenvalue signs "
      "(an eigenvalue interval straddles 0); try a smaller t");
}

int suspend_index(int curve_index, int s) {
  if (curve_index < 0 || curve_index > 2)
    throw std::invalid_argument("suspend_index: curve index outside {0,1,2}");
  if (s < 0) throw std::invalid_argument("suspend_index: s < 0");
  return curve_index + s;
}

// ---------------------------------------------------------------------------
// Aggregated report.

namespace {

// Local existence/uniqueness certificate around a closed-form point.
bool certify_local(const GradientSystem& sys, CriticalPoint& pt) {
  struct Attempt {
    unsigned bits;
    Rational margin;
  };
  for (auto [bits, margin] : {Attempt{24, Rational(1, 1 << 12)},
                              Attempt{48, Rational(1, 1 << 24)},
                              Attempt{96, Rational(BigInt(1), pow_int(BigInt(2), 48))}}) {
    Box box;
    box.reserve(pt.exact.size());
    for (const auto& c : pt.exact)
      box.push_back(c.enclosure(bits).inflate(margin));
    if (auto k = krawczyk_once(sys, box)) {
      pt.location = refine_enclosure(sys, *k, 16);
      return true;
    }
  }
  return false;
}

bool point_in_box(const std::vector<RealAlg>& point, const Box& box) {
  for (size_t i = 0; i < point.size(); ++i) {
    if (point[i].compare(box[i].lo) < 0) return false;
    if (point[i].compare(box[i].hi) > 0) return false;
  }
  return true;
}

}  // namespace

MorseReport morse_report(const GermDescriptor& d, std::optional<Rational> t0,
                         const MorseReportOptions& opts) {
  MorsificationFamily fam = build_family(d);
  MorseReport report;
  report.germ = d;
  report.t0 = t0 ? *t0 : representative_t(fam);

  MultiPoly ft = family_at(fam, report.t0);
  auto vars = d.spatial_vars();
  GradientSystem sys = make_system(ft, vars);

  report.points = closed_form_points(fam, report.t0);
  report.all_certified = true;
  for (auto& pt : report.points) {
    pt.signature = hessian_signature_at(ft, vars, pt.exact);
    pt.morse_index = pt.signature.n_neg;
    pt.certified = certify_local(sys, pt) && pt.signature.n_zero == 0;
    if (!pt.certified) report.all_certified = false;
  }

  if (opts.run_oracle) {
    Rational half = opts.box_halfwidth;
    // All catalog points at representative t lie strictly inside the default
    // box; if one does not, grow once and note it.
    Box search(vars.size(), Interval(-half, half));
    bool inside = true;
    for (const auto& pt : report.points)
      for (size_t i = 0; i < pt.location.size(); ++i)
        if (!(search[i].lo < pt.location[i].lo &&
              pt.location[i].hi < search[i].hi))
          inside = false;
    if (!inside) {
      report.box_grown = true;
      report.notes += "search box grown to contain a closed-form point; ";
      search.assign(vars.size(), Interval(-half * 2, half * 2));
    }
    CertifyResult oracle = certify_points(ft, vars, search, opts.certify);
    report.oracle_ran = true;
    auto uniques = oracle.unique_zeros();
    report.oracle_unique_zeros = static_cast<int>(uniques.size());
    report.oracle_undecided = static_cast<int>(oracle.undecided.size());
    bool match = uniques.size() == report.points.size() &&
                 oracle.undecided.empty() && !oracle.budget_exhausted;
    if (match) {
      for (const auto& pt : report.points) {
        int hits = 0;
        for (const auto* cert : uniques)
          if (point_in_box(pt.exact, cert->box)) ++hits;
        if (hits != 1) match = false;
      }
    }
    report.closed_form_matches_oracle = match;
  }
  return report;
}

std::string morse_report_to_json(const MorseReport& report) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["germ"] = germ_code(report.germ);
  j["t"] = format_rational(report.t0);
  j["count"] = report.points.size();
  j["all_certified"] = report.all_certified;
  j["oracle_ran"] = report.oracle_ran;
  if (report.oracle_ran) {
    j["oracle_unique_zeros"] = report.oracle_unique_zeros;
    j["oracle_undecided_regions"] = report.oracle_undecided;
    j["closed_form_matches_oracle"] = report.closed_form_matches_oracle;
  }
  j["box_grown"] = report.box_grown;
  if (!report.notes.empty()) j["notes"] = report.notes;
  j["points"] = nlohmann::json::array();
  for (const auto& pt : report.points) {
    nlohmann::json p;
    p["morse_index"] = pt.morse_index;
    p["signature"] = {pt.signature.n_pos, pt.signature.n_neg,
                      pt.signature.n_zero};
    p["certified"] = pt.certified;
    p["method"] =
        pt.source == PointSource::ClosedForm ? "closed_form" : "interval_solver";
    std::vector<std::string> exact, boxes;
    for (const auto& c : pt.exact) exact.push_back(c.str());
    for (const auto& iv : pt.location) boxes.push_back(iv.str());
    p["exact"] = exact;
    p["box"] = boxes;
    j["points"].push_back(std::move(p));
  }
  return j.dump(2);
}

}  // namespace ademf
