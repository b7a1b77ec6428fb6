#include "ademf/germ.hpp"

#include <stdexcept>

namespace ademf {

std::string family_str(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::D: return "D";
    case Family::E6: return "E6";
    case Family::E7: return "E7";
    case Family::E8: return "E8";
  }
  return "?";
}

std::vector<std::string> GermDescriptor::spatial_vars() const {
  std::vector<std::string> vars = {"x", "y"};
  for (int i = 1; i <= n - 1; ++i) vars.push_back("x" + std::to_string(i));
  return vars;
}

std::vector<std::string> validate(const GermDescriptor& d) {
  std::vector<std::string> errors;
  if (d.n < 1) errors.push_back("n must be >= 1");
  if (d.s < 0) errors.push_back("s must be >= 0");
  if (d.t_pos < 0) errors.push_back("t must be >= 0");
  if (d.t_pos + d.s != d.n - 1)
    errors.push_back("t + s must equal n - 1");
  if (d.family == Family::A && d.k < 2)
    errors.push_back("family A requires k >= 2");
  if (d.family == Family::D && d.k < 4)
    errors.push_back("family D requires k >= 4");
  return errors;
}

bool is_valid(const GermDescriptor& d) { return validate(d).empty(); }

namespace {

void require_valid(const GermDescriptor& d) {
  auto errors = validate(d);
  if (errors.empty()) return;
  std::string msg = "invalid germ descriptor:";
  for (const auto& e : errors) msg += " " + e + ";";
  throw std::invalid_argument(msg);
}

// Adds the quadratic tail sum x_i^2 (i <= t_pos) - sum x_j^2 (j > t_pos).
void add_tail(MultiPoly& p, const GermDescriptor& d) {
  const auto& vars = p.variables();
  for (int i = 1; i <= d.n - 1; ++i) {
    MultiPoly::Exponents e(vars.size(), 0);
    e[1 + static_cast<size_t>(i)] = 2;
    p.add_term(e, i <= d.t_pos ? Rational(1) : Rational(-1));
  }
}

}  // namespace

MultiPoly build_germ(const GermDescriptor& d) {
  require_valid(d);
  auto vars = d.spatial_vars();
  MultiPoly p(vars);
  auto term = [&](int ex, int ey, Rational c) {
    MultiPoly::Exponents e(vars.size(), 0);
    e[0] = ex;
    e[1] = ey;
    p.add_term(e, c);
  };
  Rational sgn = d.sign == Sign::Plus ? 1 : -1;
  switch (d.family) {
    case Family::A:  // x^(k+1) +- y^2
      term(d.k + 1, 0, 1);
      term(0, 2, sgn);
      break;
    case Family::D:  // x^2 y +- y^(k-1)
      term(2, 1, 1);
      term(0, d.k - 1, sgn);
      break;
    case Family::E6:  // x^3 +- y^4
      term(3, 0, 1);
      term(0, 4, sgn);
      break;
    case Family::E7:  // x^3 + x y^3
      term(3, 0, 1);
      term(1, 3, 1);
      break;
    case Family::E8:  // x^3 + y^5
      term(3, 0, 1);
      term(0, 5, 1);
      break;
  }
  add_tail(p, d);
  return p;
}

std::vector<GermDescriptor> enumerate_catalog(int k_max, int n_max) {
  if (k_max < 4) throw std::invalid_argument("enumerate_catalog: k_max < 4");
  if (n_max < 1) throw std::invalid_argument("enumerate_catalog: n_max < 1");
  std::vector<GermDescriptor> out;
  auto push_signed = [&](Family fam, int k, int n, int s) {
    for (Sign sign : {Sign::Plus, Sign::Minus}) {
      GermDescriptor d{fam, k, sign, n, s, n - 1 - s};
      out.push_back(d);
    }
  };
  for (int n = 1; n <= n_max; ++n)
    for (int s = 0; s <= n - 1; ++s) {
      for (int k = 2; k <= k_max; ++k) push_signed(Family::A, k, n, s);
      for (int k = 4; k <= k_max; ++k) push_signed(Family::D, k, n, s);
      push_signed(Family::E6, 0, n, s);
      out.push_back(GermDescriptor{Family::E7, 0, Sign::Plus, n, s, n - 1 - s});
      out.push_back(GermDescriptor{Family::E8, 0, Sign::Plus, n, s, n - 1 - s});
    }
  return out;
}

std::string germ_code(const GermDescriptor& d) {
  std::string code = family_str(d.family);
  if (d.has_k()) code += std::to_string(d.k);
  if (d.has_sign()) code += d.sign == Sign::Plus ? "+" : "-";
  code += "s" + std::to_string(d.s) + "n" + std::to_string(d.n);
  return code;
}

GermDescriptor parse_germ_code(const std::string& code) {
  GermDescriptor d;
  size_t pos = 0;
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("bad germ code '" + code + "': " + what);
  };
  auto read_int = [&]() {
    size_t start = pos;
    if (pos < code.size() && code[pos] == '-') ++pos;
    while (pos < code.size() && isdigit(static_cast<unsigned char>(code[pos])))
      ++pos;
    if (pos == start) fail("expected integer");
    return std::stoi(code.substr(start, pos - start));
  };

  if (pos >= code.size()) fail("empty");
  if (code[pos] == 'A') {
    d.family = Family::A;
    ++pos;
    d.k = read_int();
  } else if (code[pos] == 'D') {
    d.family = Family::D;
    ++pos;
    d.k = read_int();
  } else if (code[pos] == 'E') {
    ++pos;
    int which = read_int();
    if (which == 6)
      d.family = Family::E6;
    else if (which == 7)
      d.family = Family::E7;
    else if (which == 8)
      d.family = Family::E8;
    else
      fail("unknown E family");
  } else {
    fail("unknown family");
  }

  if (d.has_sign()) {
    if (pos >= code.size() || (code[pos] != '+' && code[pos] != '-'))
      fail("expected sign '+' or '-'");
    d.sign = code[pos] == '+' ? Sign::Plus : Sign::Minus;
    ++pos;
  }
  if (pos >= code.size() || code[pos] != 's') fail("expected 's'");
  ++pos;
  d.s = read_int();
  if (pos >= code.size() || code[pos] != 'n') fail("expected 'n'");
  ++pos;
  d.n = read_int();
  if (pos != code.size()) fail("trailing characters");
  d.t_pos = d.n - 1 - d.s;

  auto errors = validate(d);
  if (!errors.empty()) {
    std::string msg;
    for (const auto& e : errors) msg += (msg.empty() ? "" : "; ") + e;
    throw std::invalid_argument("invalid germ '" + code + "': " + msg);
  }
  return d;
}

}  // namespace ademf
