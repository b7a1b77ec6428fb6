#include "ademf/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace ademf {

MultiPoly::MultiPoly(std::vector<std::string> variables)
    : vars_(std::move(variables)) {}

MultiPoly MultiPoly::zero(std::vector<std::string> variables) {
  return MultiPoly(std::move(variables));
}

MultiPoly MultiPoly::constant(std::vector<std::string> variables, Rational c) {
  MultiPoly p(std::move(variables));
  if (c != 0) p.terms_[Exponents(p.vars_.size(), 0)] = std::move(c);
  return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> variables,
                              const std::string& name) {
  MultiPoly p(std::move(variables));
  Exponents e(p.vars_.size(), 0);
  e[p.var_index(name)] = 1;
  p.terms_[e] = 1;
  return p;
}

size_t MultiPoly::var_index(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end())
    throw std::invalid_argument("unknown variable: " + name);
  return static_cast<size_t>(it - vars_.begin());
}

int MultiPoly::degree_in(size_t var_idx) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var_idx]);
  return d;
}

int MultiPoly::total_degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_)
    d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

void MultiPoly::add_term(const Exponents& exps, const Rational& coeff) {
  if (exps.size() != vars_.size())
    throw std::invalid_argument("exponent vector length mismatch");
  for (int e : exps)
    if (e < 0) throw std::invalid_argument("negative exponent");
  if (coeff == 0) return;
  auto [it, inserted] = terms_.emplace(exps, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  if (vars_ != o.vars_)
    throw std::invalid_argument("polynomial variable lists differ");
  MultiPoly out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, c);
  return out;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  if (vars_ != o.vars_)
    throw std::invalid_argument("polynomial variable lists differ");
  MultiPoly out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
  return out;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  if (vars_ != o.vars_)
    throw std::invalid_argument("polynomial variable lists differ");
  MultiPoly out(vars_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      Exponents e(vars_.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
      out.add_term(e, c1 * c2);
    }
  return out;
}

MultiPoly MultiPoly::operator-() const { return scaled(Rational(-1)); }

MultiPoly MultiPoly::scaled(const Rational& c) const {
  MultiPoly out(vars_);
  if (c == 0) return out;
  for (const auto& [e, coeff] : terms_) out.terms_[e] = coeff * c;
  return out;
}

Rational MultiPoly::evaluate(const std::vector<Rational>& point) const {
  if (point.size() != vars_.size())
    throw std::invalid_argument("evaluation point dimension mismatch");
  Rational acc(0);
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i]) term *= pow_int(point[i], static_cast<unsigned>(e[i]));
    acc += term;
  }
  return acc;
}

Interval MultiPoly::eval_interval(const Box& box) const {
  if (box.size() != vars_.size())
    throw std::invalid_argument("evaluation box dimension mismatch");
  Interval acc(Rational(0));
  for (const auto& [e, c] : terms_) {
    Interval term{Rational(1)};
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i]) term = term * box[i].pow(static_cast<unsigned>(e[i]));
    acc = acc + term * c;
  }
  return acc;
}

Interval MultiPoly::eval_interval_bisect(const Box& box, unsigned depth) const {
  if (depth == 0) return eval_interval(box);
  // Bisect the widest coordinate and hull the halves.
  size_t widest = 0;
  Rational w(-1);
  for (size_t i = 0; i < box.size(); ++i)
    if (box[i].width() > w) {
      w = box[i].width();
      widest = i;
    }
  if (w == 0) return eval_interval(box);
  Rational m = box[widest].mid();
  Box left = box, right = box;
  left[widest] = Interval(box[widest].lo, m);
  right[widest] = Interval(m, box[widest].hi);
  return eval_interval_bisect(left, depth - 1)
      .hull(eval_interval_bisect(right, depth - 1));
}

MultiPoly MultiPoly::partial(const std::string& var) const {
  size_t idx = var_index(var);
  MultiPoly out(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[idx] == 0) continue;
    Exponents d = e;
    d[idx] -= 1;
    out.add_term(d, c * e[idx]);
  }
  return out;
}

std::vector<MultiPoly> MultiPoly::jacobian(
    const std::vector<std::string>& vars) const {
  if (vars.empty())
    throw std::invalid_argument("jacobian over empty variable subset");
  std::vector<MultiPoly> row;
  row.reserve(vars.size());
  for (const auto& v : vars) row.push_back(partial(v));
  return row;
}

std::vector<std::vector<MultiPoly>> MultiPoly::hessian(
    const std::vector<std::string>& vars) const {
  if (vars.empty())
    throw std::invalid_argument("hessian over empty variable subset");
  std::vector<std::vector<MultiPoly>> mat;
  for (const auto& vi : vars) {
    MultiPoly pi = partial(vi);
    std::vector<MultiPoly> row;
    for (const auto& vj : vars) row.push_back(pi.partial(vj));
    mat.push_back(std::move(row));
  }
  return mat;
}

MultiPoly MultiPoly::substitute(const std::string& var,
                                const Rational& value) const {
  size_t idx = var_index(var);
  std::vector<std::string> new_vars;
  for (size_t i = 0; i < vars_.size(); ++i)
    if (i != idx) new_vars.push_back(vars_[i]);
  MultiPoly out(new_vars);
  for (const auto& [e, c] : terms_) {
    Exponents ne;
    ne.reserve(new_vars.size());
    for (size_t i = 0; i < e.size(); ++i)
      if (i != idx) ne.push_back(e[i]);
    Rational coeff = c;
    if (e[idx]) coeff *= pow_int(value, static_cast<unsigned>(e[idx]));
    out.add_term(ne, coeff);
  }
  return out;
}

namespace {

std::string monomial_str(const std::vector<std::string>& vars,
                         const MultiPoly::Exponents& e, const Rational& coeff,
                         bool leading) {
  Rational c = coeff;
  std::string out;
  if (!leading)
    out += c < 0 ? " - " : " + ";
  else if (c < 0)
    out += "-";
  if (c < 0) c = -c;

  std::string varpart;
  for (size_t i = 0; i < vars.size(); ++i) {
    if (e[i] == 0) continue;
    if (!varpart.empty()) varpart += "*";
    varpart += vars[i];
    if (e[i] > 1) varpart += "^" + std::to_string(e[i]);
  }
  if (varpart.empty()) return out + format_rational(c);
  if (c != 1) out += format_rational(c) + "*";
  return out + varpart;
}

}  // namespace

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  // Lex-descending on exponent vectors, matching the catalog's written order
  // (x-powers first, then y, then the tail, with t last).
  std::vector<const TermMap::value_type*> ordered;
  for (const auto& kv : terms_) ordered.push_back(&kv);
  std::sort(ordered.begin(), ordered.end(),
            [](auto* a, auto* b) { return a->first > b->first; });
  std::string out;
  bool leading = true;
  for (auto* kv : ordered) {
    out += monomial_str(vars_, kv->first, kv->second, leading);
    leading = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parser: expr := term (('+'|'-') term)*, term := factor ('*' factor)*,
// factor := rational | var ['^' int] | '(' expr ')'.

namespace {

struct Parser {
  const std::vector<std::string>& vars;
  const std::string& text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("polynomial parse error at offset " +
                                std::to_string(pos) + ": " + what);
  }

  std::string read_integer() {
    skip_ws();
    std::string digits;
    while (pos < text.size() && isdigit(static_cast<unsigned char>(text[pos])))
      digits += text[pos++];
    if (digits.empty()) fail("expected integer");
    return digits;
  }

  Rational parse_number() {
    std::string num = read_integer();
    if (eat('/')) return Rational(BigInt(num), BigInt(read_integer()));
    return Rational(BigInt(num));
  }

  MultiPoly parse_factor() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    char c = text[pos];
    if (c == '(') {
      ++pos;
      MultiPoly inner = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return maybe_power(inner);
    }
    if (isdigit(static_cast<unsigned char>(c)))
      return maybe_power(MultiPoly::constant(vars, parse_number()));
    if (isalpha(static_cast<unsigned char>(c))) {
      std::string name;
      while (pos < text.size() &&
             (isalnum(static_cast<unsigned char>(text[pos])) ||
              text[pos] == '_'))
        name += text[pos++];
      try {
        return maybe_power(MultiPoly::variable(vars, name));
      } catch (const std::invalid_argument&) {
        fail("unknown variable '" + name + "'");
      }
    }
    fail("unexpected character");
  }

  MultiPoly maybe_power(MultiPoly base) {
    if (!eat('^')) return base;
    skip_ws();
    bool neg = eat('-');
    unsigned e = static_cast<unsigned>(std::stoul(read_integer()));
    if (neg) fail("negative exponent");
    MultiPoly out = MultiPoly::constant(vars, 1);
    for (unsigned i = 0; i < e; ++i) out = out * base;
    return out;
  }

  MultiPoly parse_term() {
    MultiPoly acc = parse_factor();
    while (eat('*')) acc = acc * parse_factor();
    return acc;
  }

  MultiPoly parse_expr() {
    bool neg = false;
    if (peek() == '-') {
      ++pos;
      neg = true;
    } else if (peek() == '+') {
      ++pos;
    }
    MultiPoly acc = parse_term();
    if (neg) acc = -acc;
    for (;;) {
      char c = peek();
      if (c == '+') {
        ++pos;
        acc = acc + parse_term();
      } else if (c == '-') {
        ++pos;
        acc = acc - parse_term();
      } else {
        break;
      }
    }
    return acc;
  }
};

}  // namespace

MultiPoly parse_poly(std::vector<std::string> variables,
                     const std::string& text) {
  Parser p{variables, text};
  MultiPoly out = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return out;
}

}  // namespace ademf
