#include "ademf/predict.hpp"

#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ademf {

PoincarePolynomial PoincarePolynomial::empty() {
  PoincarePolynomial p;
  p.empty_ = true;
  return p;
}

PoincarePolynomial PoincarePolynomial::one() { return constant(1); }

PoincarePolynomial PoincarePolynomial::one_plus_u_pow(int e) {
  if (e < 0) throw std::invalid_argument("negative exponent");
  PoincarePolynomial p;
  p.coeffs_[0] += 1;
  p.coeffs_[e] += 1;
  return p;
}

PoincarePolynomial PoincarePolynomial::constant(int value) {
  if (value <= 0) throw std::invalid_argument("coefficients must be positive");
  PoincarePolynomial p;
  p.coeffs_[0] = value;
  return p;
}

PoincarePolynomial PoincarePolynomial::from_betti(
    const std::vector<int>& betti) {
  PoincarePolynomial p;
  bool any = false;
  for (size_t i = 0; i < betti.size(); ++i) {
    if (betti[i] < 0) throw std::invalid_argument("negative Betti number");
    if (betti[i] > 0) {
      p.coeffs_[static_cast<int>(i)] = betti[i];
      any = true;
    }
  }
  p.empty_ = !any;
  return p;
}

int PoincarePolynomial::coefficient(int degree) const {
  auto it = coeffs_.find(degree);
  return it == coeffs_.end() ? 0 : it->second;
}

int PoincarePolynomial::eval_at_one() const {
  int total = 0;
  for (const auto& [d, c] : coeffs_) total += c;
  return total;
}

std::string PoincarePolynomial::str() const {
  if (empty_ || coeffs_.empty()) return "0";
  std::string out;
  for (const auto& [d, c] : coeffs_) {
    if (!out.empty()) out += "+";
    if (d == 0) {
      out += std::to_string(c);
    } else {
      if (c != 1) out += std::to_string(c) + "*";
      out += d == 1 ? "u" : "u^" + std::to_string(d);
    }
  }
  return out;
}

PoincarePolynomial PoincarePolynomial::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!isspace(static_cast<unsigned char>(c))) s += c;
  if (s == "0") return empty();
  PoincarePolynomial p;
  size_t pos = 0;
  auto fail = [&]() {
    throw std::invalid_argument("bad Poincare polynomial: " + text);
  };
  while (pos < s.size()) {
    if (s[pos] == '+') ++pos;
    int coeff = 1;
    if (isdigit(static_cast<unsigned char>(s[pos]))) {
      size_t start = pos;
      while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos])))
        ++pos;
      coeff = std::stoi(s.substr(start, pos - start));
      if (pos < s.size() && s[pos] == '*') ++pos;
    }
    int degree = 0;
    if (pos < s.size() && s[pos] == 'u') {
      ++pos;
      degree = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        size_t start = pos;
        while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos])))
          ++pos;
        if (start == pos) fail();
        degree = std::stoi(s.substr(start, pos - start));
      }
    }
    if (coeff <= 0) fail();
    p.coeffs_[degree] += coeff;
  }
  if (p.coeffs_.empty()) fail();
  return p;
}

// ---------------------------------------------------------------------------

namespace {

bool unresolved_case(const GermDescriptor& d) {
  return d.family == Family::D && d.sign == Sign::Minus && d.k % 2 == 0 &&
         d.n >= 2;
}

Prediction resolved(PoincarePolynomial plus, PoincarePolynomial minus) {
  return Prediction{std::move(plus), std::move(minus),
                    PredictionStatus::Resolved, Provenance::Table};
}

}  // namespace

Prediction predict_table(const GermDescriptor& d) {
  auto errors = validate(d);
  if (!errors.empty())
    throw std::invalid_argument("predict_table: invalid descriptor");
  using P = PoincarePolynomial;
  if (unresolved_case(d)) {
    Prediction p;
    p.status = PredictionStatus::Unresolved;
    p.provenance = Provenance::Table;
    return p;
  }
  const int n = d.n, s = d.s;
  const bool odd_k = d.k % 2 == 1;
  switch (d.family) {
    case Family::A:
      if (d.sign == Sign::Plus) {
        if (!odd_k) return resolved(P::one(), P::one());
        return resolved(P::one_plus_u_pow(n - s),
                        s == 0 ? P::empty() : P::one_plus_u_pow(s - 1));
      }
      if (!odd_k) return resolved(P::one(), P::one());
      return resolved(P::one_plus_u_pow(n - s - 1), P::one_plus_u_pow(s));
    case Family::D:
      if (d.sign == Sign::Plus) {
        if (!odd_k) return resolved(P::one(), P::one());
        return resolved(P::one_plus_u_pow(n - s - 1), P::one_plus_u_pow(s));
      }
      if (odd_k)
        return resolved(P::one_plus_u_pow(n - s - 1), P::one_plus_u_pow(s));
      // D minus, even k, n = 1: the curve table value.
      return resolved(P::constant(3), P::constant(3));
    case Family::E6:
    case Family::E8:
      return resolved(P::one(), P::one());
    case Family::E7:
      return resolved(P::one_plus_u_pow(n - s - 1), P::one_plus_u_pow(s));
  }
  throw std::logic_error("unreachable");
}

Prediction betti_from_morse(const MorseReport& report, int n, int s) {
  if (!report.all_certified)
    throw std::invalid_argument("betti_from_morse: uncertified report");
  (void)s;
  using P = PoincarePolynomial;
  Prediction p;
  p.provenance = Provenance::MorseRule;
  const auto& pts = report.points;
  if (pts.empty()) {
    p.beta_plus = P::one();
    p.beta_minus = P::one();
    return p;
  }
  if (pts.size() == 1) {
    int l = pts[0].morse_index;
    p.beta_plus = P::one_plus_u_pow(n - l);
    p.beta_minus = l == 0 ? P::empty() : P::one_plus_u_pow(l - 1);
    return p;
  }
  if (pts.size() == 2 && n == 1 && pts[0].morse_index == 1 &&
      pts[1].morse_index == 1) {
    // wedge of two 0-spheres; no extrapolation beyond this configuration
    p.beta_plus = P::constant(3);
    p.beta_minus = P::constant(3);
    return p;
  }
  p.status = PredictionStatus::Unresolved;
  return p;
}

// ---------------------------------------------------------------------------

namespace {

std::string status_str(const Prediction& p) {
  return p.status == PredictionStatus::Resolved ? "resolved" : "unresolved";
}

std::string beta_cell(const Prediction& p, bool plus) {
  if (p.status == PredictionStatus::Unresolved) return "?";
  return plus ? p.beta_plus.str() : p.beta_minus.str();
}

}  // namespace

std::string render_table_csv(const TableOptions& opts) {
  std::ostringstream out;
  out << "schema_version,germ_code,n,s,beta_plus,beta_minus,status,provenance\n";
  for (const auto& d : enumerate_catalog(opts.k_max, opts.n_max)) {
    Prediction p = predict_table(d);
    out << 1 << ',' << germ_code(d) << ',' << d.n << ',' << d.s << ','
        << beta_cell(p, true) << ',' << beta_cell(p, false) << ','
        << status_str(p) << ",table\n";
  }
  return out.str();
}

std::string render_table_markdown(const TableOptions& opts) {
  std::ostringstream out;
  out << "| germ | n | s | beta+ | beta- | status |\n";
  out << "|------|---|---|-------|-------|--------|\n";
  for (const auto& d : enumerate_catalog(opts.k_max, opts.n_max)) {
    Prediction p = predict_table(d);
    out << "| " << germ_code(d) << " | " << d.n << " | " << d.s << " | "
        << beta_cell(p, true) << " | " << beta_cell(p, false) << " | "
        << status_str(p) << " |\n";
  }
  return out.str();
}

std::string prediction_to_json(const GermDescriptor& d, const Prediction& p) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["germ"] = germ_code(d);
  j["n"] = d.n;
  j["s"] = d.s;
  j["status"] = status_str(p);
  j["provenance"] =
      p.provenance == Provenance::Table ? "table" : "morse_rule";
  if (p.status == PredictionStatus::Resolved) {
    j["beta_plus"] = p.beta_plus.str();
    j["beta_minus"] = p.beta_minus.str();
    j["beta_plus_empty"] = p.beta_plus.is_empty();
    j["beta_minus_empty"] = p.beta_minus.is_empty();
  }
  return j.dump(2);
}

}  // namespace ademf
