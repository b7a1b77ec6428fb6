// Command line front end: prints germs, predictions, certified critical
// point reports and mesh verification verdicts for the ADE catalog.
//
// Exact numeric inputs are fractions ("1/16"), never decimals, so values
// stay exact end to end.

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ademf/critical.hpp"
#include "ademf/germ.hpp"
#include "ademf/mesh.hpp"
#include "ademf/morsify.hpp"
#include "ademf/predict.hpp"
#include "ademf/verify.hpp"

namespace {

using namespace ademf;

int worker_count() {
  if (const char* env = std::getenv("ADEMF_WORKERS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// Deterministic catalog fan-out: results land in slots indexed by input
// position regardless of scheduling.
template <typename F>
void parallel_for(size_t count, F&& body) {
  int workers = worker_count();
  if (workers <= 1 || count <= 1) {
    for (size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  auto run = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= count) return;
      body(i);
    }
  };
  for (int w = 0; w < workers; ++w) pool.emplace_back(run);
  for (auto& t : pool) t.join();
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

std::string verdict_word(Verdict v) {
  switch (v) {
    case Verdict::Match: return "match";
    case Verdict::Mismatch: return "mismatch";
    case Verdict::UnresolvedExplored: return "unresolved_explored";
  }
  return "?";
}

struct CommonOpts {
  std::string out_path;
  std::string format = "json";
};

int cmd_germ(const std::string& code) {
  GermDescriptor d = parse_germ_code(code);
  std::cout << build_germ(d).str() << "\n";
  return 0;
}

int cmd_morsify(const std::string& code, const CommonOpts& common) {
  MorsificationFamily fam = build_family(parse_germ_code(code));
  write_output(family_to_json(fam), common.out_path);
  return 0;
}

int cmd_predict(const std::string& code, bool all, int kmax, int nmax,
                const CommonOpts& common) {
  if (all) {
    TableOptions opts{kmax, nmax};
    std::string text = common.format == "md" ? render_table_markdown(opts)
                                             : render_table_csv(opts);
    write_output(text, common.out_path);
    return 0;
  }
  GermDescriptor d = parse_germ_code(code);
  Prediction p = predict_table(d);
  if (common.format == "json") {
    write_output(prediction_to_json(d, p), common.out_path);
  } else {
    std::string line =
        p.status == PredictionStatus::Unresolved
            ? germ_code(d) + ": unresolved"
            : germ_code(d) + ": " + p.beta_plus.str() + ", " +
                  p.beta_minus.str();
    write_output(line + "\n", common.out_path);
  }
  return 0;
}

int cmd_critical(const std::string& code, const std::string& t_str,
                 bool no_oracle, const CommonOpts& common) {
  GermDescriptor d = parse_germ_code(code);
  std::optional<Rational> t0;
  if (!t_str.empty()) t0 = parse_rational(t_str);
  MorseReportOptions opts;
  opts.run_oracle = !no_oracle;
  MorseReport report = morse_report(d, t0, opts);
  write_output(morse_report_to_json(report), common.out_path);
  bool trouble = !report.all_certified ||
                 (report.oracle_ran && !report.closed_form_matches_oracle);
  return trouble ? 1 : 0;
}

int cmd_verify(const std::string& code, const std::string& side_str,
               const std::string& eps, const std::string& eta, int res,
               const CommonOpts& common) {
  GermDescriptor d = parse_germ_code(code);
  VerifyParams params;
  if (!eps.empty()) params.epsilon = parse_rational(eps);
  if (!eta.empty()) params.eta = parse_rational(eta);
  if (res > 0) params.resolution = res;

  if (!side_str.empty()) {
    // single-side verdict against the published value for that side
    Side side = side_str == "minus" ? Side::Minus : Side::Plus;
    BettiReport report = verify_germ(d, side, params);
    Prediction p = predict_table(d);
    Verdict verdict;
    std::string expected;
    if (p.status == PredictionStatus::Unresolved) {
      verdict = Verdict::UnresolvedExplored;
    } else {
      const PoincarePolynomial& want =
          side == Side::Plus ? p.beta_plus : p.beta_minus;
      expected = want.str();
      verdict = report.stable && report.poincare() == want
                    ? Verdict::Match
                    : Verdict::Mismatch;
    }
    nlohmann::json j = nlohmann::json::parse(betti_report_to_json(report));
    j["verdict"] = verdict_word(verdict);
    if (!expected.empty()) j["predicted"] = expected;
    write_output(j.dump(2), common.out_path);
    std::cerr << germ_code(d) << " " << side_str << ": "
              << verdict_word(verdict) << " (" << report.poincare().str()
              << ")\n";
    return verdict == Verdict::Mismatch ? 1 : 0;
  }
  VerificationVerdict v = compare(d, params);
  write_output(verdict_to_json(v), common.out_path);
  std::cerr << germ_code(d) << ": " << verdict_word(v.verdict) << "\n";
  return v.verdict == Verdict::Mismatch ? 1 : 0;
}

int cmd_table(const std::string& which, int kmax, int nmax,
              const CommonOpts& common) {
  TableOptions opts;
  opts.k_max = kmax;
  opts.n_max = which == "theorem" ? 1 : nmax;
  std::string text = common.format == "csv" ? render_table_csv(opts)
                                            : render_table_markdown(opts);
  write_output(text, common.out_path);
  return 0;
}

int cmd_plot_svg(const std::string& code, const std::string& side_str,
                 const std::string& eps, const std::string& eta, int res,
                 const CommonOpts& common) {
  GermDescriptor d = parse_germ_code(code);
  if (d.n != 1)
    throw std::invalid_argument("plot-svg draws plane curves only (n = 1)");
  FibreSpec spec;
  spec.polynomial = build_germ(d);
  spec.side = side_str == "minus" ? Side::Minus : Side::Plus;
  spec.epsilon = eps.empty() ? Rational(1, 2) : parse_rational(eps);
  spec.eta = eta.empty() ? default_eta(d, spec.epsilon) : parse_rational(eta);
  spec.resolution =
      res > 0 ? res : default_resolution(d, spec.epsilon, spec.eta);
  MeshResult mesh = mesh_fibre(spec);
  std::string path = common.out_path.empty()
                         ? germ_code(d) + (spec.side == Side::Plus ? "_plus"
                                                                   : "_minus") +
                               ".svg"
                         : common.out_path;
  write_output(fibre_svg(spec, mesh), path);
  std::cerr << "wrote " << path << "\n";
  return 0;
}

int cmd_verify_all(int kmax, int nmax, const CommonOpts& common) {
  auto catalog = enumerate_catalog(kmax, nmax);
  std::vector<GermDescriptor> meshable;
  for (const auto& d : catalog)
    if (d.n + 1 <= 3) meshable.push_back(d);
  std::vector<VerificationVerdict> verdicts(meshable.size());
  parallel_for(meshable.size(),
               [&](size_t i) { verdicts[i] = compare(meshable[i]); });
  std::ostringstream csv;
  csv << "schema_version,germ_code,verdict,beta_plus,beta_minus,stable\n";
  bool any_mismatch = false;
  for (const auto& v : verdicts) {
    csv << 1 << ',' << germ_code(v.germ) << ',' << verdict_word(v.verdict)
        << ',' << v.plus.poincare().str() << ',' << v.minus.poincare().str()
        << ',' << (v.plus.stable && v.minus.stable ? "true" : "false") << "\n";
    if (v.verdict == Verdict::Mismatch) any_mismatch = true;
  }
  write_output(csv.str(), common.out_path);
  return any_mismatch ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Real Milnor fibre toolkit for the ADE catalog: germs, morsifications, "
      "certified critical points, Betti predictions and mesh verification"};
  app.require_subcommand(1);

  CommonOpts common;
  std::string code, t_str, side, which, eps, eta;
  int res = 0, kmax = 9, nmax = 3;
  bool all = false, no_oracle = false;

  auto add_common = [&](CLI::App* sub, bool with_format = true) {
    sub->add_option("-o,--out", common.out_path, "write output to a file");
    if (with_format)
      sub->add_option("--format", common.format, "json, csv or md");
  };

  auto* germ = app.add_subcommand("germ", "print the catalog polynomial");
  germ->add_option("code", code, "germ code, e.g. A3+s0n1")->required();

  auto* morsify =
      app.add_subcommand("morsify", "print the deformation family as JSON");
  morsify->add_option("code", code)->required();
  add_common(morsify, false);

  auto* predict =
      app.add_subcommand("predict", "published Poincare polynomials");
  predict->add_option("code", code);
  predict->add_flag("--all", all, "whole catalog");
  predict->add_option("--kmax", kmax);
  predict->add_option("--nmax", nmax);
  add_common(predict);

  auto* critical = app.add_subcommand(
      "critical", "certified critical point report of the morsification");
  critical->add_option("code", code)->required();
  critical->add_option("-t,--t", t_str,
                       "deformation parameter as an exact fraction");
  critical->add_flag("--no-oracle", no_oracle,
                     "skip the independent interval-solver sweep");
  add_common(critical, false);

  auto* verify = app.add_subcommand(
      "verify", "mesh the real fibre and compare with the prediction");
  verify->add_option("code", code);
  verify->add_option("--side", side, "plus or minus (default: both + verdict)");
  verify->add_option("--eps", eps, "ball radius (fraction)");
  verify->add_option("--eta", eta, "level (fraction)");
  verify->add_option("--res", res, "grid resolution");
  verify->add_flag("--all", all, "sweep every meshable catalog germ");
  verify->add_option("--kmax", kmax);
  verify->add_option("--nmax", nmax);
  add_common(verify, false);

  auto* table = app.add_subcommand("table", "render the result tables");
  table->add_option("which", which, "theorem (n = 1) or corollary")
      ->required()
      ->check(CLI::IsMember({"theorem", "corollary"}));
  table->add_option("--kmax", kmax);
  table->add_option("--nmax", nmax);
  add_common(table);

  auto* plot = app.add_subcommand("plot-svg", "draw a plane curve fibre");
  plot->add_option("code", code)->required();
  plot->add_option("--side", side, "plus or minus");
  plot->add_option("--eps", eps);
  plot->add_option("--eta", eta);
  plot->add_option("--res", res);
  add_common(plot, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (germ->parsed()) return cmd_germ(code);
    if (morsify->parsed()) return cmd_morsify(code, common);
    if (predict->parsed()) {
      if (!all && code.empty())
        throw std::invalid_argument("predict needs a germ code or --all");
      return cmd_predict(code, all, kmax, nmax, common);
    }
    if (critical->parsed())
      return cmd_critical(code, t_str, no_oracle, common);
    if (verify->parsed()) {
      if (all) return cmd_verify_all(kmax, nmax, common);
      if (code.empty())
        throw std::invalid_argument("verify needs a germ code or --all");
      return cmd_verify(code, side, eps, eta, res, common);
    }
    if (table->parsed()) return cmd_table(which, kmax, nmax, common);
    if (plot->parsed()) return cmd_plot_svg(code, side, eps, eta, res, common);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
