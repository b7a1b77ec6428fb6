#include <benchmark/benchmark.h>

#include "ademf/critical.hpp"
#include "ademf/mesh.hpp"
#include "ademf/verify.hpp"

using namespace ademf;

namespace {

void BM_EvalInterval(benchmark::State& state) {
  MultiPoly f = build_germ(parse_germ_code("E7s1n3"));
  Box box(f.variables().size(), Interval(Rational(-1, 2), Rational(1, 2)));
  for (auto _ : state) benchmark::DoNotOptimize(f.eval_interval(box));
}
BENCHMARK(BM_EvalInterval);

void BM_CertifyCurveBox(benchmark::State& state) {
  auto fam = build_family(parse_germ_code("D6-s0n1"));
  MultiPoly ft = family_at(fam, Rational(1, 2));
  Box box(2, Interval(Rational(-2), Rational(2)));
  for (auto _ : state) {
    auto result = certify_points(ft, {"x", "y"}, box);
    benchmark::DoNotOptimize(result.certificates.size());
  }
}
BENCHMARK(BM_CertifyCurveBox);

void BM_MorseReport(benchmark::State& state) {
  GermDescriptor d = parse_germ_code("E7s2n4");
  MorseReportOptions opts;
  opts.run_oracle = false;
  for (auto _ : state) {
    auto report = morse_report(d, std::nullopt, opts);
    benchmark::DoNotOptimize(report.points.size());
  }
}
BENCHMARK(BM_MorseReport);

void BM_MarchingSquares(benchmark::State& state) {
  FibreSpec spec;
  spec.polynomial = build_germ(parse_germ_code("A3+s0n1"));
  spec.epsilon = Rational(1, 2);
  spec.eta = Rational(1, 256);
  spec.resolution = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto mesh = mesh_fibre(spec);
    benchmark::DoNotOptimize(mesh.complex.cell_count(1));
  }
}
BENCHMARK(BM_MarchingSquares)->Arg(128)->Arg(512);

void BM_MarchingCubesHomology(benchmark::State& state) {
  FibreSpec spec;
  spec.polynomial = build_germ(parse_germ_code("A3+s1n2"));
  spec.epsilon = Rational(1, 2);
  spec.eta = Rational(1, 256);
  spec.resolution = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto mesh = mesh_fibre(spec);
    auto h = homology(mesh.complex);
    benchmark::DoNotOptimize(h.betti);
  }
}
BENCHMARK(BM_MarchingCubesHomology)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
