#include <benchmark/benchmark.h>

#include <numbers>

#include "mqdtft/io.hpp"
#include "mqdtft/mqdt.hpp"
#include "mqdtft/shift_fit.hpp"
#include "mqdtft/special.hpp"
#include "mqdtft/trap.hpp"
#include "mqdtft/vdw.hpp"

using namespace mqdtft;

namespace {

const Session& session() {
  static const Session s = [] {
    auto cfg = parse_run_config(R"({"classification": {"overrides": [{"eigenchannel": [1, -1, 2, -2], "class": "ES"}]}})");
    return make_session(cfg);
  }();
  return s;
}

double mu_kg() {
  const auto& s = session();
  return reduced_mass(s.pair.first, s.pair.second) * s.data.constants.atomic_mass_unit;
}

void BM_Hyp2F1UnitCircle(benchmark::State& state) {
  const double x = -3.7 - 0.01 * static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hyp2f1_unit_circle(x, std::numbers::pi / 3));
}
BENCHMARK(BM_Hyp2F1UnitCircle)->Arg(0)->Arg(50);

void BM_BigF(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(big_f(-0.4, n));
}
BENCHMARK(BM_BigF)->Arg(1)->Arg(6)->Arg(10);

void BM_AToEnergy(benchmark::State& state) {
  const auto trap = make_trap_khz(165, 27, mu_kg(), session().data.constants);
  const double a = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(a_to_energy(a, trap));
}
BENCHMARK(BM_AToEnergy)->Arg(-300)->Arg(50)->Arg(315);

void BM_ChiC(benchmark::State& state) {
  const auto& s = session();
  const double gap = static_cast<double>(state.range(0)) / 1000.0;
  const auto e = scaled_energy(gap, s.scales, s.data.constants);
  for (auto _ : state) benchmark::DoNotOptimize(chi_c(e, s.chi.numeric));
}
BENCHMARK(BM_ChiC)->Arg(3799)->Arg(6835)->Unit(benchmark::kMillisecond);

void BM_ScatteringLengthConfiguredChi(benchmark::State& state) {
  const auto& s = session();
  const FragChannel entrance{HalfInt(1), HalfInt(-1), HalfInt(3), HalfInt(-3)};
  const auto d = DefectSet::make(0.7253, 0.1822, 0.1984);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        channel_scattering_length(s.pair, entrance, d, s.classification, s.chi, s.scales, s.data.constants));
  }
}
BENCHMARK(BM_ScatteringLengthConfiguredChi);

void BM_ScatteringLengthComputedChi(benchmark::State& state) {
  const auto& s = session();
  const FragChannel entrance{HalfInt(1), HalfInt(-1), HalfInt(2), HalfInt(-2)};
  const auto d = DefectSet::make(0.7253, 0.1822);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        channel_scattering_length(s.pair, entrance, d, s.classification, s.chi, s.scales, s.data.constants));
  }
}
BENCHMARK(BM_ScatteringLengthComputedChi)->Unit(benchmark::kMillisecond);

void BM_FitTenPoints(benchmark::State& state) {
  const auto& s = session();
  const auto t = make_transition(s.pair, 0, {HalfInt(1), HalfInt(-1)}, {HalfInt(2), HalfInt(-2)},
                                 {HalfInt(3), HalfInt(-3)}, std::nullopt, 213.0);
  SweepSettings sweep;
  sweep.eta = 165.0 / 27.0;
  sweep.reduced_mass_kg = mu_kg();
  sweep.constants = s.data.constants;
  std::vector<double> f;
  for (int i = 0; i < 10; ++i) f.push_back(15.0 + 15.0 * i / 9.0);
  const auto data = synthesize_measurements(t, sweep, f, 314.8, 1.0, 2024);
  for (auto _ : state) benchmark::DoNotOptimize(fit_scattering_length(data, t, sweep));
}
BENCHMARK(BM_FitTenPoints)->Unit(benchmark::kMillisecond)->Iterations(2);

}  // namespace
BENCHMARK_MAIN();
