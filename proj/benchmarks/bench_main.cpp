#include <benchmark/benchmark.h>

#include "pdsched/app/config.hpp"
#include "pdsched/duals/dual_run.hpp"
#include "pdsched/oracle/slot_lp.hpp"
#include "pdsched/schedulers/class_a.hpp"
#include "pdsched/schedulers/jdgfp.hpp"
#include "pdsched/verify/certificate.hpp"

using namespace pdsched;

namespace {

InstanceSpec random_spec(int n, const char* problem, nlohmann::json g,
                         int r_max = 20, int p_max = 20) {
  nlohmann::json c = {{"n", n},         {"problem", problem}, {"r_max", r_max},
                      {"p_max", p_max}, {"w_max", 20}};
  if (g.is_array()) {
    c["g_family"] = g;
  } else {
    c["g"] = g;
  }
  auto config = app::ExperimentConfig::from_json(c);
  return app::generate(config, 17);
}

const nlohmann::json kLinear = {{"shape", "linear"}};

void BM_SimulateHdf(benchmark::State& state) {
  Instance<Rational> inst(random_spec(static_cast<int>(state.range(0)), "gfp", kLinear));
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_class_A(inst, PolicyKind::kHdf, Rational(1)));
  }
}
BENCHMARK(BM_SimulateHdf)->Arg(10)->Arg(50)->Arg(200);

void BM_DualsHdfExact(benchmark::State& state) {
  Instance<Rational> inst(random_spec(static_cast<int>(state.range(0)), "gfp", kLinear));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_duals(inst, PolicyKind::kHdf, DualMethod::kPrimalDual));
  }
}
BENCHMARK(BM_DualsHdfExact)->Arg(10)->Arg(30);

void BM_DualsConcaveFloat(benchmark::State& state) {
  nlohmann::json g = {{"shape", "power"}, {"exponent", "1/2"}};
  Instance<double> inst(random_spec(static_cast<int>(state.range(0)), "gfp", g));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_duals(inst, PolicyKind::kHdf, DualMethod::kConcaveFit));
  }
}
BENCHMARK(BM_DualsConcaveFloat)->Arg(10)->Arg(30);

void BM_Envelope(benchmark::State& state) {
  Instance<Rational> inst(random_spec(static_cast<int>(state.range(0)), "gfp", kLinear));
  auto run = run_duals(inst, PolicyKind::kHdf, DualMethod::kPrimalDual);
  for (auto _ : state) benchmark::DoNotOptimize(final_envelope(run));
}
BENCHMARK(BM_Envelope)->Arg(10)->Arg(30);

void BM_CertifyHdf(benchmark::State& state) {
  Instance<Rational> inst(random_spec(static_cast<int>(state.range(0)), "gfp", kLinear));
  for (auto _ : state) benchmark::DoNotOptimize(certify(inst, PolicyKind::kHdf));
}
BENCHMARK(BM_CertifyHdf)->Arg(10);

void BM_SlotLpSimplex(benchmark::State& state) {
  Instance<Rational> inst(random_spec(static_cast<int>(state.range(0)), "gfp", kLinear, 6, 4));
  auto lp = build_slot_lp(inst, Rational(1), Rational(1));
  for (auto _ : state) benchmark::DoNotOptimize(solve_slot_lp(lp));
}
BENCHMARK(BM_SlotLpSimplex)->Arg(3)->Arg(5);

void BM_SlotLpGreedy(benchmark::State& state) {
  Instance<Rational> inst(random_spec(static_cast<int>(state.range(0)), "gfp", kLinear, 6, 4));
  auto lp = build_slot_lp(inst, Rational(1), Rational(1));
  for (auto _ : state) benchmark::DoNotOptimize(solve_slot_lp_greedy(inst, lp));
}
BENCHMARK(BM_SlotLpGreedy)->Arg(3)->Arg(5);

void BM_Jdgfp(benchmark::State& state) {
  nlohmann::json family = nlohmann::json::array(
      {kLinear, {{"shape", "log"}}, {{"shape", "power"}, {"exponent", "1/2"}}});
  Instance<double> inst(random_spec(static_cast<int>(state.range(0)), "jdgfp", family, 10, 10));
  for (auto _ : state) benchmark::DoNotOptimize(simulate_jdgfp(inst, Rational(1), 1.0));
}
BENCHMARK(BM_Jdgfp)->Arg(3)->Arg(5);

}  // namespace
BENCHMARK_MAIN();
