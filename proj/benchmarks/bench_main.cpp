#include <benchmark/benchmark.h>

#include "solvint/corpus.hpp"
#include "solvint/ffla.hpp"
#include "solvint/props.hpp"
#include "solvint/sdp.hpp"
#include "solvint/suites.hpp"
#include "solvint/tower.hpp"

using namespace solvint;

namespace {

const corpus::Entry& primitive(const std::string& name) {
  static const auto entries = corpus::primitive_corpus();
  for (const auto& e : entries)
    if (e.name == name) return e;
  throw std::out_of_range(name);
}

void BM_LatticeBuild(benchmark::State& state, std::string name) {
  const auto& g = *primitive(name).group;
  for (auto _ : state) benchmark::DoNotOptimize(groups::SubgroupLattice::build(g).size());
  state.counters["order"] = static_cast<double>(g.order());
}

void BM_LatticeTower(benchmark::State& state) {
  auto g = tower::TowerGroup::build(tower::find_primes(static_cast<std::size_t>(state.range(0)), false));
  auto oracle = g.oracle();
  for (auto _ : state) benchmark::DoNotOptimize(groups::SubgroupLattice::build(oracle).size());
  state.counters["order"] = static_cast<double>(g.order());
}

void BM_EtaMin(benchmark::State& state, std::string name) {
  auto lat = groups::SubgroupLattice::build(*primitive(name).group);
  for (auto _ : state) benchmark::DoNotOptimize(props::eta_min(lat).rows.size());
}

void BM_GammaMin(benchmark::State& state, std::string name) {
  const auto& sd = *primitive(name).primitive;
  const groups::MatrixGroup h = sd.h();
  for (auto _ : state) benchmark::DoNotOptimize(props::gamma_min(h).raw_gamma);
}

void BM_Rref(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  ffla::Matrix m(7, n, n);
  std::uint64_t x = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      x = x * 6364136223846793005ull + 1442695040888963407ull;
      m(i, j) = static_cast<ffla::Scalar>((x >> 33) % 7);
    }
  for (auto _ : state) benchmark::DoNotOptimize(m.rank());
}

void BM_InterKM(benchmark::State& state) {
  static const auto pool = suites::sd_pool();
  for (auto _ : state) benchmark::DoNotOptimize(suites::interkm_suite(pool, 7, 100).failures);
}

void BM_Impor(benchmark::State& state) {
  static const auto pool = suites::sd_pool();
  for (auto _ : state) benchmark::DoNotOptimize(suites::impor_suite(pool, 7, 100).failures);
}

}  // namespace

BENCHMARK_CAPTURE(BM_LatticeBuild, F20, std::string("F20"))->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_LatticeBuild, S4, std::string("S4"))->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_LatticeBuild, SL23, std::string("3^2:SL(2,3)"))->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LatticeTower)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_EtaMin, S4, std::string("S4"))->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_EtaMin, SL23, std::string("3^2:SL(2,3)"))->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_GammaMin, SL23, std::string("3^2:SL(2,3)"))->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_GammaMin, F8, std::string("2^3:7"))->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Rref)->Arg(16)->Arg(64)->Arg(128);
BENCHMARK(BM_InterKM)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Impor)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
