#include <benchmark/benchmark.h>

#include <random>

#include "mpsgs/classifier.hpp"
#include "mpsgs/hamiltonian.hpp"
#include "mpsgs/states.hpp"
#include "mpsgs/verifier.hpp"

namespace {

using namespace mpsgs;

FamilyParams f105() {
  FamilyParams p;
  p.family = Family::F105;
  p.g = 1.0;
  p.nu = 1.0;
  p.nu_prime = -1.0;
  return p;
}

void BM_FullChain(benchmark::State& state) {
  const LocalHamiltonian h = build_family(f105());
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(full_chain(h, n));
}
BENCHMARK(BM_FullChain)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);

void BM_ApplyChain(benchmark::State& state) {
  const LocalHamiltonian h = build_family(f105());
  const int n = static_cast<int>(state.range(0));
  const Eigen::VectorXcd psi = Eigen::VectorXcd::Ones(Eigen::Index{1} << n);
  for (auto _ : state) benchmark::DoNotOptimize(apply_chain(h.matrix(), psi, n));
}
BENCHMARK(BM_ApplyChain)->DenseRange(8, 16, 4)->Unit(benchmark::kMicrosecond);

void BM_Spectrum(benchmark::State& state) {
  const FullHamiltonian h = full_chain(build_family(f105()), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spectrum(h));
}
BENCHMARK(BM_Spectrum)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

void BM_Classify(benchmark::State& state) {
  std::mt19937_64 gen(7);
  std::normal_distribution<double> nd;
  Matrix2 m;
  for (Eigen::Index i = 0; i < 4; ++i) m(i) = Complex(nd(gen), nd(gen));
  const SL2 g = SL2::normalized(m);
  const CSpace v = sl2_act_space(g, canonical_space(CanonicalForm(CaseId::C57, Complex(0.3, 0.1))));
  for (auto _ : state) benchmark::DoNotOptimize(classify(v));
}
BENCHMARK(BM_Classify);

void BM_MpsContract(benchmark::State& state) {
  const MPSSpec spec = representation_for_case(CanonicalForm(CaseId::C55, Complex(0.0)), 4);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mps_contract(spec, n));
}
BENCHMARK(BM_MpsContract)->DenseRange(8, 16, 4)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
