#include <benchmark/benchmark.h>

#include <random>

#include "szegolab/flow.hpp"
#include "szegolab/lax.hpp"
#include "szegolab/manifold.hpp"

using namespace szegolab;

namespace {

ModeState make_state(int nmax) {
  std::mt19937_64 rng(1234);
  ModeState s(nmax);
  for (int n = 0; n < nmax; ++n) {
    const double u1 = (rng() >> 11) * 0x1.0p-53 + 0x1.0p-54;
    const double u2 = (rng() >> 11) * 0x1.0p-53;
    s[n] = std::polar(std::sqrt(-2.0 * std::log(u1)) * std::exp(-0.05 * n),
                      6.283185307179586 * u2);
  }
  return s;
}

KernelSpec truncated_spec() {
  KernelSpec spec;
  spec.family = KernelFamily::Truncated;
  return spec;
}

void BM_rhs_direct(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const KernelSpec spec = truncated_spec();
  const ModeState s = make_state(n);
  for (auto _ : state) benchmark::DoNotOptimize(rhs_direct(spec, s));
  state.SetComplexityN(n);
}
BENCHMARK(BM_rhs_direct)->RangeMultiplier(2)->Range(16, 128)->Complexity();

void BM_rhs_fast_direct_backend(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const KernelSpec spec = truncated_spec();
  const ModeState s = make_state(n);
  RhsEvaluator ev(spec, n, ConvBackend::Direct);
  std::vector<Complex> out(static_cast<std::size_t>(n));
  for (auto _ : state) {
    ev(s.amp, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_rhs_fast_direct_backend)->RangeMultiplier(2)->Range(32, 1024)->Complexity();

void BM_rhs_fast_transform_backend(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const KernelSpec spec = truncated_spec();
  const ModeState s = make_state(n);
  RhsEvaluator ev(spec, n, ConvBackend::Transform);
  std::vector<Complex> out(static_cast<std::size_t>(n));
  for (auto _ : state) {
    ev(s.amp, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_rhs_fast_transform_backend)->RangeMultiplier(2)->Range(32, 4096)->Complexity();

void BM_hamiltonian(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const KernelSpec spec = truncated_spec();
  const ModeState s = make_state(n);
  for (auto _ : state) benchmark::DoNotOptimize(hamiltonian(spec, s));
}
BENCHMARK(BM_hamiltonian)->RangeMultiplier(4)->Range(64, 2048);

void BM_k_spectrum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ModeState s = make_state(2 * n);
  for (auto _ : state) benchmark::DoNotOptimize(k_spectrum(s, n));
}
BENCHMARK(BM_k_spectrum)->RangeMultiplier(2)->Range(16, 128);

void BM_integrate_blowup_segment(benchmark::State& state) {
  const double beta = 1.0;
  const Complex a = blowup_family(beta, Complex{1, 0}, Complex{0.5, 0}, 0.0);
  const ModeState s0 = lift_l1(ManifoldState{Complex{1, 0}, a, Complex{0.5, 0}}, 256);
  KernelSpec spec = truncated_spec();
  IntegratorControls ic;
  ic.t_end = 0.5;
  ic.checkpoint_dt = 0.5;
  for (auto _ : state) benchmark::DoNotOptimize(integrate(spec, s0, ic));
}
BENCHMARK(BM_integrate_blowup_segment)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
