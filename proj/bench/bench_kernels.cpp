// Serial reference vs OpenMP kernels on the bad four-dimensional basis.
// The argument is k (qubits per dimension): 4k qubits, 2^(4k) amplitudes.
//   OMP_NUM_THREADS=N ./bench_kernels

#include <benchmark/benchmark.h>

#include <vector>

#include "iqoap/encoding.hpp"
#include "iqoap/kernels.hpp"
#include "iqoap/lattice.hpp"
#include "iqoap/qaoa.hpp"

namespace {

using namespace iqoap;

const Basis& bad_basis() {
  static const Basis b({{25, 78, 105, 160}, {-3, 32, 18, 64}, {53, 128, 195, 264}, {0, 8, 9, 12}});
  return b;
}

struct Fixture {
  explicit Fixture(unsigned k) : g(gram(bad_basis())), enc(4, k), energies(enc.n_states()), state(enc.n_qubits()) {
    kernels::serial::fill_energies(g, enc, energies);
    state = uniform_state(enc.n_qubits());
  }
  GramMatrix g;
  Encoding enc;
  std::vector<std::int64_t> energies;
  StateVector state;
};

template <void (*Fill)(const GramMatrix&, const Encoding&, std::span<std::int64_t>)>
void BM_fill_energies(benchmark::State& st) {
  Fixture f(static_cast<unsigned>(st.range(0)));
  for (auto _ : st) {
    Fill(f.g, f.enc, f.energies);
    benchmark::DoNotOptimize(f.energies.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(f.energies.size()));
}

template <void (*Phase)(std::span<kernels::Amplitude>, std::span<const std::int64_t>, double)>
void BM_apply_phase(benchmark::State& st) {
  Fixture f(static_cast<unsigned>(st.range(0)));
  for (auto _ : st) {
    Phase(f.state.amplitudes(), f.energies, 0.37);
    benchmark::DoNotOptimize(f.state.amplitudes().data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(f.energies.size()));
}

template <void (*Mixer)(std::span<kernels::Amplitude>, unsigned, double)>
void BM_apply_mixer(benchmark::State& st) {
  Fixture f(static_cast<unsigned>(st.range(0)));
  for (auto _ : st) {
    Mixer(f.state.amplitudes(), f.enc.n_qubits(), 0.37);
    benchmark::DoNotOptimize(f.state.amplitudes().data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(f.energies.size()));
}

template <double (*Expect)(std::span<const kernels::Amplitude>, std::span<const std::int64_t>)>
void BM_expectation(benchmark::State& st) {
  Fixture f(static_cast<unsigned>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(Expect(f.state.amplitudes(), f.energies));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(f.energies.size()));
}

template <std::int64_t (*Lowest)(const GramMatrix&, const Encoding&)>
void BM_lowest_nonzero(benchmark::State& st) {
  const GramMatrix g = gram(bad_basis());
  const Encoding enc(4, static_cast<unsigned>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(Lowest(g, enc));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(enc.n_states()));
}

}  // namespace

BENCHMARK(BM_fill_energies<kernels::serial::fill_energies>)->Name("fill_energies/serial")->DenseRange(2, 5);
BENCHMARK(BM_fill_energies<kernels::parallel::fill_energies>)->Name("fill_energies/parallel")->DenseRange(2, 5);
BENCHMARK(BM_apply_phase<kernels::serial::apply_phase>)->Name("apply_phase/serial")->DenseRange(2, 5);
BENCHMARK(BM_apply_phase<kernels::parallel::apply_phase>)->Name("apply_phase/parallel")->DenseRange(2, 5);
BENCHMARK(BM_apply_mixer<kernels::serial::apply_mixer>)->Name("apply_mixer/serial")->DenseRange(2, 5);
BENCHMARK(BM_apply_mixer<kernels::parallel::apply_mixer>)->Name("apply_mixer/parallel")->DenseRange(2, 5);
BENCHMARK(BM_expectation<kernels::serial::expectation>)->Name("expectation/serial")->DenseRange(2, 5);
BENCHMARK(BM_expectation<kernels::parallel::expectation>)->Name("expectation/parallel")->DenseRange(2, 5);
BENCHMARK(BM_lowest_nonzero<kernels::serial::lowest_nonzero>)->Name("lowest_nonzero/serial")->DenseRange(2, 5);
BENCHMARK(BM_lowest_nonzero<kernels::parallel::lowest_nonzero>)->Name("lowest_nonzero/parallel")->DenseRange(2, 5);

BENCHMARK_MAIN();
