#pragma once

// Data-parallel inner loops. `parallel` is what the library calls; `serial`
// is the straightforward reference kept for equivalence tests and the
// benchmark. Both take pre-validated inputs (see check_energy_bound) and do
// no overflow checking of their own.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>

#include "iqoap/encoding.hpp"
#include "iqoap/lattice.hpp"

namespace iqoap::kernels {

using Amplitude = std::complex<double>;

/// Below this many amplitudes the parallel kernels run on one thread.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 14;

/// Fixed chunk count for reductions, so sums do not depend on thread count.
inline constexpr std::size_t kReductionChunks = 64;

namespace serial {

void fill_energies(const GramMatrix& g, const Encoding& enc, std::span<std::int64_t> out);
void apply_phase(std::span<Amplitude> amps, std::span<const std::int64_t> energies, double gamma);
void apply_mixer(std::span<Amplitude> amps, unsigned n_qubits, double beta);
double expectation(std::span<const Amplitude> amps, std::span<const std::int64_t> energies);
std::int64_t lowest_nonzero(const GramMatrix& g, const Encoding& enc);

}  // namespace serial

namespace parallel {

void fill_energies(const GramMatrix& g, const Encoding& enc, std::span<std::int64_t> out);
void apply_phase(std::span<Amplitude> amps, std::span<const std::int64_t> energies, double gamma);
void apply_mixer(std::span<Amplitude> amps, unsigned n_qubits, double beta);
double expectation(std::span<const Amplitude> amps, std::span<const std::int64_t> energies);
std::int64_t lowest_nonzero(const GramMatrix& g, const Encoding& enc);

}  // namespace parallel

}  // namespace iqoap::kernels
