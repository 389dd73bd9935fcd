#include <cmath>
#include <limits>

#include "iqoap/kernels.hpp"

namespace iqoap::kernels::serial {

namespace {

std::int64_t energy_at(const GramMatrix& g, const Encoding& enc, std::uint64_t index) {
  const CoefficientVector n = decode(index, enc);
  const std::size_t d = enc.dim();
  std::int64_t e = 0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) e += g(i, j) * n[i] * n[j];
  return e;
}

}  // namespace

void fill_energies(const GramMatrix& g, const Encoding& enc, std::span<std::int64_t> out) {
  for (std::uint64_t idx = 0; idx < out.size(); ++idx) out[idx] = energy_at(g, enc, idx);
}

void apply_phase(std::span<Amplitude> amps, std::span<const std::int64_t> energies, double gamma) {
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] *= std::polar(1.0, -gamma * static_cast<double>(energies[i]));
}

void apply_mixer(std::span<Amplitude> amps, unsigned n_qubits, double beta) {
  const double c = std::cos(beta);
  const double sn = std::sin(beta);
  for (unsigned q = 0; q < n_qubits; ++q) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < amps.size(); ++i) {
      if (i & bit) continue;
      const Amplitude a = amps[i];
      const Amplitude b = amps[i | bit];
      // [[c, -i s], [-i s, c]] in real arithmetic
      amps[i] = {c * a.real() + sn * b.imag(), c * a.imag() - sn * b.real()};
      amps[i | bit] = {c * b.real() + sn * a.imag(), c * b.imag() - sn * a.real()};
    }
  }
}

double expectation(std::span<const Amplitude> amps, std::span<const std::int64_t> energies) {
  double s = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) s += std::norm(amps[i]) * static_cast<double>(energies[i]);
  return s;
}

std::int64_t lowest_nonzero(const GramMatrix& g, const Encoding& enc) {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::uint64_t idx = 0; idx < enc.n_states(); ++idx) {
    const std::int64_t e = energy_at(g, enc, idx);
    if (e > 0 && e < best) best = e;
  }
  return best;
}

}  // namespace iqoap::kernels::serial
