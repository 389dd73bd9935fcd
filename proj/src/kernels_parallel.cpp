#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "iqoap/kernels.hpp"

namespace iqoap::kernels::parallel {

namespace {

constexpr std::size_t kMaxDim = 64;

// Writes the first `count` coefficients encoded in `index` into n.
inline void decode_into(std::uint64_t index, std::size_t count, unsigned k, std::int64_t top,
                        std::int64_t* n) {
  const std::uint64_t mask = (std::uint64_t{1} << k) - 1;
  for (std::size_t i = 0; i < count; ++i) {
    n[i] = top - static_cast<std::int64_t>((index >> (i * k)) & mask);
  }
}

std::vector<std::int64_t> dense(const GramMatrix& g) {
  const std::size_t d = g.dim();
  std::vector<std::int64_t> out(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out[i * d + j] = g(i, j);
  return out;
}

}  // namespace

void fill_energies(const GramMatrix& g, const Encoding& enc, std::span<std::int64_t> out) {
  const std::size_t d = enc.dim();
  const unsigned k = enc.qubits_per_dim();
  const std::int64_t top = enc.max_coeff();
  const std::vector<std::int64_t> gd = dense(g);
  const auto total = static_cast<std::int64_t>(out.size());

#pragma omp parallel for schedule(static) if (out.size() >= kParallelThreshold)
  for (std::int64_t idx = 0; idx < total; ++idx) {
    std::array<std::int64_t, kMaxDim> n;
    decode_into(static_cast<std::uint64_t>(idx), d, k, top, n.data());
    std::int64_t e = 0;
    for (std::size_t i = 0; i < d; ++i) {
      if (n[i] == 0) continue;
      std::int64_t row = 0;
      for (std::size_t j = 0; j < d; ++j) row += gd[i * d + j] * n[j];
      e += n[i] * row;
    }
    out[static_cast<std::size_t>(idx)] = e;
  }
}

void apply_phase(std::span<Amplitude> amps, std::span<const std::int64_t> energies, double gamma) {
  const auto total = static_cast<std::int64_t>(amps.size());
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
  for (std::int64_t i = 0; i < total; ++i) {
    amps[i] *= std::polar(1.0, -gamma * static_cast<double>(energies[i]));
  }
}

void apply_mixer(std::span<Amplitude> amps, unsigned n_qubits, double beta) {
  const double c = std::cos(beta);
  const double sn = std::sin(beta);
  const auto half = static_cast<std::int64_t>(amps.size() / 2);
  for (unsigned q = 0; q < n_qubits; ++q) {
    const std::uint64_t low = (std::uint64_t{1} << q) - 1;
    const std::uint64_t bit = std::uint64_t{1} << q;
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
    for (std::int64_t t = 0; t < half; ++t) {
      const auto ut = static_cast<std::uint64_t>(t);
      const std::uint64_t i = ((ut & ~low) << 1) | (ut & low);
      const Amplitude a = amps[i];
      const Amplitude b = amps[i | bit];
      // [[c, -i s], [-i s, c]] in real arithmetic
      amps[i] = {c * a.real() + sn * b.imag(), c * a.imag() - sn * b.real()};
      amps[i | bit] = {c * b.real() + sn * a.imag(), c * b.imag() - sn * a.real()};
    }
  }
}

double expectation(std::span<const Amplitude> amps, std::span<const std::int64_t> energies) {
  const std::size_t n = amps.size();
  if (n == 0) return 0.0;
  const std::size_t chunks = std::min(kReductionChunks, n);
  const std::size_t width = (n + chunks - 1) / chunks;
  std::array<double, kReductionChunks> partial{};
  const auto nchunks = static_cast<std::int64_t>(chunks);
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::int64_t c = 0; c < nchunks; ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * width;
    const std::size_t hi = std::min(n, lo + width);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += std::norm(amps[i]) * static_cast<double>(energies[i]);
    partial[static_cast<std::size_t>(c)] = s;
  }
  double total = 0.0;
  for (std::size_t c = 0; c < chunks; ++c) total += partial[c];
  return total;
}

std::int64_t lowest_nonzero(const GramMatrix& g, const Encoding& enc) {
  // Outer loop over the first d-1 coordinates, inner loop over the last one
  // with the energy updated in O(1):
  //   E = q_outer + 2 v (sum_i G[i][last] n_i) + G[last][last] v^2.
  const std::size_t d = enc.dim();
  const unsigned k = enc.qubits_per_dim();
  const std::int64_t top = enc.max_coeff();
  const std::int64_t bottom = enc.min_coeff();
  const std::size_t last = d - 1;
  const std::vector<std::int64_t> gd = dense(g);
  const std::int64_t g_ll = gd[last * d + last];
  const auto outer = static_cast<std::int64_t>(std::uint64_t{1} << (last * k));

  std::int64_t best = std::numeric_limits<std::int64_t>::max();
#pragma omp parallel for schedule(static) reduction(min : best) if (static_cast<std::uint64_t>(outer) << k >= kParallelThreshold)
  for (std::int64_t o = 0; o < outer; ++o) {
    std::array<std::int64_t, kMaxDim> n;
    decode_into(static_cast<std::uint64_t>(o), last, k, top, n.data());
    std::int64_t q = 0;
    std::int64_t cross = 0;
    for (std::size_t i = 0; i < last; ++i) {
      if (n[i] == 0) continue;
      std::int64_t row = 0;
      for (std::size_t j = 0; j < last; ++j) row += gd[i * d + j] * n[j];
      q += n[i] * row;
      cross += gd[i * d + last] * n[i];
    }
    for (std::int64_t v = bottom; v <= top; ++v) {
      const std::int64_t e = q + 2 * v * cross + g_ll * v * v;
      if (e > 0 && e < best) best = e;
    }
  }
  return best;
}

}  // namespace iqoap::kernels::parallel
