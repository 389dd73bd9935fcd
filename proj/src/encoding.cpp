#include "iqoap/encoding.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "iqoap/kernels.hpp"
#include "iqoap/seeding.hpp"
#include "iqoap/stats.hpp"

namespace iqoap {

Encoding::Encoding(std::size_t d, unsigned k) : d_(d), k_(k) {
  if (d == 0) throw std::invalid_argument("encoding dimension must be positive");
  if (k == 0) throw std::invalid_argument("qubits per dimension must be at least 1");
  if (d * k > 62) throw std::invalid_argument("encoding needs more than 62 qubits");
}

CoefficientVector decode(std::uint64_t index, const Encoding& enc) {
  if (index >= enc.n_states()) throw std::out_of_range("basis-state index out of range");
  const unsigned k = enc.qubits_per_dim();
  const std::uint64_t mask = (std::uint64_t{1} << k) - 1;
  CoefficientVector n(enc.dim());
  for (std::size_t i = 0; i < enc.dim(); ++i) {
    n[i] = enc.max_coeff() - static_cast<std::int64_t>((index >> (i * k)) & mask);
  }
  return n;
}

std::uint64_t encode(std::span<const std::int64_t> n, const Encoding& enc) {
  if (n.size() != enc.dim()) throw std::invalid_argument("coefficient vector length must equal the dimension");
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] < enc.min_coeff() || n[i] > enc.max_coeff()) {
      throw std::out_of_range("coefficient " + std::to_string(n[i]) + " outside encoding range");
    }
    index |= static_cast<std::uint64_t>(enc.max_coeff() - n[i]) << (i * enc.qubits_per_dim());
  }
  return index;
}

void check_energy_bound(const GramMatrix& g, const Encoding& enc) {
  if (g.dim() != enc.dim()) throw std::invalid_argument("Gram matrix and encoding dimensions differ");
  // |n^T G n| <= (sum |G_ij|) * max|n|^2, plus headroom for the factor 2 in
  // the incremental kernel.
  const std::int64_t c = enc.max_coeff();
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = 0; j < g.dim(); ++j) sum = checked_add(sum, std::llabs(g(i, j)));
  checked_mul(checked_mul(checked_mul(sum, c), c), 4);
}

DiagonalHamiltonian build_hamiltonian(const GramMatrix& g, const Encoding& enc, unsigned qubit_budget) {
  if (enc.n_qubits() > qubit_budget) {
    throw BudgetExceeded(std::to_string(enc.n_qubits()) + " qubits exceeds the budget of " +
                         std::to_string(qubit_budget));
  }
  check_energy_bound(g, enc);
  DiagonalHamiltonian h{enc, std::vector<std::int64_t>(enc.n_states())};
  kernels::parallel::fill_energies(g, enc, h.energies);
  return h;
}

std::vector<std::int64_t> truncated_spectrum(const GramMatrix& g, const Encoding& enc, unsigned qubit_budget) {
  std::vector<std::int64_t> e = build_hamiltonian(g, enc, qubit_budget).energies;
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  return e;
}

std::int64_t lowest_nonzero(const GramMatrix& g, const Encoding& enc, std::uint64_t budget) {
  if (enc.n_states() > budget) throw BudgetExceeded("coefficient box exceeds the enumeration budget");
  check_energy_bound(g, enc);
  return kernels::parallel::lowest_nonzero(g, enc);
}

namespace {

std::vector<std::vector<std::int64_t>> lowest_nonzero_table(const std::vector<Basis>& bases,
                                                            const std::vector<unsigned>& k_values,
                                                            std::uint64_t budget) {
  std::vector<std::vector<std::int64_t>> table(bases.size(), std::vector<std::int64_t>(k_values.size()));
  for (std::size_t t = 0; t < bases.size(); ++t) {
    const GramMatrix g = gram(bases[t]);
    for (std::size_t ki = 0; ki < k_values.size(); ++ki) {
      table[t][ki] = lowest_nonzero(g, Encoding(bases[t].dim(), k_values[ki]), budget);
    }
  }
  return table;
}

std::vector<Basis> scrambled_bases(const Basis& seed_basis, std::size_t trials, std::int64_t entry_range,
                                   std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  std::vector<Basis> out;
  out.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    auto rng = make_rng(seed, t);
    out.push_back(apply_transform(random_unimodular(seed_basis.dim(), entry_range, rng), seed_basis));
  }
  return out;
}

void check_box_budget(std::size_t d, const std::vector<unsigned>& k_values, std::uint64_t budget) {
  for (unsigned k : k_values) {
    if (Encoding(d, k).n_states() > budget) throw BudgetExceeded("coefficient box exceeds the enumeration budget");
  }
}

}  // namespace

std::vector<std::vector<std::int64_t>> scaling_samples(const Basis& seed_basis, const std::vector<unsigned>& k_values,
                                                       std::size_t trials, std::int64_t entry_range,
                                                       std::uint64_t seed, std::uint64_t budget) {
  check_box_budget(seed_basis.dim(), k_values, budget);
  return lowest_nonzero_table(scrambled_bases(seed_basis, trials, entry_range, seed), k_values, budget);
}

std::vector<ScalingPoint> scaling_statistics(const std::vector<Basis>& bases, const std::vector<unsigned>& k_values,
                                             std::uint64_t budget) {
  if (bases.empty()) throw std::invalid_argument("no bases");
  check_box_budget(bases.front().dim(), k_values, budget);
  const auto table = lowest_nonzero_table(bases, k_values, budget);
  std::vector<ScalingPoint> out;
  for (std::size_t ki = 0; ki < k_values.size(); ++ki) {
    std::vector<std::int64_t> column;
    column.reserve(table.size());
    for (const auto& row : table) column.push_back(row[ki]);
    out.push_back({k_values[ki], nearest_rank(column, 50.0), nearest_rank(column, 75.0)});
  }
  return out;
}

std::vector<ScalingPoint> scaling_experiment(const Basis& seed_basis, const std::vector<unsigned>& k_values,
                                             std::size_t trials, std::int64_t entry_range, std::uint64_t seed,
                                             std::uint64_t budget) {
  check_box_budget(seed_basis.dim(), k_values, budget);
  return scaling_statistics(scrambled_bases(seed_basis, trials, entry_range, seed), k_values, budget);
}

}  // namespace iqoap
