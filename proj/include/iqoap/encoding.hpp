#pragma once

// Qubit encoding of the coefficient operators and the truncated problem
// Hamiltonian as a dense diagonal.
//
// Layout: qubit j of coordinate i sits at bit position i*k + j of the
// computational-basis index (little-endian). Bit value 0 is the Pauli-Z
// eigenvalue +1. Within a block the coefficient is
//   n_i = (sum_j 2^j z_ij + 1) / 2 = 2^(k-1) - block_value,
// so the per-coordinate range is [-2^(k-1)+1, 2^(k-1)].

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "iqoap/lattice.hpp"

namespace iqoap {

inline constexpr unsigned kDefaultQubitBudget = 24;

class Encoding {
 public:
  /// Throws std::invalid_argument for d == 0, k == 0, or d*k > 62.
  Encoding(std::size_t d, unsigned k);

  std::size_t dim() const { return d_; }
  unsigned qubits_per_dim() const { return k_; }
  unsigned n_qubits() const { return static_cast<unsigned>(d_) * k_; }
  std::uint64_t n_states() const { return std::uint64_t{1} << n_qubits(); }
  std::int64_t min_coeff() const { return -(std::int64_t{1} << (k_ - 1)) + 1; }
  std::int64_t max_coeff() const { return std::int64_t{1} << (k_ - 1); }
  unsigned qubit_position(std::size_t coord, unsigned bit) const { return static_cast<unsigned>(coord) * k_ + bit; }

  bool operator==(const Encoding&) const = default;

 private:
  std::size_t d_;
  unsigned k_;
};

/// Throws std::out_of_range if index >= 2^(d*k).
CoefficientVector decode(std::uint64_t index, const Encoding& enc);

/// Inverse of decode. Throws std::out_of_range for a component outside the
/// encoding range, std::invalid_argument on length mismatch.
std::uint64_t encode(std::span<const std::int64_t> n, const Encoding& enc);

/// Throws OverflowError when some n^T G n inside the encoding box could leave
/// int64. Kernels run unchecked arithmetic after this passes.
void check_energy_bound(const GramMatrix& g, const Encoding& enc);

struct DiagonalHamiltonian {
  Encoding encoding;
  std::vector<std::int64_t> energies;
};

/// energies[idx] = squared_length(G, decode(idx)).
/// Throws BudgetExceeded when d*k > qubit_budget.
DiagonalHamiltonian build_hamiltonian(const GramMatrix& g, const Encoding& enc,
                                      unsigned qubit_budget = kDefaultQubitBudget);

/// Distinct energies, ascending.
std::vector<std::int64_t> truncated_spectrum(const GramMatrix& g, const Encoding& enc,
                                             unsigned qubit_budget = kDefaultQubitBudget);

/// Smallest nonzero n^T G n over the encoding box, enumerated without the
/// dense array. Throws BudgetExceeded when 2^(d*k) > budget.
std::int64_t lowest_nonzero(const GramMatrix& g, const Encoding& enc,
                            std::uint64_t budget = kDefaultEnumerationBudget);

struct ScalingPoint {
  unsigned k = 0;
  std::int64_t median = 0;
  std::int64_t q75 = 0;
};

/// For each trial, scrambles seed_basis with random_unimodular (rng seeded
/// from derive_seed(seed, trial)) and records lowest_nonzero per k.
std::vector<ScalingPoint> scaling_experiment(const Basis& seed_basis, const std::vector<unsigned>& k_values,
                                             std::size_t trials, std::int64_t entry_range, std::uint64_t seed,
                                             std::uint64_t budget = kDefaultEnumerationBudget);

/// Median and 75th percentile per k over already-scrambled bases.
std::vector<ScalingPoint> scaling_statistics(const std::vector<Basis>& bases, const std::vector<unsigned>& k_values,
                                             std::uint64_t budget = kDefaultEnumerationBudget);

/// Per-trial lowest_nonzero table [trial][k position], exposed for tests.
std::vector<std::vector<std::int64_t>> scaling_samples(const Basis& seed_basis, const std::vector<unsigned>& k_values,
                                                       std::size_t trials, std::int64_t entry_range,
                                                       std::uint64_t seed,
                                                       std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace iqoap
