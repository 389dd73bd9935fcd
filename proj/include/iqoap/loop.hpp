#pragma once

// Adaptive outer loop: optimize gamma for the current basis, sample lattice
// vectors from the QAOA state, substitute the first acceptable candidate,
// rebuild the Hamiltonian from the new basis.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "iqoap/lattice.hpp"
#include "iqoap/qaoa.hpp"

namespace iqoap {

struct IterationConfig {
  unsigned k = 2;
  std::size_t max_iterations = 50;
  std::size_t max_qaoa_retries = 100;
  std::size_t shots_per_attempt = 1;
  OptimizerSettings optimizer;
  /// Drive the gamma search with the closed-form expectation instead of
  /// the state vector.
  bool analytic_optimizer = false;
  std::uint64_t seed = 0;
  unsigned qubit_budget = kDefaultQubitBudget;

  /// Throws std::invalid_argument for zero counts.
  void validate() const;
};

struct IterationEntry {
  std::size_t iteration = 0;
  std::vector<std::int64_t> sorted_squared_lengths;  // after this iteration
  bool accepted = false;
  std::optional<std::size_t> replaced_index;
  std::optional<CoefficientVector> accepted_coefficients;
  std::size_t qaoa_attempts = 0;
  double gamma = 0.0;

  bool operator==(const IterationEntry&) const = default;
};

struct RunRecord {
  Basis initial_basis;
  Basis final_basis;
  std::vector<IterationEntry> entries;
};

struct IterationResult {
  Basis basis;
  IterationEntry entry;
};

/// One attempt's worth of candidates: called with the 1-based attempt number.
using CandidateSource = std::function<std::vector<CoefficientVector>(std::size_t attempt, std::mt19937_64& rng)>;

/// Builds H_P for the basis, optimizes gamma once, then makes up to
/// max_qaoa_retries sampling attempts of shots_per_attempt shots each. The
/// first candidate with a non-empty eligible_replacements updates the basis.
IterationResult iterate_once(const Basis& basis, const IterationConfig& config, std::mt19937_64& rng);

/// Same loop with the candidates supplied by the caller (no QAOA, gamma
/// logged as 0).
IterationResult iterate_once(const Basis& basis, const IterationConfig& config, std::mt19937_64& rng,
                             const CandidateSource& source);

/// max_iterations calls of iterate_once; iteration t draws from
/// make_rng(config.seed, t).
RunRecord run(const Basis& basis, const IterationConfig& config);

/// Re-applies the logged accepted updates to the initial basis.
/// Throws std::runtime_error if a logged update is not reproducible.
Basis replay(const RunRecord& record);

/// A lattice with a known good basis: diagonal entries uniform in
/// {1, ..., max_diagonal}, scrambled by random_unimodular(entry_range).
struct GeneratedLattice {
  Basis basis;
  std::vector<std::int64_t> diagonal;

  /// Known successive minima (sorted diagonal), squared.
  std::vector<std::int64_t> minima_squared() const;
};

GeneratedLattice generate_lattice(std::size_t d, std::mt19937_64& rng, std::int64_t max_diagonal = 4,
                                  std::int64_t entry_range = 10);

struct QuantileBand {
  double median = 0.0;
  double q10 = 0.0;
  double q90 = 0.0;
};

/// Per iteration (0 = initial basis) and rank (0 = shortest) statistics of
/// basis-vector lengths (not squared).
struct EnsembleStats {
  std::size_t iterations = 0;  // entries per rank is iterations + 1
  std::size_t dim = 0;
  std::vector<QuantileBand> raw;
  // Rank-r length divided by (r+1) times the shortest-vector length.
  std::vector<QuantileBand> scaled;
  // Rank-r length divided by the r-th known minimum.
  std::vector<QuantileBand> relative;
  bool has_normalized = false;

  const QuantileBand& raw_at(std::size_t it, std::size_t rank) const { return raw[it * dim + rank]; }
};

/// Aggregates records that all share one dimension and iteration count.
/// `minima_squared`, when non-empty, holds each record's known sorted
/// squared minima and enables the normalized bands.
EnsembleStats summarize(const std::vector<RunRecord>& records,
                        const std::vector<std::vector<std::int64_t>>& minima_squared = {});

struct EnsembleResult {
  std::vector<RunRecord> records;
  EnsembleStats stats;
};

/// Runs n_runs per basis with seeds derive_seed(template.seed, run_index),
/// run_index counting across all bases in order. Runs execute in parallel.
EnsembleResult ensemble(const std::vector<Basis>& bases, const IterationConfig& config_template, std::size_t n_runs,
                        const std::vector<std::vector<std::int64_t>>& minima_squared = {});

struct SuccessRates {
  /// Final basis contains a vector of the shortest length.
  double shortest_found = 0.0;
  /// Final sorted lengths equal all known minima.
  double full_basis = 0.0;
};

SuccessRates success_rates(const std::vector<RunRecord>& records,
                           const std::vector<std::vector<std::int64_t>>& minima_squared);

}  // namespace iqoap
