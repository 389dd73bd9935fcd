#pragma once

// Depth-1 QAOA with the single angle constraint beta = gamma:
//   |psi(gamma)> = exp(-i gamma H_D) exp(-i gamma H_P) |+>^n,  H_D = sum_j X_j.

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "iqoap/encoding.hpp"
#include "iqoap/kernels.hpp"

namespace iqoap {

class StateVector {
 public:
  explicit StateVector(unsigned n_qubits) : n_qubits_(n_qubits), amps_(std::size_t{1} << n_qubits) {}

  unsigned n_qubits() const { return n_qubits_; }
  std::size_t size() const { return amps_.size(); }
  std::span<kernels::Amplitude> amplitudes() { return amps_; }
  std::span<const kernels::Amplitude> amplitudes() const { return amps_; }
  kernels::Amplitude& operator[](std::size_t i) { return amps_[i]; }
  const kernels::Amplitude& operator[](std::size_t i) const { return amps_[i]; }

  double norm_squared() const;
  std::vector<double> probabilities() const;

 private:
  unsigned n_qubits_;
  std::vector<kernels::Amplitude> amps_;
};

/// Computational basis state |index>.
StateVector basis_state(unsigned n_qubits, std::uint64_t index);

/// Every amplitude 2^(-n/2). Throws BudgetExceeded above qubit_budget.
StateVector uniform_state(unsigned n_qubits, unsigned qubit_budget = kDefaultQubitBudget);

void apply_phase(StateVector& state, const DiagonalHamiltonian& h, double gamma);

/// exp(-i beta X) on every qubit.
void apply_mixer(StateVector& state, double beta);

StateVector qaoa_state(const DiagonalHamiltonian& h, double gamma);

double expectation(const StateVector& state, const DiagonalHamiltonian& h);

/// Problem Hamiltonian as an Ising model,
///   H = constant + sum_a h_a Z_a + sum_{a<b} J_ab Z_a Z_b,
/// with every coefficient an exact multiple of 1/4 stored as its numerator.
struct IsingCoefficients {
  unsigned n_qubits = 0;
  std::int64_t constant_q = 0;
  std::vector<std::int64_t> field_q;     // per qubit
  std::vector<std::int64_t> coupling_q;  // dense n*n, symmetric, zero diagonal

  static constexpr std::int64_t kDenominator = 4;

  double constant() const { return static_cast<double>(constant_q) / kDenominator; }
  double field(unsigned a) const { return static_cast<double>(field_q[a]) / kDenominator; }
  double coupling(unsigned a, unsigned b) const {
    return static_cast<double>(coupling_q[a * n_qubits + b]) / kDenominator;
  }

  /// 4 * energy of the spin assignment encoded by a basis-state index
  /// (bit 0 -> Z = +1). Exact.
  std::int64_t energy_q(std::uint64_t index) const;
};

IsingCoefficients ising_coefficients(const GramMatrix& g, const Encoding& enc);

/// <psi|H|psi> for exp(-i beta H_D) exp(-i gamma H) |+>^n from the closed
/// form for one QAOA layer on an Ising model; O(n^3), no state vector.
double analytic_expectation(const IsingCoefficients& c, double gamma, double beta);
inline double analytic_expectation(const IsingCoefficients& c, double gamma) {
  return analytic_expectation(c, gamma, gamma);
}

struct OptimizerSettings {
  std::size_t grid_points = 256;
  double tolerance = 1e-6;
};

struct GammaOptimum {
  double gamma = 0.0;
  double value = 0.0;
};

/// Uniform grid over [0, 2pi), then golden-section refinement inside the
/// neighbouring grid cells of the best point. The refined point is kept only
/// when strictly better, so value <= the gamma = 0 objective.
GammaOptimum optimize_gamma(const DiagonalHamiltonian& h, const OptimizerSettings& settings = {});

/// Same search driven by analytic_expectation.
GammaOptimum optimize_gamma(const IsingCoefficients& coeffs, const OptimizerSettings& settings = {});

/// Inverse-CDF sampling of |amplitude|^2, decoded to coefficient vectors.
std::vector<CoefficientVector> sample(const StateVector& state, const Encoding& enc, std::mt19937_64& rng,
                                      std::size_t shots);

/// Cumulative distribution used by sample(), exposed so repeated draws from
/// one state need not rebuild it.
class Sampler {
 public:
  explicit Sampler(const StateVector& state);
  std::uint64_t draw(std::mt19937_64& rng) const;

 private:
  std::vector<double> cdf_;
};

}  // namespace iqoap
