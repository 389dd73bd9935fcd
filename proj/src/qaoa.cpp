#include "iqoap/qaoa.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "iqoap/seeding.hpp"

namespace iqoap {

double StateVector::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amps_.size());
  std::transform(amps_.begin(), amps_.end(), p.begin(), [](const auto& a) { return std::norm(a); });
  return p;
}

StateVector basis_state(unsigned n_qubits, std::uint64_t index) {
  StateVector s(n_qubits);
  if (index >= s.size()) throw std::out_of_range("basis-state index out of range");
  s[index] = 1.0;
  return s;
}

StateVector uniform_state(unsigned n_qubits, unsigned qubit_budget) {
  if (n_qubits > qubit_budget) {
    throw BudgetExceeded(std::to_string(n_qubits) + " qubits exceeds the budget of " + std::to_string(qubit_budget));
  }
  StateVector s(n_qubits);
  const double amp = std::pow(2.0, -0.5 * n_qubits);
  for (auto& a : s.amplitudes()) a = amp;
  return s;
}

void apply_phase(StateVector& state, const DiagonalHamiltonian& h, double gamma) {
  if (state.size() != h.energies.size()) throw std::invalid_argument("state and Hamiltonian sizes differ");
  kernels::parallel::apply_phase(state.amplitudes(), h.energies, gamma);
}

void apply_mixer(StateVector& state, double beta) {
  kernels::parallel::apply_mixer(state.amplitudes(), state.n_qubits(), beta);
}

StateVector qaoa_state(const DiagonalHamiltonian& h, double gamma) {
  StateVector s = uniform_state(h.encoding.n_qubits(), h.encoding.n_qubits());
  apply_phase(s, h, gamma);
  apply_mixer(s, gamma);
  return s;
}

double expectation(const StateVector& state, const DiagonalHamiltonian& h) {
  if (state.size() != h.energies.size()) throw std::invalid_argument("state and Hamiltonian sizes differ");
  return kernels::parallel::expectation(state.amplitudes(), h.energies);
}

std::int64_t IsingCoefficients::energy_q(std::uint64_t index) const {
  auto spin = [index](unsigned a) -> std::int64_t { return ((index >> a) & 1U) ? -1 : 1; };
  std::int64_t e = constant_q;
  for (unsigned a = 0; a < n_qubits; ++a) {
    const std::int64_t sa = spin(a);
    e = checked_add(e, checked_mul(field_q[a], sa));
    for (unsigned b = a + 1; b < n_qubits; ++b) {
      e = checked_add(e, checked_mul(coupling_q[a * n_qubits + b], sa * spin(b)));
    }
  }
  return e;
}

IsingCoefficients ising_coefficients(const GramMatrix& g, const Encoding& enc) {
  // Q_i = (A_i + 1)/2 with A_i = sum_j 2^j Z_ij. Then
  //   4 H = sum_il G_il (A_i A_l + A_i + A_l + 1),
  // A_i^2 contributes sum_j 4^j to the constant, and every pair of distinct
  // qubits (i,j), (l,m) couples with 2 G_il 2^j 2^m.
  if (g.dim() != enc.dim()) throw std::invalid_argument("Gram matrix and encoding dimensions differ");
  check_energy_bound(g, enc);
  const std::size_t d = enc.dim();
  const unsigned k = enc.qubits_per_dim();
  const unsigned n = enc.n_qubits();
  IsingCoefficients c;
  c.n_qubits = n;
  c.field_q.assign(n, 0);
  c.coupling_q.assign(std::size_t{n} * n, 0);

  std::int64_t square_weights = 0;
  for (unsigned j = 0; j < k; ++j) square_weights = checked_add(square_weights, std::int64_t{1} << (2 * j));

  for (std::size_t i = 0; i < d; ++i) {
    std::int64_t row_sum = 0;
    for (std::size_t l = 0; l < d; ++l) {
      c.constant_q = checked_add(c.constant_q, g(i, l));
      row_sum = checked_add(row_sum, g(i, l));
    }
    c.constant_q = checked_add(c.constant_q, checked_mul(g(i, i), square_weights));
    for (unsigned j = 0; j < k; ++j) {
      c.field_q[enc.qubit_position(i, j)] = checked_mul(2 * row_sum, std::int64_t{1} << j);
    }
  }
  for (std::size_t i = 0; i < d; ++i)
    for (unsigned j = 0; j < k; ++j)
      for (std::size_t l = 0; l < d; ++l)
        for (unsigned m = 0; m < k; ++m) {
          const unsigned a = enc.qubit_position(i, j);
          const unsigned b = enc.qubit_position(l, m);
          if (a == b) continue;
          c.coupling_q[std::size_t{a} * n + b] = checked_mul(2 * g(i, l), std::int64_t{1} << (j + m));
        }
  return c;
}

double analytic_expectation(const IsingCoefficients& c, double gamma, double beta) {
  // Heisenberg picture: the mixer maps Z_a to cos(2b) Z_a + sin(2b) Y_a.
  // Under the phased uniform state <Z_a> = <Z_a Z_b> = 0 and, with
  // phi_a = 2 gamma h_a and theta_ab = 2 gamma J_ab,
  //   <Y_a>     = sin(phi_a) prod_{c != a} cos(theta_ac)
  //   <Y_a Z_b> = cos(phi_a) sin(theta_ab) prod_{c != a,b} cos(theta_ac)
  //   <Y_a Y_b> = 1/2 [cos(phi_a - phi_b) prod_{c != a,b} cos(theta_ac - theta_bc)
  //                  - cos(phi_a + phi_b) prod_{c != a,b} cos(theta_ac + theta_bc)]
  const unsigned n = c.n_qubits;
  const double s2 = std::sin(2.0 * beta);
  const double c2 = std::cos(2.0 * beta);
  std::vector<double> phi(n);
  std::vector<double> theta(std::size_t{n} * n);
  for (unsigned a = 0; a < n; ++a) {
    phi[a] = 2.0 * gamma * c.field(a);
    for (unsigned b = 0; b < n; ++b) theta[std::size_t{a} * n + b] = 2.0 * gamma * c.coupling(a, b);
  }
  auto th = [&](unsigned a, unsigned b) { return theta[std::size_t{a} * n + b]; };

  double total = c.constant();
  for (unsigned a = 0; a < n; ++a) {
    if (c.field_q[a] == 0) continue;
    double prod = 1.0;
    for (unsigned b = 0; b < n; ++b)
      if (b != a) prod *= std::cos(th(a, b));
    total += c.field(a) * s2 * std::sin(phi[a]) * prod;
  }
  for (unsigned a = 0; a < n; ++a) {
    for (unsigned b = a + 1; b < n; ++b) {
      if (c.coupling_q[std::size_t{a} * n + b] == 0) continue;
      double prod_a = 1.0, prod_b = 1.0, prod_minus = 1.0, prod_plus = 1.0;
      for (unsigned o = 0; o < n; ++o) {
        if (o == a || o == b) continue;
        prod_a *= std::cos(th(a, o));
        prod_b *= std::cos(th(b, o));
        prod_minus *= std::cos(th(a, o) - th(b, o));
        prod_plus *= std::cos(th(a, o) + th(b, o));
      }
      const double yz = std::cos(phi[a]) * std::sin(th(a, b)) * prod_a;
      const double zy = std::cos(phi[b]) * std::sin(th(a, b)) * prod_b;
      const double yy = 0.5 * (std::cos(phi[a] - phi[b]) * prod_minus - std::cos(phi[a] + phi[b]) * prod_plus);
      total += c.coupling(a, b) * (s2 * c2 * (yz + zy) + s2 * s2 * yy);
    }
  }
  return total;
}

namespace {

template <typename Objective>
GammaOptimum minimize_periodic(Objective&& objective, const OptimizerSettings& settings) {
  if (settings.grid_points < 8) throw std::invalid_argument("grid_points must be at least 8");
  constexpr double kTwoPi = 2.0 * std::numbers::pi;

  // Moves must beat the incumbent by more than rounding noise, so a flat
  // objective stays at gamma = 0.
  auto improves = [](double candidate, double incumbent) {
    return candidate < incumbent - 1e-12 * (1.0 + std::abs(incumbent));
  };

  const double step = kTwoPi / static_cast<double>(settings.grid_points);
  GammaOptimum best{0.0, objective(0.0)};
  for (std::size_t i = 1; i < settings.grid_points; ++i) {
    const double g = step * static_cast<double>(i);
    const double v = objective(g);
    if (improves(v, best.value)) best = {g, v};
  }

  // Golden-section search on [best - step, best + step].
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = best.gamma - step;
  double hi = best.gamma + step;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  while (hi - lo > settings.tolerance) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = objective(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = objective(x2);
    }
  }
  const double mid = std::fmod(0.5 * (lo + hi) + kTwoPi, kTwoPi);
  const double fm = objective(mid);
  if (improves(fm, best.value)) best = {mid, fm};
  return best;
}

}  // namespace

GammaOptimum optimize_gamma(const DiagonalHamiltonian& h, const OptimizerSettings& settings) {
  return minimize_periodic([&](double gamma) { return expectation(qaoa_state(h, gamma), h); }, settings);
}

GammaOptimum optimize_gamma(const IsingCoefficients& coeffs, const OptimizerSettings& settings) {
  return minimize_periodic([&](double gamma) { return analytic_expectation(coeffs, gamma); }, settings);
}

Sampler::Sampler(const StateVector& state) : cdf_(state.size()) {
  double acc = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    acc += std::norm(state[i]);
    cdf_[i] = acc;
  }
}

std::uint64_t Sampler::draw(std::mt19937_64& rng) const {
  const double u = uniform01(rng) * cdf_.back();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) --it;
  return static_cast<std::uint64_t>(it - cdf_.begin());
}

std::vector<CoefficientVector> sample(const StateVector& state, const Encoding& enc, std::mt19937_64& rng,
                                      std::size_t shots) {
  if (shots < 1) throw std::invalid_argument("shots must be at least 1");
  if (state.size() != enc.n_states()) throw std::invalid_argument("state and encoding sizes differ");
  const Sampler sampler(state);
  std::vector<CoefficientVector> out;
  out.reserve(shots);
  for (std::size_t s = 0; s < shots; ++s) out.push_back(decode(sampler.draw(rng), enc));
  return out;
}

}  // namespace iqoap
