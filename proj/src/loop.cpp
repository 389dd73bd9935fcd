#include "iqoap/loop.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "iqoap/seeding.hpp"
#include "iqoap/stats.hpp"

namespace iqoap {

void IterationConfig::validate() const {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
  if (max_qaoa_retries < 1) throw std::invalid_argument("max_qaoa_retries must be at least 1");
  if (shots_per_attempt < 1) throw std::invalid_argument("shots_per_attempt must be at least 1");
}

IterationResult iterate_once(const Basis& basis, const IterationConfig& config, std::mt19937_64& rng,
                             const CandidateSource& source) {
  config.validate();
  IterationResult result{basis, {}};
  for (std::size_t attempt = 1; attempt <= config.max_qaoa_retries; ++attempt) {
    result.entry.qaoa_attempts = attempt;
    for (const auto& n : source(attempt, rng)) {
      BasisUpdate update = update_basis(basis, n);
      if (update.accepted) {
        result.basis = std::move(update.basis);
        result.entry.accepted = true;
        result.entry.replaced_index = update.replaced_index;
        result.entry.accepted_coefficients = n;
        result.entry.sorted_squared_lengths = sorted_squared_lengths(result.basis);
        return result;
      }
    }
  }
  result.entry.sorted_squared_lengths = sorted_squared_lengths(basis);
  return result;
}

IterationResult iterate_once(const Basis& basis, const IterationConfig& config, std::mt19937_64& rng) {
  config.validate();
  const Encoding enc(basis.dim(), config.k);
  const GramMatrix g = gram(basis);
  const DiagonalHamiltonian h = build_hamiltonian(g, enc, config.qubit_budget);
  const GammaOptimum opt = config.analytic_optimizer ? optimize_gamma(ising_coefficients(g, enc), config.optimizer)
                                                     : optimize_gamma(h, config.optimizer);
  const Sampler sampler(qaoa_state(h, opt.gamma));
  auto source = [&](std::size_t, std::mt19937_64& r) {
    std::vector<CoefficientVector> shots;
    shots.reserve(config.shots_per_attempt);
    for (std::size_t s = 0; s < config.shots_per_attempt; ++s) shots.push_back(decode(sampler.draw(r), enc));
    return shots;
  };
  IterationResult result = iterate_once(basis, config, rng, source);
  result.entry.gamma = opt.gamma;
  return result;
}

RunRecord run(const Basis& basis, const IterationConfig& config) {
  config.validate();
  RunRecord record{basis, basis, {}};
  record.entries.reserve(config.max_iterations);
  for (std::size_t t = 0; t < config.max_iterations; ++t) {
    auto rng = make_rng(config.seed, t);
    IterationResult step = iterate_once(record.final_basis, config, rng);
    step.entry.iteration = t + 1;
    record.final_basis = std::move(step.basis);
    record.entries.push_back(std::move(step.entry));
  }
  return record;
}

Basis replay(const RunRecord& record) {
  Basis current = record.initial_basis;
  for (const auto& e : record.entries) {
    if (!e.accepted) continue;
    if (!e.accepted_coefficients) throw std::runtime_error("accepted entry without coefficients");
    BasisUpdate u = update_basis(current, *e.accepted_coefficients);
    if (!u.accepted || u.replaced_index != e.replaced_index) {
      throw std::runtime_error("logged update at iteration " + std::to_string(e.iteration) + " does not replay");
    }
    current = std::move(u.basis);
  }
  return current;
}

std::vector<std::int64_t> GeneratedLattice::minima_squared() const {
  std::vector<std::int64_t> out;
  for (std::int64_t x : diagonal) out.push_back(x * x);
  std::sort(out.begin(), out.end());
  return out;
}

GeneratedLattice generate_lattice(std::size_t d, std::mt19937_64& rng, std::int64_t max_diagonal,
                                  std::int64_t entry_range) {
  if (max_diagonal < 1) throw std::invalid_argument("max_diagonal must be at least 1");
  std::uniform_int_distribution<std::int64_t> dist(1, max_diagonal);
  SquareMatrix diag(d);
  std::vector<std::int64_t> entries(d);
  for (std::size_t i = 0; i < d; ++i) {
    entries[i] = dist(rng);
    diag(i, i) = entries[i];
  }
  const UnimodularMatrix w = random_unimodular(d, entry_range, rng);
  return {apply_transform(w, Basis(std::move(diag))), std::move(entries)};
}

namespace {

QuantileBand band(const std::vector<double>& samples) {
  return {nearest_rank(samples, 50.0), nearest_rank(samples, 10.0), nearest_rank(samples, 90.0)};
}

std::vector<std::int64_t> lengths_at(const RunRecord& r, std::size_t it) {
  return it == 0 ? sorted_squared_lengths(r.initial_basis) : r.entries[it - 1].sorted_squared_lengths;
}

}  // namespace

EnsembleStats summarize(const std::vector<RunRecord>& records,
                        const std::vector<std::vector<std::int64_t>>& minima_squared) {
  if (records.empty()) throw std::invalid_argument("summarize: no records");
  const std::size_t d = records.front().initial_basis.dim();
  const std::size_t iters = records.front().entries.size();
  for (const auto& r : records) {
    if (r.initial_basis.dim() != d || r.entries.size() != iters) {
      throw std::invalid_argument("summarize: records differ in dimension or length");
    }
  }
  const bool normalized = !minima_squared.empty();
  if (normalized && minima_squared.size() != records.size()) {
    throw std::invalid_argument("summarize: one minima vector per record required");
  }

  EnsembleStats s;
  s.iterations = iters;
  s.dim = d;
  s.has_normalized = normalized;
  for (std::size_t it = 0; it <= iters; ++it) {
    std::vector<std::vector<std::int64_t>> all;
    all.reserve(records.size());
    for (const auto& r : records) all.push_back(lengths_at(r, it));
    for (std::size_t rank = 0; rank < d; ++rank) {
      std::vector<double> raw, scaled, relative;
      for (std::size_t ri = 0; ri < records.size(); ++ri) {
        const double len = std::sqrt(static_cast<double>(all[ri][rank]));
        raw.push_back(len);
        if (normalized) {
          const auto& m = minima_squared[ri];
          scaled.push_back(len / (static_cast<double>(rank + 1) * std::sqrt(static_cast<double>(m.front()))));
          relative.push_back(len / std::sqrt(static_cast<double>(m[rank])));
        }
      }
      s.raw.push_back(band(raw));
      if (normalized) {
        s.scaled.push_back(band(scaled));
        s.relative.push_back(band(relative));
      }
    }
  }
  return s;
}

EnsembleResult ensemble(const std::vector<Basis>& bases, const IterationConfig& config_template, std::size_t n_runs,
                        const std::vector<std::vector<std::int64_t>>& minima_squared) {
  if (n_runs < 1) throw std::invalid_argument("n_runs must be at least 1");
  if (bases.empty()) throw std::invalid_argument("ensemble: no bases");
  if (!minima_squared.empty() && minima_squared.size() != bases.size()) {
    throw std::invalid_argument("ensemble: one minima vector per basis required");
  }
  config_template.validate();
  const std::size_t total = bases.size() * n_runs;
  std::vector<std::optional<RunRecord>> slots(total);
  std::vector<std::string> errors(total);

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(total); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    IterationConfig cfg = config_template;
    cfg.seed = derive_seed(config_template.seed, idx);
    try {
      slots[idx] = run(bases[idx / n_runs], cfg);
    } catch (const std::exception& e) {
      errors[idx] = e.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw std::runtime_error("ensemble run failed: " + e);

  EnsembleResult out;
  out.records.reserve(total);
  std::vector<std::vector<std::int64_t>> per_record;
  for (std::size_t i = 0; i < total; ++i) {
    out.records.push_back(std::move(*slots[i]));
    if (!minima_squared.empty()) per_record.push_back(minima_squared[i / n_runs]);
  }
  out.stats = summarize(out.records, per_record);
  return out;
}

SuccessRates success_rates(const std::vector<RunRecord>& records,
                           const std::vector<std::vector<std::int64_t>>& minima_squared) {
  if (records.empty() || minima_squared.size() != records.size()) {
    throw std::invalid_argument("success_rates: one minima vector per record required");
  }
  std::size_t shortest = 0, full = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto final_lengths = sorted_squared_lengths(records[i].final_basis);
    if (final_lengths.front() == minima_squared[i].front()) ++shortest;
    if (final_lengths == minima_squared[i]) ++full;
  }
  const auto n = static_cast<double>(records.size());
  return {static_cast<double>(shortest) / n, static_cast<double>(full) / n};
}

}  // namespace iqoap
