#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "iqoap/encoding.hpp"
#include "iqoap/loop.hpp"
#include "iqoap/seeding.hpp"
#include "iqoap/stats.hpp"

using namespace iqoap;
using namespace iqoap::testing;

namespace {

IterationConfig small_config(std::uint64_t seed, std::size_t iterations = 10) {
  IterationConfig cfg;
  cfg.k = 2;
  cfg.max_iterations = iterations;
  cfg.optimizer.grid_points = 64;
  cfg.seed = seed;
  return cfg;
}

// Invariants every recorded run must satisfy.
void check_run_invariants(const RunRecord& r) {
  const std::int64_t det0 = std::llabs(determinant(r.initial_basis.matrix()));
  Basis current = r.initial_basis;
  std::vector<std::int64_t> prev = sorted_squared_lengths(current);
  for (const auto& e : r.entries) {
    if (e.accepted) {
      REQUIRE(e.accepted_coefficients.has_value());
      REQUIRE(e.replaced_index.has_value());
      const auto& n = *e.accepted_coefficients;
      const std::size_t m = *e.replaced_index;
      const GramMatrix g = gram(current);
      CHECK(std::llabs(n[m]) == 1);
      CHECK(squared_length(g, n) < g(m, m));
      // The replaced vector is the longest eligible one.
      for (std::size_t j : eligible_replacements(current, n)) CHECK(g(j, j) <= g(m, m));
      current = update_basis(current, n).basis;
    } else {
      CHECK_FALSE(e.replaced_index.has_value());
      CHECK_FALSE(e.accepted_coefficients.has_value());
    }
    CHECK(std::llabs(determinant(current.matrix())) == det0);
    CHECK(e.sorted_squared_lengths == sorted_squared_lengths(current));
    for (std::size_t i = 0; i < prev.size(); ++i) CHECK(e.sorted_squared_lengths[i] <= prev[i]);
    prev = e.sorted_squared_lengths;
  }
  CHECK(current == r.final_basis);
  CHECK(replay(r) == r.final_basis);
}

}  // namespace

TEST_CASE("IterationConfig::validate") {
  IterationConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.max_qaoa_retries = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.shots_per_attempt = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.max_iterations = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.k = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("the minimal basis admits no substitution in the k = 2 box") {
  // Exhaustive over all 256 encodable coefficient vectors.
  const Basis a = basis_a();
  const Encoding enc(4, 2);
  for (std::uint64_t idx = 0; idx < enc.n_states(); ++idx) {
    CHECK(eligible_replacements(a, decode(idx, enc)).empty());
  }
  IterationConfig cfg = small_config(3);
  cfg.max_qaoa_retries = 20;
  auto rng = make_rng(3, 0);
  const IterationResult r = iterate_once(a, cfg, rng);
  CHECK_FALSE(r.entry.accepted);
  CHECK(r.entry.qaoa_attempts == 20);
  CHECK(r.basis == a);
  CHECK(r.entry.sorted_squared_lengths == std::vector<std::int64_t>{1, 4, 9, 16});
}

TEST_CASE("injected candidates") {
  const Basis c = basis_c();
  IterationConfig cfg = small_config(0);
  cfg.max_qaoa_retries = 5;
  auto rng = make_rng(0, 0);

  SUBCASE("zero vector is never accepted") {
    std::size_t calls = 0;
    const auto r = iterate_once(c, cfg, rng, [&](std::size_t, std::mt19937_64&) {
      ++calls;
      return std::vector<CoefficientVector>{{0, 0, 0, 0}};
    });
    CHECK_FALSE(r.entry.accepted);
    CHECK(calls == 5);
    CHECK(r.entry.qaoa_attempts == 5);
    CHECK(r.basis == c);
  }

  SUBCASE("first eligible candidate wins, later ones are not consulted") {
    const auto r = iterate_once(c, cfg, rng, [](std::size_t attempt, std::mt19937_64&) {
      if (attempt < 3) return std::vector<CoefficientVector>{{2, 0, 0, 0}};
      return std::vector<CoefficientVector>{{-2, -2, 1, -2}, {0, 0, 0, 1}};
    });
    REQUIRE(r.entry.accepted);
    CHECK(r.entry.qaoa_attempts == 3);
    CHECK(r.entry.replaced_index == 2u);
    CHECK(*r.entry.accepted_coefficients == CoefficientVector{-2, -2, 1, -2});
    CHECK(r.basis == update_basis(c, CoefficientVector{-2, -2, 1, -2}).basis);
    CHECK(std::ranges::find(r.entry.sorted_squared_lengths, 59770) != r.entry.sorted_squared_lengths.end());
  }
}

TEST_CASE("run with one iteration equals iterate_once") {
  IterationConfig cfg = small_config(11, 1);
  const RunRecord rec = run(basis_c(), cfg);
  auto rng = make_rng(11, 0);
  IterationResult step = iterate_once(basis_c(), cfg, rng);
  step.entry.iteration = 1;
  REQUIRE(rec.entries.size() == 1);
  CHECK(rec.entries[0] == step.entry);
  CHECK(rec.final_basis == step.basis);
}

TEST_CASE("runs are deterministic per seed") {
  const IterationConfig cfg = small_config(5);
  const RunRecord r1 = run(basis_c(), cfg);
  const RunRecord r2 = run(basis_c(), cfg);
  CHECK(r1.entries == r2.entries);
  CHECK(r1.final_basis == r2.final_basis);
  const RunRecord other = run(basis_c(), small_config(6));
  CHECK_FALSE(other.entries == r1.entries);
}

TEST_CASE("loop invariants on seeded runs") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    CAPTURE(seed);
    check_run_invariants(run(basis_c(), small_config(seed, 20)));
    check_run_invariants(run(basis_b(), small_config(seed, 10)));
  }
}

TEST_CASE("analytic optimizer drives the same loop") {
  IterationConfig cfg = small_config(2, 15);
  cfg.analytic_optimizer = true;
  const RunRecord r = run(basis_c(), cfg);
  check_run_invariants(r);
  // Both optimizers search the same objective; near-tied optima may pick
  // different gammas, so compare the optimal values.
  const Encoding enc(4, 2);
  const GramMatrix g = gram(basis_c());
  const GammaOptimum sv = optimize_gamma(build_hamiltonian(g, enc), cfg.optimizer);
  const GammaOptimum an = optimize_gamma(ising_coefficients(g, enc), cfg.optimizer);
  CHECK(an.value == doctest::Approx(sv.value).epsilon(1e-9));
}

TEST_CASE("replay rejects a tampered log") {
  RunRecord r = run(basis_c(), small_config(1));
  auto it = std::ranges::find_if(r.entries, [](const IterationEntry& e) { return e.accepted; });
  REQUIRE(it != r.entries.end());
  it->accepted_coefficients = CoefficientVector{0, 0, 0, 0};
  CHECK_THROWS_AS(replay(r), std::runtime_error);
}

TEST_CASE("bad basis typically accepts within 2 to 10 attempts") {
  std::vector<std::size_t> attempts;
  IterationConfig cfg;
  cfg.k = 2;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto rng = make_rng(seed, 0);
    const auto r = iterate_once(basis_c(), cfg, rng);
    attempts.push_back(r.entry.qaoa_attempts);
  }
  const std::size_t median = nearest_rank(attempts, 50.0);
  MESSAGE("median attempts: " << median);
  CHECK(median >= 1);
  CHECK(median <= 10);
}

TEST_CASE("generate_lattice") {
  auto rng = make_rng(77, 0);
  for (int i = 0; i < 20; ++i) {
    const GeneratedLattice lat = generate_lattice(4, rng);
    std::int64_t prod = 1;
    for (auto x : lat.diagonal) {
      CHECK(x >= 1);
      CHECK(x <= 4);
      prod *= x;
    }
    CHECK(std::llabs(determinant(lat.basis.matrix())) == prod);
    const auto m = lat.minima_squared();
    CHECK(std::ranges::is_sorted(m));
  }
  CHECK_THROWS_AS(generate_lattice(4, rng, 0), std::invalid_argument);
}

TEST_CASE("summarize") {
  const RunRecord r = run(basis_c(), small_config(4, 5));
  SUBCASE("single run collapses the bands") {
    const EnsembleStats s = summarize({r});
    CHECK(s.iterations == 5);
    CHECK(s.dim == 4);
    CHECK_FALSE(s.has_normalized);
    REQUIRE(s.raw.size() == 6 * 4);
    const auto init = sorted_squared_lengths(basis_c());
    for (std::size_t rank = 0; rank < 4; ++rank) {
      const auto& b0 = s.raw_at(0, rank);
      CHECK(b0.median == std::sqrt(static_cast<double>(init[rank])));
      const auto& b = s.raw_at(5, rank);
      CHECK(b.median == b.q10);
      CHECK(b.median == b.q90);
      CHECK(b.median == std::sqrt(static_cast<double>(r.entries.back().sorted_squared_lengths[rank])));
    }
  }
  SUBCASE("normalized bands") {
    const EnsembleStats s = summarize({r}, {{1, 4, 9, 16}});
    REQUIRE(s.has_normalized);
    const auto init = sorted_squared_lengths(basis_c());
    for (std::size_t rank = 0; rank < 4; ++rank) {
      const double len = std::sqrt(static_cast<double>(init[rank]));
      CHECK(s.scaled[rank].median == doctest::Approx(len / static_cast<double>(rank + 1)));
      CHECK(s.relative[rank].median == doctest::Approx(len / static_cast<double>(rank + 1)));
    }
  }
  SUBCASE("mismatched input") {
    CHECK_THROWS_AS(summarize({}), std::invalid_argument);
    CHECK_THROWS_AS(summarize({r, run(basis_c(), small_config(4, 3))}), std::invalid_argument);
    CHECK_THROWS_AS(summarize({r}, {{1}, {1}}), std::invalid_argument);
  }
}

TEST_CASE("ensemble and success rates") {
  const IterationConfig cfg = small_config(9, 5);
  const EnsembleResult e = ensemble({basis_c(), basis_b()}, cfg, 3, {{1, 4, 9, 16}, {1, 4, 9, 16}});
  REQUIRE(e.records.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    IterationConfig c = cfg;
    c.seed = derive_seed(cfg.seed, i);
    const RunRecord expect = run(i < 3 ? basis_c() : basis_b(), c);
    CHECK(e.records[i].entries == expect.entries);
  }
  CHECK(e.stats.has_normalized);

  RunRecord solved{basis_c(), basis_a(), {}};
  RunRecord partial{basis_c(), Basis({{1, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 3, 0}, {0, 0, 1, 8}}), {}};
  RunRecord unsolved{basis_c(), basis_c(), {}};
  const std::vector<std::int64_t> m{1, 4, 9, 16};
  const SuccessRates s = success_rates({solved, partial, unsolved, solved}, {m, m, m, m});
  CHECK(s.shortest_found == 0.75);
  CHECK(s.full_basis == 0.5);
}
