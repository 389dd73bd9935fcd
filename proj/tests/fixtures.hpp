#pragma once

#include <vector>

#include "iqoap/lattice.hpp"

namespace iqoap::testing {

inline Basis basis_a() { return Basis({{1, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 3, 0}, {0, 0, 0, 4}}); }
inline Basis basis_b() { return Basis({{3, 0, 15, -12}, {0, 4, 3, 8}, {28, -18, 9, 8}, {0, 0, 3, -4}}); }
inline Basis basis_c() { return Basis({{25, 78, 105, 160}, {-3, 32, 18, 64}, {53, 128, 195, 264}, {0, 8, 9, 12}}); }

// Lowest nonzero truncated eigenvalue at k = 2, frozen from a brute force over
// all 256 coefficient vectors in [-1, 2]^4 (computed outside this code base).
inline constexpr std::int64_t kLowestNonzeroK2A = 1;
inline constexpr std::int64_t kLowestNonzeroK2B = 25;
inline constexpr std::int64_t kLowestNonzeroK2C = 68;

// Coefficients of a_1 = [1,0,0,0] in bases b and c (rows of A B^-1, A C^-1).
inline const std::vector<std::int64_t> kShortestInB = {-37, 18, 4, 155};
inline const std::vector<std::int64_t> kShortestInC = {704, -317, -350, 4};

}  // namespace iqoap::testing
