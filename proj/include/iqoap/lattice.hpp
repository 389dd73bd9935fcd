#pragma once

// Exact integer lattice algebra. Basis vectors are matrix rows and every
// computation stays in checked int64 arithmetic.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "iqoap/checked.hpp"

namespace iqoap {

using CoefficientVector = std::vector<std::int64_t>;
using IntVector = std::vector<std::int64_t>;

/// Dense row-major square integer matrix.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, 0) {}
  /// Throws std::invalid_argument if the rows are ragged or not square.
  explicit SquareMatrix(const std::vector<std::vector<std::int64_t>>& rows);
  SquareMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

  static SquareMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
  std::span<const std::int64_t> row(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }
  std::span<std::int64_t> row(std::size_t i) { return {data_.data() + i * dim_, dim_}; }
  std::vector<std::vector<std::int64_t>> to_rows() const;

  bool operator==(const SquareMatrix&) const = default;

 private:
  std::size_t dim_ = 0;
  std::vector<std::int64_t> data_;
};

/// Exact determinant by Bareiss fraction-free elimination with row pivoting.
/// Intermediates are held in 128-bit integers; throws OverflowError if a
/// pivot or the result leaves int64.
std::int64_t determinant(const SquareMatrix& m);

/// Lattice basis: d >= 2 linearly independent integer row vectors.
class Basis {
 public:
  /// Throws std::invalid_argument when d < 2 or the rows are dependent.
  explicit Basis(SquareMatrix rows);
  Basis(std::initializer_list<std::initializer_list<std::int64_t>> rows) : Basis(SquareMatrix(rows)) {}

  std::size_t dim() const { return rows_.dim(); }
  const SquareMatrix& matrix() const { return rows_; }
  std::span<const std::int64_t> vector(std::size_t i) const { return rows_.row(i); }

  bool operator==(const Basis&) const = default;

 private:
  SquareMatrix rows_;
};

/// Symmetric positive definite matrix of pairwise scalar products.
class GramMatrix {
 public:
  /// Validates symmetry and positive definiteness (leading principal minors).
  explicit GramMatrix(SquareMatrix entries);
  GramMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) : GramMatrix(SquareMatrix(rows)) {}

  std::size_t dim() const { return g_.dim(); }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return g_(i, j); }
  const SquareMatrix& matrix() const { return g_; }

  bool operator==(const GramMatrix&) const = default;

 private:
  SquareMatrix g_;
};

/// Integer matrix with determinant exactly +1 or -1.
class UnimodularMatrix {
 public:
  /// Throws std::invalid_argument if |det| != 1.
  explicit UnimodularMatrix(SquareMatrix entries);

  std::size_t dim() const { return v_.dim(); }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return v_(i, j); }
  const SquareMatrix& matrix() const { return v_; }

 private:
  UnimodularMatrix(SquareMatrix entries, bool /*trusted*/) : v_(std::move(entries)) {}
  friend UnimodularMatrix unimodular_from_triangular(const SquareMatrix&, const SquareMatrix&);
  SquareMatrix v_;
};

GramMatrix gram(const Basis& basis);

/// Product L·U of a unit lower and a unit upper triangular matrix, the
/// strictly triangular entries of both factors given explicitly.
UnimodularMatrix unimodular_from_triangular(const SquareMatrix& lower, const SquareMatrix& upper);

/// W = L·U with unit diagonals and strictly-triangular entries uniform in
/// [-entry_range, entry_range]. det(W) == 1 always. Draw order: L row-major
/// below the diagonal, then U row-major above it.
UnimodularMatrix random_unimodular(std::size_t d, std::int64_t entry_range, std::mt19937_64& rng);

/// Row i of the result is sum_j V[i][j] * b_j.
Basis apply_transform(const UnimodularMatrix& v, const Basis& basis);

/// sum_i n_i b_i
IntVector vector_from_coeffs(const Basis& basis, std::span<const std::int64_t> n);

/// n^T G n, exact.
std::int64_t squared_length(const GramMatrix& g, std::span<const std::int64_t> n);

std::int64_t dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b);

/// Indices m with |n_m| == 1 (the replacement is unimodular) and
/// n^T G n < G[m][m] (the candidate is strictly shorter than b_m).
std::vector<std::size_t> eligible_replacements(const Basis& basis, std::span<const std::int64_t> n);

struct BasisUpdate {
  Basis basis;
  bool accepted = false;
  std::optional<std::size_t> replaced_index;
};

/// Replaces the longest eligible basis vector (lowest index on ties) by the
/// lattice vector with coefficients n. Returns the input unchanged when no
/// index is eligible.
BasisUpdate update_basis(const Basis& basis, std::span<const std::int64_t> n);

struct ShortestVector {
  CoefficientVector coeffs;
  std::int64_t squared_length = 0;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t{1} << 30;

/// Shortest nonzero lattice vector among coefficients in the box
/// [-radius, radius]^d, ties resolved to the lexicographically smallest
/// coefficient vector. Depth-first enumeration pruned by the Cholesky form of
/// the Gram matrix, so the box may be far larger than the part of it that is
/// visited; the result is the one exhaustive box search would return. Only
/// complete inside the box: a shortest vector that needs larger coefficients
/// is missed. Throws BudgetExceeded after `budget` enumeration nodes.
ShortestVector shortest_vector_oracle(const Basis& basis, std::int64_t coeff_radius,
                                      std::uint64_t budget = kDefaultEnumerationBudget);

/// Plain scan of every box point; throws BudgetExceeded if (2r+1)^d > budget.
ShortestVector shortest_vector_exhaustive(const Basis& basis, std::int64_t coeff_radius,
                                          std::uint64_t budget = kDefaultEnumerationBudget);

/// Sum of the squared lengths of all basis vectors.
std::int64_t total_squared_length(const Basis& basis);

/// Squared lengths of the basis vectors in ascending order.
std::vector<std::int64_t> sorted_squared_lengths(const Basis& basis);

}  // namespace iqoap
