#include "iqoap/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>

namespace iqoap {

SquareMatrix::SquareMatrix(const std::vector<std::vector<std::int64_t>>& rows) : dim_(rows.size()), data_() {
  data_.reserve(dim_ * dim_);
  for (const auto& r : rows) {
    if (r.size() != dim_) throw std::invalid_argument("matrix rows must all have length " + std::to_string(dim_));
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

SquareMatrix::SquareMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows)
    : SquareMatrix(std::vector<std::vector<std::int64_t>>(rows.begin(), rows.end())) {}

SquareMatrix SquareMatrix::identity(std::size_t dim) {
  SquareMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1;
  return m;
}

std::vector<std::vector<std::int64_t>> SquareMatrix::to_rows() const {
  std::vector<std::vector<std::int64_t>> out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i].assign(row(i).begin(), row(i).end());
  return out;
}

std::int64_t determinant(const SquareMatrix& m) {
  const std::size_t n = m.dim();
  if (n == 0) return 1;
  std::vector<__int128> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
  auto at = [&](std::size_t i, std::size_t j) -> __int128& { return a[i * n + j]; };

  int sign = 1;
  __int128 prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        // Every Bareiss intermediate is a minor of the input; the division is exact.
        __int128 lhs, rhs, num;
        if (__builtin_mul_overflow(at(i, j), at(k, k), &lhs) ||
            __builtin_mul_overflow(at(i, k), at(k, j), &rhs) || __builtin_sub_overflow(lhs, rhs, &num)) {
          throw OverflowError("determinant: 128-bit overflow in elimination");
        }
        at(i, j) = num / prev;
      }
      at(i, k) = 0;
    }
    prev = at(k, k);
    narrow_checked(prev);
  }
  return narrow_checked(sign * at(n - 1, n - 1));
}

Basis::Basis(SquareMatrix rows) : rows_(std::move(rows)) {
  if (rows_.dim() < 2) throw std::invalid_argument("basis dimension must be at least 2");
  if (determinant(rows_) == 0) throw std::invalid_argument("basis vectors are linearly dependent");
}

GramMatrix::GramMatrix(SquareMatrix entries) : g_(std::move(entries)) {
  const std::size_t d = g_.dim();
  if (d == 0) throw std::invalid_argument("Gram matrix must be non-empty");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      if (g_(i, j) != g_(j, i)) throw std::invalid_argument("Gram matrix is not symmetric");
  for (std::size_t m = 1; m <= d; ++m) {
    SquareMatrix lead(m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) lead(i, j) = g_(i, j);
    if (determinant(lead) <= 0) throw std::invalid_argument("Gram matrix is not positive definite");
  }
}

UnimodularMatrix::UnimodularMatrix(SquareMatrix entries) : v_(std::move(entries)) {
  if (std::llabs(determinant(v_)) != 1) throw std::invalid_argument("matrix is not unimodular");
}

std::int64_t dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = checked_add(s, checked_mul(a[i], b[i]));
  return s;
}

GramMatrix gram(const Basis& basis) {
  const std::size_t d = basis.dim();
  SquareMatrix g(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      g(i, j) = dot(basis.vector(i), basis.vector(j));
      g(j, i) = g(i, j);
    }
  }
  return GramMatrix(std::move(g));
}

namespace {

SquareMatrix multiply(const SquareMatrix& a, const SquareMatrix& b) {
  const std::size_t d = a.dim();
  SquareMatrix c(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < d; ++j) c(i, j) = checked_add(c(i, j), checked_mul(a(i, k), b(k, j)));
    }
  return c;
}

}  // namespace

UnimodularMatrix unimodular_from_triangular(const SquareMatrix& lower, const SquareMatrix& upper) {
  const std::size_t d = lower.dim();
  if (upper.dim() != d) throw std::invalid_argument("triangular factors differ in size");
  SquareMatrix l = SquareMatrix::identity(d);
  SquareMatrix u = SquareMatrix::identity(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (j < i) l(i, j) = lower(i, j);
      if (j > i) u(i, j) = upper(i, j);
    }
  return UnimodularMatrix(multiply(l, u), true);
}

UnimodularMatrix random_unimodular(std::size_t d, std::int64_t entry_range, std::mt19937_64& rng) {
  if (entry_range < 1) throw std::invalid_argument("entry_range must be at least 1");
  std::uniform_int_distribution<std::int64_t> dist(-entry_range, entry_range);
  SquareMatrix lower(d), upper(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < i; ++j) lower(i, j) = dist(rng);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) upper(i, j) = dist(rng);
  return unimodular_from_triangular(lower, upper);
}

Basis apply_transform(const UnimodularMatrix& v, const Basis& basis) {
  if (v.dim() != basis.dim()) throw std::invalid_argument("apply_transform: dimension mismatch");
  return Basis(multiply(v.matrix(), basis.matrix()));
}

IntVector vector_from_coeffs(const Basis& basis, std::span<const std::int64_t> n) {
  const std::size_t d = basis.dim();
  if (n.size() != d) throw std::invalid_argument("coefficient vector length must equal the dimension");
  IntVector v(d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    if (n[i] == 0) continue;
    auto b = basis.vector(i);
    for (std::size_t j = 0; j < d; ++j) v[j] = checked_add(v[j], checked_mul(n[i], b[j]));
  }
  return v;
}

std::int64_t squared_length(const GramMatrix& g, std::span<const std::int64_t> n) {
  const std::size_t d = g.dim();
  if (n.size() != d) throw std::invalid_argument("coefficient vector length must equal the dimension");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < d; ++i) {
    if (n[i] == 0) continue;
    std::int64_t row = 0;
    for (std::size_t j = 0; j < d; ++j) row = checked_add(row, checked_mul(g(i, j), n[j]));
    s = checked_add(s, checked_mul(n[i], row));
  }
  return s;
}

std::vector<std::size_t> eligible_replacements(const Basis& basis, std::span<const std::int64_t> n) {
  const std::size_t d = basis.dim();
  if (n.size() != d) throw std::invalid_argument("coefficient vector length must equal the dimension");
  std::vector<std::size_t> out;
  if (std::none_of(n.begin(), n.end(), [](std::int64_t x) { return x == 1 || x == -1; })) return out;
  const IntVector v = vector_from_coeffs(basis, n);
  const std::int64_t len = dot(v, v);
  for (std::size_t m = 0; m < d; ++m) {
    if ((n[m] == 1 || n[m] == -1) && len < dot(basis.vector(m), basis.vector(m))) out.push_back(m);
  }
  return out;
}

BasisUpdate update_basis(const Basis& basis, std::span<const std::int64_t> n) {
  const auto eligible = eligible_replacements(basis, n);
  if (eligible.empty()) return {basis, false, std::nullopt};
  std::size_t target = eligible.front();
  std::int64_t longest = dot(basis.vector(target), basis.vector(target));
  for (std::size_t m : eligible) {
    const std::int64_t len = dot(basis.vector(m), basis.vector(m));
    if (len > longest) {
      longest = len;
      target = m;
    }
  }
  SquareMatrix rows = basis.matrix();
  const IntVector v = vector_from_coeffs(basis, n);
  std::copy(v.begin(), v.end(), rows.row(target).begin());
  return {Basis(std::move(rows)), true, target};
}

ShortestVector shortest_vector_exhaustive(const Basis& basis, std::int64_t coeff_radius, std::uint64_t budget) {
  if (coeff_radius < 1) throw std::invalid_argument("coeff_radius must be at least 1");
  const std::size_t d = basis.dim();
  const auto side = static_cast<std::uint64_t>(2 * coeff_radius + 1);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (__builtin_mul_overflow(total, side, &total) || total > budget) {
      throw BudgetExceeded("oracle box exceeds the enumeration budget");
    }
  }
  const GramMatrix g = gram(basis);
  // Odometer in lexicographic order starting at (-r, ..., -r).
  CoefficientVector n(d, -coeff_radius);
  ShortestVector best;
  bool found = false;
  for (std::uint64_t step = 0; step < total; ++step) {
    if (std::any_of(n.begin(), n.end(), [](std::int64_t x) { return x != 0; })) {
      const std::int64_t len = squared_length(g, n);
      if (!found || len < best.squared_length) {
        best = {n, len};
        found = true;
      }
    }
    for (std::size_t pos = d; pos-- > 0;) {
      if (n[pos] < coeff_radius) {
        ++n[pos];
        break;
      }
      n[pos] = -coeff_radius;
    }
  }
  return best;
}

namespace {

// Depth-first search over n_{d-1}, ..., n_0 using G = R^T R:
//   n^T G n = sum_i r_ii^2 (n_i + c_i)^2,  c_i = sum_{j>i} (r_ij / r_ii) n_j.
class PrunedSearch {
 public:
  PrunedSearch(const GramMatrix& g, std::int64_t radius, std::uint64_t budget)
      : g_(g), d_(g.dim()), radius_(radius), budget_(budget), r_(d_ * d_, 0.0), n_(d_, 0) {
    for (std::size_t j = 0; j < d_; ++j) {
      for (std::size_t i = 0; i <= j; ++i) {
        double s = static_cast<double>(g(i, j));
        for (std::size_t l = 0; l < i; ++l) s -= r_[l * d_ + i] * r_[l * d_ + j];
        r_[i * d_ + j] = (i == j) ? std::sqrt(s) : s / r_[i * d_ + i];
      }
    }
    // Every unit vector lies in the box, so the shortest basis vector bounds the search.
    bound_ = g(0, 0);
    for (std::size_t i = 1; i < d_; ++i) bound_ = std::min(bound_, g(i, i));
  }

  ShortestVector run() {
    descend(d_, 0.0);
    return best_;
  }

 private:
  double slack_bound() const { return static_cast<double>(bound_) * (1.0 + 1e-9) + 1e-6; }

  void descend(std::size_t level, double partial) {
    if (level == 0) {
      visit_leaf();
      return;
    }
    const std::size_t i = level - 1;
    const double rii = r_[i * d_ + i];
    double center = 0.0;
    for (std::size_t j = i + 1; j < d_; ++j) center += r_[i * d_ + j] * static_cast<double>(n_[j]);
    center /= rii;
    const double room = slack_bound() - partial;
    if (room < 0.0) return;
    const double half = std::sqrt(room) / rii;
    const auto lo = std::max<std::int64_t>(-radius_, static_cast<std::int64_t>(std::ceil(-center - half)));
    const auto hi = std::min<std::int64_t>(radius_, static_cast<std::int64_t>(std::floor(-center + half)));
    for (std::int64_t v = lo; v <= hi; ++v) {
      if (++nodes_ > budget_) throw BudgetExceeded("oracle enumeration exceeds the node budget");
      n_[i] = v;
      const double t = static_cast<double>(v) + center;
      const double next = partial + rii * rii * t * t;
      if (next <= slack_bound()) descend(i, next);
    }
    n_[i] = 0;
  }

  void visit_leaf() {
    if (std::all_of(n_.begin(), n_.end(), [](std::int64_t x) { return x == 0; })) return;
    const std::int64_t len = squared_length(g_, n_);
    if (len > bound_) return;
    if (!found_ || len < best_.squared_length ||
        (len == best_.squared_length && std::lexicographical_compare(n_.begin(), n_.end(), best_.coeffs.begin(),
                                                                     best_.coeffs.end()))) {
      best_ = {n_, len};
      found_ = true;
      bound_ = len;
    }
  }

  const GramMatrix& g_;
  std::size_t d_;
  std::int64_t radius_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<double> r_;
  CoefficientVector n_;
  std::int64_t bound_ = 0;
  bool found_ = false;
  ShortestVector best_;
};

}  // namespace

ShortestVector shortest_vector_oracle(const Basis& basis, std::int64_t coeff_radius, std::uint64_t budget) {
  if (coeff_radius < 1) throw std::invalid_argument("coeff_radius must be at least 1");
  return PrunedSearch(gram(basis), coeff_radius, budget).run();
}

std::int64_t total_squared_length(const Basis& basis) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < basis.dim(); ++i) s = checked_add(s, dot(basis.vector(i), basis.vector(i)));
  return s;
}

std::vector<std::int64_t> sorted_squared_lengths(const Basis& basis) {
  std::vector<std::int64_t> out;
  out.reserve(basis.dim());
  for (std::size_t i = 0; i < basis.dim(); ++i) out.push_back(dot(basis.vector(i), basis.vector(i)));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace iqoap
