#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "thh/integer.hpp"
#include "thh/matrix.hpp"
#include "thh/zpm.hpp"

namespace thh {

using IntVector = std::vector<Int>;

namespace detail {

inline void axpy(const IntegersModPrimePower& R, IntVector& target, const Int& q, const IntVector& row) {
  for (std::size_t j = 0; j < target.size(); ++j)
    if (row[j] != 0) target[j] = R.sub(target[j], R.mul(q, row[j]));
}

inline bool is_zero_vector(const IntVector& v) {
  for (const auto& c : v)
    if (c != 0) return false;
  return true;
}

}  // namespace detail

/// Howell normal form of the row span of m over Z/p^M.
///
/// Rows are returned in order of strictly increasing pivot column.  Each pivot
/// is a power p^v with v < M, entries above a pivot p^v lie in [0, p^v), and
/// every span element vanishing on the first c coordinates is a combination of
/// the rows whose pivot column is at least c.
inline Matrix<Int> howell_form(const IntegersModPrimePower& R, const Matrix<Int>& m) {
  const std::size_t n = m.cols();
  std::vector<IntVector> pool;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    IntVector r = m.row(i);
    for (auto& c : r) c = R.from_int(c);
    if (!detail::is_zero_vector(r)) pool.push_back(std::move(r));
  }

  std::vector<IntVector> pivots;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t best = pool.size();
    int best_v = kInfinity;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const int v = R.valuation(pool[i][c]);
      if (v < best_v) {
        best_v = v;
        best = i;
      }
    }
    if (best == pool.size()) continue;

    IntVector pivot = std::move(pool[best]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
    const Int unit = R.exact_div_pi(pivot[c], best_v);
    const Int unit_inv = R.unit_inverse(unit);
    for (auto& e : pivot) e = R.mul(e, unit_inv);

    for (auto& r : pool) {
      if (r[c] == 0) continue;
      detail::axpy(R, r, R.exact_div_pi(r[c], best_v), pivot);
    }
    // Annihilator multiple of the pivot row keeps the trailing-span property.
    IntVector shadow = pivot;
    const Int ann = R.pi_power(R.length() - best_v);
    for (auto& e : shadow) e = R.mul(e, ann);
    std::erase_if(pool, [](const IntVector& r) { return detail::is_zero_vector(r); });
    if (!detail::is_zero_vector(shadow)) pool.push_back(std::move(shadow));
    pivots.push_back(std::move(pivot));
  }

  std::vector<std::size_t> pivot_col;
  for (const auto& r : pivots) {
    std::size_t c = 0;
    while (r[c] == 0) ++c;
    pivot_col.push_back(c);
  }
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    const std::size_t c = pivot_col[i];
    const Int& pv = pivots[i][c];
    for (std::size_t h = 0; h < i; ++h) {
      const Int q = pivots[h][c] / pv;
      if (q != 0) detail::axpy(R, pivots[h], q, pivots[i]);
    }
  }

  Matrix<Int> out(pivots.size(), n, Int(0));
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = pivots[i][j];
  return out;
}

/// A Howell basis with cached pivot data, used for canonical coset representatives.
class HowellBasis {
 public:
  HowellBasis() = default;
  HowellBasis(const IntegersModPrimePower& R, const Matrix<Int>& generators)
      : ring_(R), rows_(howell_form(R, generators)), width_(generators.cols()) {
    for (std::size_t i = 0; i < rows_.rows(); ++i) {
      std::size_t c = 0;
      while (rows_(i, c) == 0) ++c;
      pivot_col_.push_back(c);
      pivot_val_.push_back(R.valuation(rows_(i, c)));
    }
  }

  const Matrix<Int>& rows() const { return rows_; }
  std::size_t width() const { return width_; }
  std::size_t size() const { return rows_.rows(); }

  /// Canonical representative of v modulo the span.
  IntVector reduce(IntVector v) const {
    for (auto& c : v) c = ring_->from_int(c);
    for (std::size_t i = 0; i < rows_.rows(); ++i) {
      const std::size_t c = pivot_col_[i];
      if (v[c] == 0) continue;
      const Int q = v[c] / rows_(i, c);
      if (q == 0) continue;
      for (std::size_t j = c; j < width_; ++j)
        if (rows_(i, j) != 0) v[j] = ring_->sub(v[j], ring_->mul(q, rows_(i, j)));
    }
    return v;
  }

  bool contains(const IntVector& v) const { return detail::is_zero_vector(reduce(v)); }

  /// log_p of the number of elements in the span.
  int log_order() const {
    int total = 0;
    for (int v : pivot_val_) total += ring_->length() - v;
    return total;
  }

 private:
  std::optional<IntegersModPrimePower> ring_;
  Matrix<Int> rows_;
  std::size_t width_ = 0;
  std::vector<std::size_t> pivot_col_;
  std::vector<int> pivot_val_;
};

/// Solves x * a = b (x a row vector) over Z/p^M; nullopt when b is not in the row span.
/// The solution is the Howell-reduced tail of (b, 0) against [a | -I].
inline std::optional<IntVector> howell_solve_rows(const IntegersModPrimePower& R, const Matrix<Int>& a,
                                                  const IntVector& b) {
  const std::size_t r = a.rows(), n = a.cols();
  Matrix<Int> augmented(r, n + r, Int(0));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < n; ++j) augmented(i, j) = a(i, j);
    augmented(i, n + i) = R.neg(R.one());
  }
  const HowellBasis basis(R, augmented);
  IntVector target(n + r, Int(0));
  for (std::size_t j = 0; j < n; ++j) target[j] = b[j];
  const IntVector reduced = basis.reduce(std::move(target));
  for (std::size_t j = 0; j < n; ++j)
    if (reduced[j] != 0) return std::nullopt;
  IntVector x(r);
  for (std::size_t i = 0; i < r; ++i) x[i] = reduced[n + i];
  return x;
}

/// Solves m * x = b (x a column vector) over Z/p^M.
inline std::optional<IntVector> howell_solve(const IntegersModPrimePower& R, const Matrix<Int>& m, const IntVector& b) {
  Matrix<Int> t(m.cols(), m.rows(), Int(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return howell_solve_rows(R, t, b);
}

}  // namespace thh
