#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "thh/error.hpp"
#include "thh/fin_module.hpp"
#include "thh/integer.hpp"
#include "thh/matrix.hpp"
#include "thh/quotient_ring.hpp"
#include "thh/zpm.hpp"

namespace thh {

/// A finite chain ring: every ideal is a power of the uniformizer, so an entry
/// of minimal valuation divides every other entry.
template <class R>
concept ChainRing = requires(const R& ring, const typename R::Elem& a, int j, const Int& n) {
  { ring.zero() } -> std::same_as<typename R::Elem>;
  { ring.one() } -> std::same_as<typename R::Elem>;
  { ring.from_int(n) } -> std::same_as<typename R::Elem>;
  { ring.pi_power(j) } -> std::same_as<typename R::Elem>;
  { ring.add(a, a) } -> std::same_as<typename R::Elem>;
  { ring.sub(a, a) } -> std::same_as<typename R::Elem>;
  { ring.neg(a) } -> std::same_as<typename R::Elem>;
  { ring.mul(a, a) } -> std::same_as<typename R::Elem>;
  { ring.unit_inverse(a) } -> std::same_as<typename R::Elem>;
  { ring.exact_div_pi(a, j) } -> std::same_as<typename R::Elem>;
  { ring.is_zero(a) } -> std::convertible_to<bool>;
  { ring.equal(a, a) } -> std::convertible_to<bool>;
  { ring.valuation(a) } -> std::convertible_to<int>;
  { ring.length() } -> std::convertible_to<int>;
};

inline ModuleContext module_context(const IntegersModPrimePower& ring) { return {ring.p(), 1, 1, ring.length()}; }
inline ModuleContext module_context(const QuotientRing& ring) { return ring.module_context(); }

/// A matrix together with the chain ring its entries live in.
template <ChainRing R>
struct ChainMatrix {
  using Elem = typename R::Elem;

  R ring;
  Matrix<Elem> entries;

  ChainMatrix(R r, std::size_t rows, std::size_t cols) : ring(std::move(r)), entries(rows, cols, ring.zero()) {}
  ChainMatrix(R r, Matrix<Elem> m) : ring(std::move(r)), entries(std::move(m)) {}

  std::size_t rows() const { return entries.rows(); }
  std::size_t cols() const { return entries.cols(); }
  Elem& operator()(std::size_t i, std::size_t j) { return entries(i, j); }
  const Elem& operator()(std::size_t i, std::size_t j) const { return entries(i, j); }

  static ChainMatrix identity(const R& r, std::size_t n) {
    ChainMatrix out(r, n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = r.one();
    return out;
  }

  bool is_zero() const {
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols(); ++j)
        if (!ring.is_zero(entries(i, j))) return false;
    return true;
  }

  friend bool operator==(const ChainMatrix& a, const ChainMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        if (!a.ring.equal(a(i, j), b(i, j))) return false;
    return true;
  }
};

template <ChainRing R>
ChainMatrix<R> operator*(const ChainMatrix<R>& a, const ChainMatrix<R>& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::ComplexMismatch, "matrix dimensions disagree");
  ChainMatrix<R> out(a.ring, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) {
      if (a.ring.is_zero(a(i, l))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!a.ring.is_zero(b(l, j))) out(i, j) = a.ring.add(out(i, j), a.ring.mul(a(i, l), b(l, j)));
    }
  return out;
}

template <ChainRing R>
std::vector<typename R::Elem> mat_vec(const ChainMatrix<R>& m, const std::vector<typename R::Elem>& x) {
  if (x.size() != m.cols()) throw Error(ErrorCode::ComplexMismatch, "vector length disagrees with matrix");
  std::vector<typename R::Elem> out(m.rows(), m.ring.zero());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m.ring.is_zero(m(i, j)) && !m.ring.is_zero(x[j])) out[i] = m.ring.add(out[i], m.ring.mul(m(i, j), x[j]));
  return out;
}

/// U * A * V = D with D = diag(pi^{c_1}, pi^{c_2}, ...), c_1 <= c_2 <= ...
template <ChainRing R>
struct DiagonalForm {
  /// Length min(rows, cols); kInfinity marks a zero diagonal entry.
  std::vector<int> exponents;
  ChainMatrix<R> D, U, U_inv, V, V_inv;
};

/// Smith-type diagonalization over a chain ring.  The pivot at each step is the
/// first entry (row-major) of globally minimal valuation, normalized to pi^v.
template <ChainRing R>
DiagonalForm<R> snf_chain(const ChainMatrix<R>& m) {
  const R& ring = m.ring;
  const std::size_t rows = m.rows(), cols = m.cols();
  ChainMatrix<R> D = m;
  ChainMatrix<R> U = ChainMatrix<R>::identity(ring, rows), U_inv = U;
  ChainMatrix<R> V = ChainMatrix<R>::identity(ring, cols), V_inv = V;
  std::vector<int> exponents;

  const std::size_t len = std::min(rows, cols);
  bool exhausted = false;
  for (std::size_t t = 0; t < len; ++t) {
    if (exhausted) {
      exponents.push_back(kInfinity);
      continue;
    }
    std::size_t pi = 0, pj = 0;
    int best = kInfinity;
    for (std::size_t i = t; i < rows && best > 0; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        const int v = ring.valuation(D(i, j));
        if (v < best) {
          best = v;
          pi = i;
          pj = j;
          if (v == 0) break;
        }
      }
    if (best == kInfinity) {
      exhausted = true;
      exponents.push_back(kInfinity);
      continue;
    }
    D.entries.swap_rows(t, pi);
    U.entries.swap_rows(t, pi);
    U_inv.entries.swap_cols(t, pi);
    D.entries.swap_cols(t, pj);
    V.entries.swap_cols(t, pj);
    V_inv.entries.swap_rows(t, pj);

    const auto unit = ring.exact_div_pi(D(t, t), best);
    const auto unit_inv = ring.unit_inverse(unit);
    for (std::size_t j = 0; j < cols; ++j) D(t, j) = ring.mul(D(t, j), unit_inv);
    for (std::size_t j = 0; j < rows; ++j) U(t, j) = ring.mul(U(t, j), unit_inv);
    for (std::size_t i = 0; i < rows; ++i) U_inv(i, t) = ring.mul(U_inv(i, t), unit);
    D(t, t) = ring.pi_power(best);

    for (std::size_t i = t + 1; i < rows; ++i) {
      if (ring.is_zero(D(i, t))) continue;
      const auto q = ring.exact_div_pi(D(i, t), best);
      for (std::size_t j = t; j < cols; ++j) D(i, j) = ring.sub(D(i, j), ring.mul(q, D(t, j)));
      for (std::size_t j = 0; j < rows; ++j) U(i, j) = ring.sub(U(i, j), ring.mul(q, U(t, j)));
      for (std::size_t r = 0; r < rows; ++r) U_inv(r, t) = ring.add(U_inv(r, t), ring.mul(q, U_inv(r, i)));
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      if (ring.is_zero(D(t, j))) continue;
      const auto q = ring.exact_div_pi(D(t, j), best);
      D(t, j) = ring.zero();
      for (std::size_t r = 0; r < cols; ++r) V(r, j) = ring.sub(V(r, j), ring.mul(q, V(r, t)));
      for (std::size_t c = 0; c < cols; ++c) V_inv(t, c) = ring.add(V_inv(t, c), ring.mul(q, V_inv(j, c)));
    }
    exponents.push_back(best);
  }
  return DiagonalForm<R>{std::move(exponents), std::move(D), std::move(U), std::move(U_inv), std::move(V),
                         std::move(V_inv)};
}

namespace detail {

/// Per-column kernel exponents s_t: the kernel is the sum over t of pi^{s_t} V e_t.
template <ChainRing R>
std::vector<int> kernel_exponents(const DiagonalForm<R>& form, std::size_t cols, int k) {
  std::vector<int> s(cols, 0);
  for (std::size_t t = 0; t < form.exponents.size(); ++t)
    if (form.exponents[t] != kInfinity) s[t] = k - form.exponents[t];
  return s;
}

}  // namespace detail

/// Generators (as rows) of {x : m x = 0}.
template <ChainRing R>
ChainMatrix<R> kernel_basis(const ChainMatrix<R>& m) {
  const R& ring = m.ring;
  const int k = ring.length();
  const auto form = snf_chain(m);
  const auto s = detail::kernel_exponents(form, m.cols(), k);
  std::vector<std::vector<typename R::Elem>> gens;
  for (std::size_t t = 0; t < m.cols(); ++t) {
    if (s[t] >= k) continue;
    const auto scale = ring.pi_power(s[t]);
    std::vector<typename R::Elem> g;
    for (std::size_t r = 0; r < m.cols(); ++r) g.push_back(ring.mul(scale, form.V(r, t)));
    gens.push_back(std::move(g));
  }
  ChainMatrix<R> out(ring, gens.size(), m.cols());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = gens[i][j];
  return out;
}

/// Some x with m x = b, or nullopt.  Deterministic: the diagonal system is solved
/// with the ring's canonical exact division and free coordinates set to zero.
template <ChainRing R>
std::optional<std::vector<typename R::Elem>> solve(const ChainMatrix<R>& m, const std::vector<typename R::Elem>& b) {
  const R& ring = m.ring;
  if (b.size() != m.rows()) throw Error(ErrorCode::ComplexMismatch, "right-hand side has wrong length");
  const auto form = snf_chain(m);
  const auto rhs = mat_vec(form.U, b);
  std::vector<typename R::Elem> y(m.cols(), ring.zero());
  for (std::size_t t = 0; t < m.rows(); ++t) {
    const int c = t < form.exponents.size() ? form.exponents[t] : kInfinity;
    if (c == kInfinity) {
      if (!ring.is_zero(rhs[t])) return std::nullopt;
      continue;
    }
    if (ring.valuation(rhs[t]) < c) return std::nullopt;
    y[t] = ring.exact_div_pi(rhs[t], c);
  }
  return mat_vec(form.V, y);
}

template <ChainRing R>
struct SubquotientResult {
  FinModule module;
  /// One cycle per cyclic summand, aligned with module.pi_exponents.
  std::vector<std::vector<typename R::Elem>> representatives;
};

/// ker(d_out) / im(d_in) for maps R^l --d_in--> R^n --d_out--> R^m.
template <ChainRing R>
SubquotientResult<R> subquotient_homology(const ChainMatrix<R>& d_in, const ChainMatrix<R>& d_out) {
  const R& ring = d_out.ring;
  const int k = ring.length();
  const std::size_t n = d_out.cols();
  if (d_in.rows() != n) throw Error(ErrorCode::ComplexMismatch, "d_in and d_out do not compose");
  if (!(d_out * d_in).is_zero()) throw Error(ErrorCode::ComplexMismatch, "d_out * d_in != 0");

  const auto form = snf_chain(d_out);
  const auto s = detail::kernel_exponents(form, n, k);
  std::vector<std::size_t> kept;
  for (std::size_t t = 0; t < n; ++t)
    if (s[t] < k) kept.push_back(t);

  // Boundaries in V-coordinates, divided down to kernel-generator coordinates.
  const ChainMatrix<R> W = form.V_inv * d_in;
  const std::size_t g = kept.size(), l = d_in.cols();
  ChainMatrix<R> presentation(ring, g, l + g);
  for (std::size_t a = 0; a < g; ++a) {
    const std::size_t t = kept[a];
    for (std::size_t j = 0; j < l; ++j) presentation(a, j) = ring.exact_div_pi(W(t, j), s[t]);
    presentation(a, l + a) = ring.pi_power(k - s[t]);
  }

  const auto pform = snf_chain(presentation);
  std::vector<std::pair<int, std::vector<typename R::Elem>>> summands;
  for (std::size_t a = 0; a < g; ++a) {
    const int c = a < pform.exponents.size() && pform.exponents[a] != kInfinity ? std::min(pform.exponents[a], k) : k;
    if (c == 0) continue;
    std::vector<typename R::Elem> y(n, ring.zero());
    for (std::size_t b = 0; b < g; ++b) y[kept[b]] = ring.mul(ring.pi_power(s[kept[b]]), pform.U_inv(b, a));
    summands.emplace_back(c, mat_vec(form.V, y));
  }
  std::stable_sort(summands.begin(), summands.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

  SubquotientResult<R> out{FinModule{module_context(ring), {}}, {}};
  for (auto& [c, rep] : summands) {
    out.module.pi_exponents.push_back(c);
    out.representatives.push_back(std::move(rep));
  }
  return out;
}

}  // namespace thh
