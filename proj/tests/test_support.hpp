#pragma once

// Brute-force oracles shared by the unit tests and the acceptance runner.
// Nothing here calls into Howell or Smith code paths of the library.

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "thh/thh.hpp"

namespace thh::oracle {

/// Every canonical element of a small quotient ring, found by reducing all raw vectors.
inline std::vector<QElem> all_elements(const QuotientRing& ring) {
  const std::size_t n = ring.ambient_rank();
  const Int modulus = ipow(Int(ring.p()), static_cast<unsigned>(ring.precision()));
  std::set<IntVector> seen;
  std::vector<QElem> out;
  IntVector raw(n, Int(0));
  while (true) {
    QElem a = ring.from_rep(raw);
    if (seen.insert(a.rep).second) out.push_back(a);
    std::size_t pos = 0;
    while (pos < n) {
      raw[pos] += 1;
      if (raw[pos] < modulus) break;
      raw[pos] = 0;
      ++pos;
    }
    if (pos == n) break;
  }
  return out;
}

/// Abelian invariants of a finite abelian p-group from the sizes of its p^j-torsion.
///
/// torsion_log[j] = log_p |G[p^j]| for j = 0, 1, ...; the number of cyclic factors of
/// order at least p^j is torsion_log[j] - torsion_log[j-1].
inline AbelianInvariants invariants_from_torsion(const std::vector<int>& torsion_log) {
  AbelianInvariants out;
  std::vector<int> at_least;
  for (std::size_t j = 1; j < torsion_log.size(); ++j) at_least.push_back(torsion_log[j] - torsion_log[j - 1]);
  for (std::size_t j = 0; j < at_least.size(); ++j) {
    const int next = j + 1 < at_least.size() ? at_least[j + 1] : 0;
    if (at_least[j] - next > 0) out[static_cast<int>(j) + 1] = at_least[j] - next;
  }
  return out;
}

inline int log_p(std::size_t n, std::int64_t p) {
  int out = 0;
  while (n > 1) {
    n /= static_cast<std::size_t>(p);
    ++out;
  }
  return out;
}

/// Generic finite subquotient ker/im given explicit element sets, with addition and
/// multiplication by p supplied by the caller. Elements are encoded as keys.
template <class Key>
AbelianInvariants subquotient_by_enumeration(const std::vector<Key>& kernel, const std::set<Key>& image,
                                             const std::function<Key(const Key&)>& times_p, std::int64_t p,
                                             int max_exponent) {
  std::vector<int> torsion_log{0};
  for (int j = 1; j <= max_exponent + 1; ++j) {
    std::size_t count = 0;
    for (const Key& x : kernel) {
      Key y = x;
      for (int s = 0; s < j; ++s) y = times_p(y);
      if (image.count(y)) ++count;
    }
    torsion_log.push_back(log_p(count / image.size(), p));
  }
  return invariants_from_torsion(torsion_log);
}

/// All vectors of length n over the given element list.
template <class E>
std::vector<std::vector<E>> all_vectors(const std::vector<E>& elems, std::size_t n) {
  std::vector<std::vector<E>> out{{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<E>> next;
    for (const auto& v : out)
      for (const auto& e : elems) {
        auto w = v;
        w.push_back(e);
        next.push_back(std::move(w));
      }
    out = std::move(next);
  }
  return out;
}

/// ker(d_out)/im(d_in) over a chain ring by exhaustive enumeration of the ambient module.
template <ChainRing R>
AbelianInvariants brute_force_homology(const ChainMatrix<R>& d_in, const ChainMatrix<R>& d_out,
                                       const std::vector<typename R::Elem>& elems, std::int64_t p) {
  using E = typename R::Elem;
  const R& ring = d_out.ring;
  const std::size_t n = d_out.cols();
  auto key = [&](const std::vector<E>& v) {
    std::vector<IntVector> out;
    for (const auto& e : v) {
      if constexpr (std::is_same_v<E, Int>) {
        out.push_back({e});
      } else {
        out.push_back(e.rep);
      }
    }
    return out;
  };
  using Key = std::vector<IntVector>;
  std::map<Key, std::vector<E>> decode;
  std::vector<Key> kernel;
  for (const auto& v : all_vectors(elems, n)) {
    const Key kv = key(v);
    decode.emplace(kv, v);
    bool zero = true;
    for (const auto& c : mat_vec(d_out, v)) zero = zero && ring.is_zero(c);
    if (zero) kernel.push_back(kv);
  }
  std::set<Key> image;
  for (const auto& v : all_vectors(elems, d_in.cols())) image.insert(key(mat_vec(d_in, v)));
  if (d_in.cols() == 0) image.insert(key(std::vector<E>(n, ring.zero())));
  const E pe = ring.from_int(Int(p));
  std::function<Key(const Key&)> times_p = [&](const Key& k) {
    std::vector<E> v = decode.at(k);
    for (auto& c : v) c = ring.mul(pe, c);
    return key(v);
  };
  int max_exp = 0;
  for (E t = ring.one(); !ring.is_zero(t); t = ring.mul(t, pe)) ++max_exp;
  return subquotient_by_enumeration<Key>(kernel, image, times_p, p, max_exp);
}

template <ChainRing R>
ChainMatrix<R> random_matrix(const R& ring, const std::vector<typename R::Elem>& elems, std::size_t rows,
                             std::size_t cols, std::mt19937& rng) {
  ChainMatrix<R> m(ring, rows, cols);
  std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = elems[pick(rng)];
  return m;
}

/// Random matrix biased towards high valuations, so that non-trivial diagonal forms appear.
template <ChainRing R>
ChainMatrix<R> random_sparse_matrix(const R& ring, const std::vector<typename R::Elem>& elems, std::size_t rows,
                                    std::size_t cols, std::mt19937& rng) {
  ChainMatrix<R> m = random_matrix(ring, elems, rows, cols, rng);
  std::uniform_int_distribution<int> shift(0, ring.length());
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = ring.mul(m(i, j), ring.pi_power(shift(rng)));
  return m;
}

/// U A V = D, D diagonal with normalized pi-powers, U and V invertible, exponents sorted.
template <ChainRing R>
bool check_diagonal_form(const ChainMatrix<R>& m) {
  const R& ring = m.ring;
  const auto form = snf_chain(m);
  if (!(form.U * m * form.V == form.D)) return false;
  if (!(form.U * form.U_inv == ChainMatrix<R>::identity(ring, m.rows()))) return false;
  if (!(form.V * form.V_inv == ChainMatrix<R>::identity(ring, m.cols()))) return false;
  if (form.exponents.size() != std::min(m.rows(), m.cols())) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (i != j && !ring.is_zero(form.D(i, j))) return false;
      if (i == j) {
        const int c = form.exponents[i];
        const auto expected = c == kInfinity ? ring.zero() : ring.pi_power(c);
        if (!ring.equal(form.D(i, i), expected)) return false;
        if (i > 0 && form.exponents[i - 1] > c) return false;
      }
    }
  return true;
}

/// Every element of the row span of m, by enumerating coefficient vectors.
inline std::set<IntVector> row_span(const IntegersModPrimePower& R, const Matrix<Int>& m) {
  std::vector<Int> scalars;
  for (Int a = 0; a < R.modulus(); ++a) scalars.push_back(a);
  std::set<IntVector> out;
  for (const auto& coeffs : all_vectors(scalars, m.rows())) {
    IntVector v(m.cols(), Int(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) v[j] = R.add(v[j], R.mul(coeffs[i], m(i, j)));
    out.insert(v);
  }
  return out;
}

/// Howell membership agrees with exhaustive span enumeration on every vector of the ambient module.
inline bool check_howell_membership(const IntegersModPrimePower& R, const Matrix<Int>& m) {
  const auto span = row_span(R, m);
  const HowellBasis basis(R, m);
  if (static_cast<std::size_t>(boost::multiprecision::pow(Int(R.p()), basis.log_order())) != span.size()) return false;
  std::vector<Int> scalars;
  for (Int a = 0; a < R.modulus(); ++a) scalars.push_back(a);
  for (const auto& v : all_vectors(scalars, m.cols()))
    if (basis.contains(v) != (span.count(v) > 0)) return false;
  return true;
}

/// A random pair (d_in, d_out) with d_out d_in = 0: the columns of d_in are random
/// combinations of kernel vectors of a random d_out found by enumeration.
template <ChainRing R>
std::pair<ChainMatrix<R>, ChainMatrix<R>> random_complex(const R& ring, const std::vector<typename R::Elem>& elems,
                                                         std::size_t l, std::size_t n, std::size_t m,
                                                         std::mt19937& rng) {
  const auto d_out = random_sparse_matrix(ring, elems, m, n, rng);
  std::vector<std::vector<typename R::Elem>> cycles;
  for (const auto& v : all_vectors(elems, n)) {
    bool zero = true;
    for (const auto& c : mat_vec(d_out, v)) zero = zero && ring.is_zero(c);
    if (zero) cycles.push_back(v);
  }
  ChainMatrix<R> d_in(ring, n, l);
  std::uniform_int_distribution<std::size_t> pick(0, cycles.size() - 1);
  for (std::size_t j = 0; j < l; ++j) {
    const auto& z = cycles[pick(rng)];
    for (std::size_t i = 0; i < n; ++i) d_in(i, j) = z[i];
  }
  return {d_in, d_out};
}

/// The verification grid of Eisenstein data.
inline std::vector<CdvrSpec> eisenstein_grid() {
  std::vector<CdvrSpec> out;
  for (std::int64_t p : {2, 3, 5}) {
    out.push_back(CdvrSpec::mixed_over_zp(p, {-p, 1}));
    out.push_back(CdvrSpec::mixed_over_zp(p, {-p, 0, 1}));
    out.push_back(CdvrSpec::mixed_over_zp(p, {-p, 0, 0, 1}));
    out.push_back(CdvrSpec::mixed_over_zp(p, {-p, -p, 1}));
  }
  return out;
}

}  // namespace thh::oracle
