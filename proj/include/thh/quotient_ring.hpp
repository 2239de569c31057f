#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thh/cdvr.hpp"
#include "thh/error.hpp"
#include "thh/galois_ring.hpp"
#include "thh/howell.hpp"
#include "thh/integer.hpp"
#include "thh/matrix.hpp"
#include "thh/zpm.hpp"

namespace thh {

/// Numbers describing a chain ring well enough to turn pi-exponents into
/// abelian group invariants.
struct ModuleContext {
  std::int64_t p = 2;
  int f = 1;
  /// Ramification index; 0 means equal characteristic.
  int e = 1;
  /// Nilpotency index of the uniformizer.
  int k = 1;

  friend bool operator==(const ModuleContext&, const ModuleContext&) = default;
};

namespace detail {

struct QuotientRingImpl {
  CdvrSpec cdvr;
  int k = 1;
  int M = 1;
  /// Number of z-powers in the ambient module: e (mixed) or k (equal).
  int zdeg = 1;
  int f = 1;
  std::optional<GaloisRing> gr;
  std::optional<IntegersModPrimePower> zp;
  /// Lower coefficients of the monic modulus polynomial in z.
  std::vector<GaloisRingElem> modulus;
  HowellBasis relation;
  /// pi_power_bases[j]: Howell basis of pi^j A' (with the relation) in the ambient module.
  std::vector<HowellBasis> pi_power_bases;
  /// division_bases[j]: Howell basis of [pi^j * basis | I], used to solve b * pi^j = a.
  std::vector<HowellBasis> division_bases;

  std::size_t rank() const { return static_cast<std::size_t>(zdeg) * static_cast<std::size_t>(f); }

  std::vector<GaloisRingElem> split(const IntVector& rep) const {
    std::vector<GaloisRingElem> out;
    out.reserve(zdeg);
    for (int i = 0; i < zdeg; ++i)
      out.push_back(GaloisRingElem{IntVector(rep.begin() + i * f, rep.begin() + (i + 1) * f)});
    return out;
  }

  /// Multiplies two ambient vectors in GR[z]/(modulus) without canonicalizing.
  IntVector raw_mul(const IntVector& a, const IntVector& b) const {
    const auto as = split(a);
    const auto bs = split(b);
    std::vector<GaloisRingElem> prod(2 * zdeg - 1, gr->zero());
    for (int i = 0; i < zdeg; ++i) {
      if (gr->is_zero(as[i])) continue;
      for (int j = 0; j < zdeg; ++j) {
        if (gr->is_zero(bs[j])) continue;
        prod[i + j] = gr->add(prod[i + j], gr->mul(as[i], bs[j]));
      }
    }
    for (int d = 2 * zdeg - 2; d >= zdeg; --d) {
      if (gr->is_zero(prod[d])) continue;
      for (int i = 0; i < zdeg; ++i)
        if (!gr->is_zero(modulus[i])) prod[d - zdeg + i] = gr->sub(prod[d - zdeg + i], gr->mul(prod[d], modulus[i]));
    }
    IntVector out;
    out.reserve(rank());
    for (int i = 0; i < zdeg; ++i) out.insert(out.end(), prod[i].coeffs.begin(), prod[i].coeffs.end());
    return out;
  }

  IntVector z_power(int j) const {
    IntVector x(rank(), Int(0)), zv(rank(), Int(0));
    x[0] = 1;
    if (zdeg == 1) {
      // z = -phi_0 when the ambient ring is GR itself.
      zv = gr->neg(modulus[0]).coeffs;
    } else {
      zv[f] = 1;
    }
    for (int s = 0; s < j; ++s) x = raw_mul(x, zv);
    return x;
  }

  Matrix<Int> multiplication_rows(const IntVector& by) const {
    const std::size_t n = rank();
    Matrix<Int> m(n, n, Int(0));
    for (std::size_t b = 0; b < n; ++b) {
      IntVector unit(n, Int(0));
      unit[b] = 1;
      const IntVector img = raw_mul(unit, by);
      for (std::size_t c = 0; c < n; ++c) m(b, c) = img[c];
    }
    return m;
  }
};

inline Matrix<Int> stack(const Matrix<Int>& top, const Matrix<Int>& bottom) {
  Matrix<Int> out(top.rows() + bottom.rows(), top.cols(), Int(0));
  for (std::size_t i = 0; i < top.rows(); ++i)
    for (std::size_t j = 0; j < top.cols(); ++j) out(i, j) = top(i, j);
  for (std::size_t i = 0; i < bottom.rows(); ++i)
    for (std::size_t j = 0; j < bottom.cols(); ++j) out(top.rows() + i, j) = bottom(i, j);
  return out;
}

}  // namespace detail

/// An element of a finite chain ring A' = A/pi^k, stored as its canonical
/// coset representative in the ambient free Z/p^M-module.
struct QElem {
  std::shared_ptr<const detail::QuotientRingImpl> owner;
  IntVector rep;

  friend bool operator==(const QElem& a, const QElem& b) { return a.owner == b.owner && a.rep == b.rep; }
};

/// The chain ring A/pi^k for a CDVR A, modelled as GR(p^M, f)[z]/(phi) modulo
/// the submodule pi^k (mixed), or F_q[z]/z^k (equal characteristic).
class QuotientRing {
 public:
  using Elem = QElem;

  QuotientRing(const CdvrSpec& cdvr, int k) {
    validate(cdvr);
    if (k < 1) throw Error(ErrorCode::KOutOfRange, "quotient exponent k must be >= 1");
    auto impl = std::make_shared<detail::QuotientRingImpl>();
    impl->cdvr = cdvr;
    impl->k = k;
    impl->f = cdvr.f;
    if (cdvr.mixed()) {
      impl->M = ceil_div(k, cdvr.e());
      impl->zdeg = cdvr.e();
    } else {
      impl->M = 1;
      impl->zdeg = k;
    }
    impl->gr.emplace(base_ring(cdvr, impl->M));
    impl->zp.emplace(cdvr.p, impl->M);
    for (int i = 0; i < impl->zdeg; ++i)
      impl->modulus.push_back(cdvr.mixed() ? impl->gr->from_coeffs(cdvr.phi[i]) : impl->gr->zero());

    const std::size_t n = impl->rank();
    const Matrix<Int> none(0, n, Int(0));
    // pi^k * (ambient) spans the relation submodule; p^M is already zero in the coordinates.
    impl->relation = cdvr.mixed() ? HowellBasis(*impl->zp, impl->multiplication_rows(impl->z_power(k)))
                                  : HowellBasis(*impl->zp, none);
    for (int j = 0; j <= k; ++j) {
      const Matrix<Int> image = impl->multiplication_rows(impl->z_power(j));
      const Matrix<Int> with_rel = detail::stack(image, impl->relation.rows());
      impl->pi_power_bases.emplace_back(*impl->zp, with_rel);

      Matrix<Int> augmented(with_rel.rows(), n + with_rel.rows(), Int(0));
      for (std::size_t r = 0; r < with_rel.rows(); ++r) {
        for (std::size_t c = 0; c < n; ++c) augmented(r, c) = with_rel(r, c);
        augmented(r, n + r) = 1;
      }
      impl->division_bases.emplace_back(*impl->zp, augmented);
    }
    impl_ = std::move(impl);

    const int log_order = static_cast<int>(n) * impl_->M - impl_->relation.log_order();
    if (log_order != cdvr.f * k)
      throw Error(ErrorCode::SpecMismatch, "internal: |A/pi^k| != q^k (log_p order " + std::to_string(log_order) + ")");
  }

  const CdvrSpec& cdvr() const { return impl_->cdvr; }
  std::int64_t p() const { return impl_->cdvr.p; }
  int ramification() const { return impl_->cdvr.e(); }
  int residue_degree() const { return impl_->f; }
  int length() const { return impl_->k; }
  /// Working precision: the ambient coordinates live in Z/p^M.
  int precision() const { return impl_->M; }
  std::size_t ambient_rank() const { return impl_->rank(); }
  bool mixed() const { return impl_->cdvr.mixed(); }
  const GaloisRing& galois_ring() const { return *impl_->gr; }
  const IntegersModPrimePower& coordinate_ring() const { return *impl_->zp; }
  const HowellBasis& relation_basis() const { return impl_->relation; }
  const HowellBasis& pi_power_basis(int j) const { return impl_->pi_power_bases.at(j); }
  ModuleContext module_context() const { return {p(), impl_->f, ramification(), impl_->k}; }
  /// log_p |A'|.
  int log_order() const { return impl_->f * impl_->k; }

  bool same_ring(const QuotientRing& other) const {
    return impl_ == other.impl_ || (impl_->k == other.impl_->k && impl_->cdvr == other.impl_->cdvr);
  }

  /// Canonical element from an arbitrary ambient vector.
  QElem from_rep(IntVector raw) const {
    if (raw.size() != ambient_rank()) throw Error(ErrorCode::SpecMismatch, "ambient vector has wrong length");
    return QElem{impl_, impl_->relation.reduce(std::move(raw))};
  }
  QElem from_int(const Int& n) const {
    IntVector raw(ambient_rank(), Int(0));
    raw[0] = n;
    return from_rep(std::move(raw));
  }
  QElem from_galois(const GaloisRingElem& a) const {
    IntVector raw(ambient_rank(), Int(0));
    for (int j = 0; j < impl_->f; ++j) raw[j] = a.coeffs.at(j);
    return from_rep(std::move(raw));
  }
  QElem zero() const { return from_int(0); }
  QElem one() const { return from_int(1); }
  QElem pi() const { return pi_power(1); }
  QElem pi_power(int j) const {
    if (j >= impl_->k) return zero();
    return from_rep(impl_->z_power(j));
  }
  /// t, the generator of the residue extension.
  QElem t() const {
    IntVector raw(ambient_rank(), Int(0));
    if (impl_->f > 1) raw[1] = 1;
    else raw[0] = impl_->gr->neg(GaloisRingElem{{impl_->gr->spec().u[0]}}).coeffs[0];
    return from_rep(std::move(raw));
  }

  QElem add(const QElem& a, const QElem& b) const {
    check(a);
    check(b);
    IntVector out = a.rep;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = impl_->zp->add(out[i], b.rep[i]);
    return from_rep(std::move(out));
  }
  QElem neg(const QElem& a) const {
    check(a);
    IntVector out = a.rep;
    for (auto& c : out) c = impl_->zp->neg(c);
    return from_rep(std::move(out));
  }
  QElem sub(const QElem& a, const QElem& b) const { return add(a, neg(b)); }
  QElem mul(const QElem& a, const QElem& b) const {
    check(a);
    check(b);
    return from_rep(impl_->raw_mul(a.rep, b.rep));
  }
  QElem scale(const QElem& a, const Int& n) const { return mul(a, from_int(n)); }
  QElem pow(QElem base, unsigned exp) const {
    QElem result = one();
    while (exp > 0) {
      if (exp & 1U) result = mul(result, base);
      base = mul(base, base);
      exp >>= 1U;
    }
    return result;
  }

  bool is_zero(const QElem& a) const {
    check(a);
    return detail::is_zero_vector(a.rep);
  }
  bool equal(const QElem& a, const QElem& b) const {
    check(a);
    check(b);
    return a.rep == b.rep;
  }
  bool contains(const QElem& a) const { return a.owner == impl_; }

  /// Largest j with a in pi^j A', by membership in the Howell bases; kInfinity for zero.
  int valuation(const QElem& a) const {
    check(a);
    if (is_zero(a)) return kInfinity;
    int j = 0;
    while (j + 1 < impl_->k && impl_->pi_power_bases[j + 1].contains(a.rep)) ++j;
    return j;
  }
  bool is_unit(const QElem& a) const { return valuation(a) == 0; }

  /// Any b with b * pi^j = a, made deterministic by reducing modulo the annihilator pi^{k-j}.
  QElem exact_div_pi(const QElem& a, int j) const {
    check(a);
    if (j < 0 || j > impl_->k) throw Error(ErrorCode::NotDivisible, "division exponent out of range");
    if (is_zero(a)) return zero();
    if (valuation(a) < j) throw Error(ErrorCode::NotDivisible, to_string(a) + " is not divisible by pi^" + std::to_string(j));
    const std::size_t n = ambient_rank();
    const HowellBasis& basis = impl_->division_bases[j];
    IntVector target(basis.width(), Int(0));
    for (std::size_t c = 0; c < n; ++c) target[c] = a.rep[c];
    const IntVector reduced = basis.reduce(std::move(target));
    IntVector witness(n);
    for (std::size_t c = 0; c < n; ++c) witness[c] = impl_->zp->neg(reduced[n + c]);
    return from_rep(impl_->pi_power_bases[impl_->k - j].reduce(std::move(witness)));
  }

  /// a = unit * pi^v with v = valuation(a).
  std::pair<QElem, int> unit_part(const QElem& a) const {
    if (is_zero(a)) throw Error(ErrorCode::ZeroElement, "unit_part of zero");
    const int v = valuation(a);
    return {exact_div_pi(a, v), v};
  }

  /// Residue-field inverse of the z^0 coefficient, lifted by Newton iteration.
  QElem unit_inverse(const QElem& a) const {
    if (!is_unit(a)) throw Error(ErrorCode::NonUnit, to_string(a) + " is not a unit");
    const GaloisRingElem lead{IntVector(a.rep.begin(), a.rep.begin() + impl_->f)};
    QElem b = from_galois(impl_->gr->inv(lead));
    const QElem two = from_int(2);
    for (int precision = 1; precision < impl_->k; precision *= 2) b = mul(b, sub(two, mul(a, b)));
    return b;
  }

  /// phi'(pi) (mixed characteristic), as an element of this ring.
  QElem phi_prime() const {
    if (!mixed()) throw Error(ErrorCode::SpecMismatch, "phi' is defined in mixed characteristic only");
    const int e = ramification();
    IntVector raw(ambient_rank(), Int(0));
    for (int i = 1; i <= e; ++i) {
      const GaloisRingElem c = impl_->gr->scale(impl_->gr->from_coeffs(impl_->cdvr.phi[i]), Int(i));
      for (int j = 0; j < impl_->f; ++j) raw[(i - 1) * impl_->f + j] = c.coeffs[j];
    }
    return from_rep(std::move(raw));
  }

  /// Image of an element of another quotient of the same CDVR: a projection when
  /// the source is larger, an (arbitrary) lift when it is smaller.
  QElem map_from(const QElem& a) const {
    if (!a.owner || !(a.owner->cdvr == impl_->cdvr))
      throw Error(ErrorCode::SpecMismatch, "map_from needs a quotient of the same CDVR");
    IntVector raw(ambient_rank(), Int(0));
    const std::size_t n = std::min(raw.size(), a.rep.size());
    for (std::size_t i = 0; i < n; ++i) raw[i] = impl_->zp->from_int(a.rep[i]);
    return from_rep(std::move(raw));
  }

  std::string to_string(const QElem& a) const {
    check(a);
    const auto parts = impl_->split(a.rep);
    std::string out;
    for (int i = 0; i < impl_->zdeg; ++i) {
      if (impl_->gr->is_zero(parts[i])) continue;
      std::string c = impl_->gr->to_string(parts[i]);
      const bool compound = c.find('+') != std::string::npos;
      std::string term;
      if (i == 0) {
        term = c;
      } else {
        if (c != "1") term = compound ? "(" + c + ")" : c;
        term += "π";
        if (i > 1) term += "^" + std::to_string(i);
      }
      if (!out.empty()) out += " + ";
      out += term;
    }
    return out.empty() ? "0" : out;
  }

  friend bool operator==(const QuotientRing& a, const QuotientRing& b) { return a.same_ring(b); }

  /// The ring an element belongs to.
  static QuotientRing of(const QElem& a) {
    if (!a.owner) throw Error(ErrorCode::SpecMismatch, "element has no ring");
    return QuotientRing(a.owner);
  }

 private:
  explicit QuotientRing(std::shared_ptr<const detail::QuotientRingImpl> impl) : impl_(std::move(impl)) {}

  void check(const QElem& a) const {
    if (a.owner != impl_ && !(a.owner && a.owner->k == impl_->k && a.owner->cdvr == impl_->cdvr))
      throw Error(ErrorCode::SpecMismatch, "element belongs to a different ring");
  }

  std::shared_ptr<const detail::QuotientRingImpl> impl_;
};

inline QElem operator+(const QElem& a, const QElem& b) { return QuotientRing::of(a).add(a, b); }
inline QElem operator-(const QElem& a, const QElem& b) { return QuotientRing::of(a).sub(a, b); }
inline QElem operator-(const QElem& a) { return QuotientRing::of(a).neg(a); }
inline QElem operator*(const QElem& a, const QElem& b) { return QuotientRing::of(a).mul(a, b); }

/// v_pi(phi'(pi)), found by evaluating in A/pi^K for growing K until the
/// valuation is strictly below the cap.
inline int phi_prime_valuation(const CdvrSpec& cdvr) {
  if (!cdvr.mixed()) throw Error(ErrorCode::SpecMismatch, "phi' is defined in mixed characteristic only");
  for (int K = cdvr.e() + 1;; K *= 2) {
    const QuotientRing ring(cdvr, K);
    const int v = ring.valuation(ring.phi_prime());
    if (v < K) return v;
  }
}

}  // namespace thh
