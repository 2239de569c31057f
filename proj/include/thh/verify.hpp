#pragma once

#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "thh/chain_linalg.hpp"
#include "thh/closed_forms.hpp"
#include "thh/dga.hpp"
#include "thh/howell.hpp"

namespace thh::verify {

struct CaseResult {
  std::string key;
  bool pass = false;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  std::vector<CaseResult> cases;

  bool passed() const {
    for (const auto& c : cases)
      if (!c.pass) return false;
    return true;
  }
  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& c : cases) n += !c.pass;
    return n;
  }
};

/// phi in {z - p, z^2 - p, z^3 - p, z^2 - p z - p} for p in {2, 3, 5}.
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

/// p = 3, phi = z^7 - 3, k = 8: neither closed-form regime applies.
inline CdvrSpec in_between_cdvr() { return CdvrSpec::mixed_over_zp(3, {-3, 0, 0, 0, 0, 0, 0, 1}); }
inline constexpr int kInBetweenK = 8;

namespace detail {

inline std::string key_of(const CdvrSpec& spec, int k) { return describe(spec) + " k=" + std::to_string(k); }

/// Runs check over degrees 0..max and reports the first failing degree.
inline CaseResult over_degrees(const std::string& key, int max, const std::function<std::string(int)>& check) {
  for (int n = 0; n <= max; ++n) {
    const std::string failure = check(n);
    if (!failure.empty()) return {key, false, "degree " + std::to_string(n) + ": " + failure};
  }
  return {key, true, "degrees 0.." + std::to_string(max)};
}

inline std::string mismatch(const std::string& got, const std::string& expected) {
  return got == expected ? "" : "got " + got + ", expected " + expected;
}

inline bool is_boundary(const DgaSpec& spec, const ChainElt& z) {
  if (z.is_zero()) return true;
  return solve(differential_matrix(spec, z.degree + 1), to_vector(spec, z, z.degree)).has_value();
}

inline SuiteResult brun() {
  SuiteResult out{"brun", {}};
  for (std::int64_t p : {2, 3, 5})
    for (int k : {2, 3, 4}) {
      const auto cdvr = CdvrSpec::mixed_over_zp(p, {-p, 1});
      const auto s = DgaSpec::quotient_thh(cdvr, k);
      out.cases.push_back(over_degrees(key_of(cdvr, k), 20, [&](int n) {
        return mismatch(abelian_to_string(p, homology(s, n).module.abelian()),
                        abelian_to_string(p, brun_invariants(p, k, n)));
      }));
    }
  return out;
}

inline SuiteResult bokstedt() {
  SuiteResult out{"bokstedt", {}};
  const std::vector<std::tuple<std::int64_t, int, std::vector<Int>>> fields{
      {2, 1, {0, 1}}, {3, 1, {0, 1}}, {2, 2, {1, 1, 1}}, {5, 1, {0, 1}}, {3, 2, {1, 0, 1}}};
  for (const auto& [p, f, u] : fields)
    for (const auto& cdvr : {CdvrSpec::mixed_over_witt(p, f, u, {-p, 1}), CdvrSpec::equal_char(p, f, u)}) {
      const auto s = DgaSpec::quotient_thh(cdvr, 1);
      out.cases.push_back(over_degrees(key_of(cdvr, 1), 20, [&](int n) {
        const auto h = homology(s, n).module;
        const AbelianInvariants expected = n % 2 ? AbelianInvariants{} : AbelianInvariants{{1, f}};
        return mismatch(abelian_to_string(p, h.abelian()), abelian_to_string(p, expected));
      }));
    }
  return out;
}

inline SuiteResult regimes() {
  SuiteResult out{"regimes", {}};
  for (const auto& cdvr : eisenstein_grid())
    for (int k = 1; k <= 6; ++k) {
      const auto s = DgaSpec::quotient_thh(cdvr, k);
      const auto r = classify(s.ring);
      if (!r.ksmall && !r.kbig) {
        out.cases.push_back({key_of(cdvr, k) + " " + regime_name(r), true, "no closed form applies"});
        continue;
      }
      std::vector<FinModule> h;
      for (int n = 0; n <= 16; ++n) h.push_back(homology(s, n).module);
      if (r.ksmall)
        out.cases.push_back(over_degrees(key_of(cdvr, k) + " ksmall", 16, [&](int n) {
          return mismatch(h[n].to_string(), ksmall_invariants(s.ring, n).to_string());
        }));
      if (r.kbig)
        out.cases.push_back(over_degrees(key_of(cdvr, k) + " kbig", 16, [&](int n) {
          return mismatch(h[n].to_string(), kbig_invariants(s.ring, n).to_string());
        }));
    }
  return out;
}

inline SuiteResult degree_two() {
  SuiteResult out{"degree-two", {}};
  std::vector<std::pair<CdvrSpec, int>> rings;
  for (const auto& cdvr : eisenstein_grid())
    for (int k = 1; k <= 6; ++k) rings.emplace_back(cdvr, k);
  rings.emplace_back(in_between_cdvr(), kInBetweenK);
  for (const auto& [cdvr, k] : rings) {
    const auto s = DgaSpec::quotient_thh(cdvr, k);
    const auto got = homology(s, 2).module.to_string(), expected = degree_two_module(s.ring).module.to_string();
    out.cases.push_back({key_of(cdvr, k), got == expected, mismatch(got, expected)});
  }
  return out;
}

inline SuiteResult lm() {
  SuiteResult out{"lm", {}};
  for (const auto& cdvr : eisenstein_grid()) {
    auto check = [&](bool log) {
      for (int n = 1; n <= 12; ++n) {
        const int K = lm_precision_cap(cdvr, n);
        const auto s = log ? DgaSpec::log_cdvr(cdvr, K) : DgaSpec::cdvr_with_coeffs(cdvr, K);
        const auto got = homology(s, 2 * n - 1).module;
        const auto expected = log ? log_lm_module(cdvr, n).module : lm_module(cdvr, n).module;
        if (!(got == expected))
          return CaseResult{describe(cdvr) + (log ? " log" : ""), false,
                            "n=" + std::to_string(n) + ": " + mismatch(got.to_string(), expected.to_string())};
      }
      return CaseResult{describe(cdvr) + (log ? " log" : ""), true, "n=1..12"};
    };
    out.cases.push_back(check(false));
    out.cases.push_back(check(true));
  }
  return out;
}

inline SuiteResult in_between() {
  SuiteResult out{"inbetween", {}};
  const auto s = DgaSpec::quotient_thh(in_between_cdvr(), kInBetweenK);
  const auto r = classify(s.ring);
  out.cases.push_back({"regime", regime_name(r) == "inBetween", regime_name(r)});
  const auto gens = degree_two_generators(s);
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const auto cube = power(s, gens[g], 3);
    const std::string name = "generator " + std::to_string(g + 1) + " cubed";
    out.cases.push_back({name + " nonzero in H_6", !is_boundary(s, cube), to_string(s, cube)});
    out.cases.push_back({name + " divisible by pi", divisibility_query(s, cube, s.ring.pi()), ""});
    out.cases.push_back({name + " not divisible by p", !divisibility_query(s, cube, s.ring.from_int(3)), ""});
  }
  return out;
}

inline SuiteResult divided_powers() {
  SuiteResult out{"divided-powers", {}};
  for (const auto& cdvr : eisenstein_grid())
    for (int k = 1; k <= 6; ++k) {
      const auto s = DgaSpec::quotient_thh(cdvr, k);
      if (!classify(s.ring).kbig) continue;
      const auto fam = divided_power_family(s, 8);
      std::string failure;
      for (int i = 0; i <= 8 && failure.empty(); ++i)
        if (!differential(s, fam.powers[i]).is_zero()) failure = "power " + std::to_string(i) + " is not a cycle";
      for (int r = 0; r <= 8 && failure.empty(); ++r)
        for (int q = 0; r + q <= 8 && failure.empty(); ++q) {
          const auto lhs = multiply(s, fam.powers[r], fam.powers[q]);
          const auto rhs = scale(s, s.ring.from_int(binomial(r + q, r)), fam.powers[r + q]);
          if (!is_boundary(s, sub(s, lhs, rhs)))
            failure = "product law fails for r=" + std::to_string(r) + " s=" + std::to_string(q);
        }
      out.cases.push_back({key_of(cdvr, k), failure.empty(), failure});
    }
  return out;
}

inline SuiteResult differential_identities() {
  SuiteResult out{"differential", {}};
  for (const auto& cdvr : eisenstein_grid())
    for (int k : {1, 2, 3, 4, 5, 6}) {
      const auto s = DgaSpec::quotient_thh(cdvr, k);
      std::string failure;
      for (int n = 1; n <= 20 && failure.empty(); ++n)
        if (!(differential_matrix(s, n) * differential_matrix(s, n + 1)).is_zero())
          failure = "d^2 != 0 out of degree " + std::to_string(n + 1);
      // d(x^a y^[b]) = d(x^a) y^[b] + x^a d(y) y^[b-1] on every even basis element.
      const auto dy = differential(s, monomial(s, {0, 1, 0}));
      for (int n = 2; n <= 20 && failure.empty(); n += 2)
        for (const auto& b : basis(s, n)) {
          const auto xa = monomial(s, {b.i, 0, 0});
          ChainElt expected = multiply(s, differential(s, xa), monomial(s, {0, b.j, 0}));
          if (b.j > 0) expected = add(s, expected, multiply(s, xa, multiply(s, dy, monomial(s, {0, b.j - 1, 0}))));
          if (!(differential(s, monomial(s, b)) == expected)) {
            failure = "PD derivation fails on x^" + std::to_string(b.i) + " y^[" + std::to_string(b.j) + "]";
            break;
          }
        }
      out.cases.push_back({key_of(cdvr, k), failure.empty(), failure});
    }
  return out;
}

inline SuiteResult legendre() {
  SuiteResult out{"legendre", {}};
  for (std::int64_t p : {2, 3, 5, 7}) {
    std::string failure;
    for (std::int64_t l = 1; l <= 10000 && failure.empty(); ++l)
      if (legendre_vp(l, p) * (p - 1) >= l) failure = "bound fails at l=" + std::to_string(l);
    for (unsigned l = 0; l <= 60 && failure.empty(); ++l)
      if (legendre_vp(l, p) != vp(factorial(l), Int(p))) failure = "formula disagrees with v_p(l!) at l=" + std::to_string(l);
    out.cases.push_back({"p=" + std::to_string(p), failure.empty(), failure});
  }
  return out;
}

template <ChainRing R>
std::vector<int> kernel_orders(const DiagonalForm<R>& form, std::size_t cols, int k) {
  std::vector<int> out;
  for (int s : thh::detail::kernel_exponents(form, cols, k)) out.push_back(k - s);
  return out;
}

template <ChainRing R>
ChainMatrix<R> transpose(const ChainMatrix<R>& m) {
  ChainMatrix<R> t(m.ring, m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

template <ChainRing R>
std::string check_smith(const ChainMatrix<R>& m) {
  const R& ring = m.ring;
  const auto form = snf_chain(m);
  if (!(form.U * m * form.V == form.D)) return "U A V != D";
  if (!(form.U * form.U_inv == ChainMatrix<R>::identity(ring, m.rows()))) return "U not invertible";
  if (!(form.V * form.V_inv == ChainMatrix<R>::identity(ring, m.cols()))) return "V not invertible";
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (i != j && !ring.is_zero(form.D(i, j))) return "D not diagonal";
      if (i == j) {
        const int c = form.exponents[i];
        if (!ring.equal(form.D(i, i), c == kInfinity ? ring.zero() : ring.pi_power(c))) return "diagonal not a pi-power";
        if (i > 0 && form.exponents[i - 1] > c) return "divisibility chain broken";
      }
    }
  return "";
}

template <ChainRing R>
ChainMatrix<R> random_chain_matrix(const R& ring, std::size_t rows, std::size_t cols, std::mt19937& rng,
                                   const std::function<typename R::Elem(std::mt19937&)>& element) {
  ChainMatrix<R> m(ring, rows, cols);
  std::uniform_int_distribution<int> shift(0, ring.length());
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = ring.mul(element(rng), ring.pi_power(shift(rng)));
  return m;
}

/// Smith invariants on random matrices, and the order of the homology of a random
/// complex against |ker| / |im| counted from the two diagonal forms.
template <ChainRing R>
CaseResult smith_backend(const std::string& key, const R& ring,
                         const std::function<typename R::Elem(std::mt19937&)>& element, int trials) {
  std::mt19937 rng(20261014);
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  for (int t = 0; t < trials; ++t) {
    const auto m = random_chain_matrix(ring, dim(rng), dim(rng), rng, element);
    if (auto f = check_smith(m); !f.empty()) return {key, false, "trial " + std::to_string(t) + ": " + f};
    const auto ker = kernel_basis(m);
    if (!(m * transpose(ker)).is_zero()) return {key, false, "kernel generator not in the kernel"};
    // d_in: random combinations of kernel generators.
    ChainMatrix<R> d_in(ring, m.cols(), dim(rng));
    for (std::size_t j = 0; j < d_in.cols(); ++j)
      for (std::size_t g = 0; g < ker.rows(); ++g) {
        const auto c = element(rng);
        for (std::size_t i = 0; i < m.cols(); ++i) d_in(i, j) = ring.add(d_in(i, j), ring.mul(c, ker(g, i)));
      }
    const auto h = subquotient_homology(d_in, m);
    int log_ker = 0, log_im = 0;
    for (int s : kernel_orders(snf_chain(m), m.cols(), ring.length())) log_ker += s;
    for (int c : snf_chain(d_in).exponents) log_im += c == kInfinity ? 0 : ring.length() - c;
    const int f = module_context(ring).f;
    if (h.module.log_order() != (log_ker - log_im) * f) return {key, false, "homology order mismatch"};
    for (const auto& z : h.representatives)
      for (const auto& c : mat_vec(m, z))
        if (!ring.is_zero(c)) return {key, false, "representative is not a cycle"};
  }
  return {key, true, std::to_string(trials) + " random matrices"};
}

/// Howell form: every generator lies in the span, reduction is canonical on cosets,
/// and re-reducing the basis reproduces it.
inline CaseResult howell_backend(std::int64_t p, int M, int trials) {
  const IntegersModPrimePower R(p, M);
  const std::string key = "howell Z/" + std::to_string(p) + "^" + std::to_string(M);
  std::mt19937 rng(static_cast<unsigned>(p * 100 + M));
  std::uniform_int_distribution<std::int64_t> entry(0, static_cast<std::int64_t>(R.modulus()) - 1);
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  for (int t = 0; t < trials; ++t) {
    const std::size_t rows = dim(rng), cols = dim(rng);
    Matrix<Int> m(rows, cols, Int(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = R.mul(Int(entry(rng)), R.pi_power(rng() % (M + 1)));
    const HowellBasis basis(R, m);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      IntVector row(m.cols());
      for (std::size_t j = 0; j < m.cols(); ++j) row[j] = m(i, j);
      if (!basis.contains(row)) return {key, false, "generator outside its own span"};
    }
    IntVector v(m.cols()), shifted(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) v[j] = Int(entry(rng));
    shifted = v;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      const Int c(entry(rng));
      for (std::size_t j = 0; j < m.cols(); ++j) shifted[j] = R.add(shifted[j], R.mul(c, m(i, j)));
    }
    if (basis.reduce(v) != basis.reduce(shifted)) return {key, false, "reduction not constant on cosets"};
    if (!(howell_form(R, basis.rows()) == basis.rows())) return {key, false, "Howell form not idempotent"};
  }
  return {key, true, std::to_string(trials) + " random matrices"};
}

inline SuiteResult algebra(int trials = 500) {
  SuiteResult out{"algebra", {}};
  for (std::int64_t p : {2, 3, 5})
    for (int M : {2, 3}) {
      const IntegersModPrimePower R(p, M);
      const auto n = static_cast<std::int64_t>(R.modulus());
      out.cases.push_back(smith_backend<IntegersModPrimePower>(
          "smith Z/" + std::to_string(p) + "^" + std::to_string(M), R,
          [n](std::mt19937& g) { return Int(static_cast<std::int64_t>(g() % n)); }, trials));
      out.cases.push_back(howell_backend(p, M, trials));
    }
  const std::vector<std::pair<CdvrSpec, int>> quotients{{CdvrSpec::mixed_over_zp(2, {-2, 0, 1}), 3},
                                                        {CdvrSpec::mixed_over_zp(3, {-3, -3, 1}), 4},
                                                        {CdvrSpec::equal_char(3), 2},
                                                        {CdvrSpec::mixed_over_witt(2, 2, {1, 1, 1}, {-2, 1}), 2}};
  for (const auto& [cdvr, k] : quotients) {
    const QuotientRing R(cdvr, k);
    const Int modulus = ipow(Int(R.p()), static_cast<unsigned>(R.precision()));
    const std::size_t rank = R.ambient_rank();
    out.cases.push_back(smith_backend<QuotientRing>(
        "smith " + key_of(cdvr, k), R,
        [&R, modulus, rank](std::mt19937& g) {
          IntVector raw(rank);
          for (auto& c : raw) c = Int(static_cast<std::int64_t>(g() % static_cast<std::uint64_t>(modulus)));
          return R.from_rep(raw);
        },
        trials));
  }
  return out;
}

}  // namespace detail

inline const std::map<std::string, std::function<SuiteResult()>>& suites() {
  static const std::map<std::string, std::function<SuiteResult()>> registry{
      {"algebra", [] { return detail::algebra(); }},
      {"bokstedt", detail::bokstedt},
      {"brun", detail::brun},
      {"degree-two", detail::degree_two},
      {"differential", detail::differential_identities},
      {"divided-powers", detail::divided_powers},
      {"inbetween", detail::in_between},
      {"legendre", detail::legendre},
      {"lm", detail::lm},
      {"regimes", detail::regimes},
  };
  return registry;
}

inline std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, _] : suites()) out.push_back(name);
  return out;
}

inline SuiteResult run_suite(const std::string& name) {
  auto it = suites().find(name);
  if (it == suites().end()) {
    std::string known;
    for (const auto& n : suite_names()) known += (known.empty() ? "" : ", ") + n;
    throw Error(ErrorCode::UnknownSuite, "unknown suite '" + name + "' (known: " + known + ")");
  }
  return it->second();
}

inline nlohmann::ordered_json suite_json(const SuiteResult& r) {
  nlohmann::ordered_json cases = nlohmann::ordered_json::array();
  for (const auto& c : r.cases)
    cases.push_back({{"key", c.key}, {"result", c.pass ? "pass" : "fail"}, {"detail", c.detail}});
  return {{"schemaVersion", 1}, {"suite", r.name}, {"passed", r.passed()}, {"cases", cases}};
}

inline std::string suite_table(const SuiteResult& r) {
  std::ostringstream out;
  for (const auto& c : r.cases) out << (c.pass ? "PASS " : "FAIL ") << c.key << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
  out << r.name << ": " << r.cases.size() - r.failures() << "/" << r.cases.size() << " passed\n";
  return out.str();
}

}  // namespace thh::verify
