#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "thh/thh.hpp"

using namespace thh;

namespace {

CdvrSpec zp(std::int64_t p) { return CdvrSpec::mixed_over_zp(p, {-p, 1}); }

std::vector<int> exps(const DgaSpec& s, int n) { return homology(s, n).module.pi_exponents; }

}  // namespace

TEST(DgaBasis, Examples) {
  const auto s = DgaSpec::quotient_thh(zp(3), 2);
  EXPECT_EQ(basis(s, 0), (std::vector<BasisElt>{{0, 0, 0}}));
  EXPECT_EQ(basis(s, 4), (std::vector<BasisElt>{{2, 0, 0}, {1, 1, 0}, {0, 2, 0}}));
  EXPECT_EQ(basis(s, 5).size(), 3u);
  const auto c = DgaSpec::cdvr_with_coeffs(zp(3), 3);
  EXPECT_EQ(basis(c, 5), (std::vector<BasisElt>{{2, 0, 1}}));
  for (const auto& b : basis(s, 7)) EXPECT_EQ(b.degree(), 7);
}

TEST(DgaDifferential, HandExpansion) {
  const auto s = DgaSpec::quotient_thh(zp(3), 2);
  const auto& R = s.ring;
  const auto d2 = differential_matrix(s, 2);
  ASSERT_EQ(d2.rows(), 1u);
  EXPECT_EQ(d2(0, 0), s.alpha);
  EXPECT_EQ(d2(0, 1), *s.beta);

  const auto d4 = differential_matrix(s, 4);
  const std::vector<std::vector<int>> expected{{2, 6, 0}, {0, 1, 6}};
  ASSERT_EQ(d4.rows(), 2u);
  ASSERT_EQ(d4.cols(), 3u);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(d4(i, j), R.from_int(expected[i][j])) << i << "," << j;

  EXPECT_TRUE(differential_matrix(s, 3).is_zero());
  EXPECT_EQ(differential_matrix(s, 0).rows(), 0u);
}

TEST(DgaDifferential, EqualCharacteristicWithPDividingK) {
  const auto s = DgaSpec::quotient_thh(CdvrSpec::equal_char(3), 3);
  for (int n = 2; n <= 10; n += 2) EXPECT_TRUE(differential_matrix(s, n).is_zero());
  EXPECT_EQ(s.variant, DgaVariant::EqualCharQuotient);
}

TEST(DgaHomology, Examples) {
  for (std::int64_t p : {2, 3, 5}) {
    const auto s = DgaSpec::quotient_thh(zp(p), 1);
    for (int n = 0; n <= 8; ++n) EXPECT_EQ(exps(s, n), n % 2 ? std::vector<int>{} : std::vector<int>{1}) << n;
  }
  const auto s4 = DgaSpec::quotient_thh(zp(2), 2);
  EXPECT_EQ(homology(s4, 3).module.abelian(), (AbelianInvariants{{1, 1}}));
  EXPECT_EQ(exps(s4, 0), (std::vector<int>{2}));
}

TEST(DgaHomology, RepresentativesAreCycles) {
  const auto s = DgaSpec::quotient_thh(CdvrSpec::mixed_over_zp(3, {-3, 0, 1}), 5);
  for (int n = 0; n <= 8; ++n) {
    const auto h = homology(s, n);
    ASSERT_EQ(h.representatives.size(), h.module.pi_exponents.size());
    for (const auto& z : h.representatives) EXPECT_TRUE(differential(s, z).is_zero());
  }
}

TEST(DgaHomology, MatchesEnumeration) {
  for (const auto& [spec, k] : {std::pair{zp(2), 2}, {zp(3), 2}, {CdvrSpec::mixed_over_zp(2, {-2, 0, 1}), 3},
                                {CdvrSpec::equal_char(2), 2}, {CdvrSpec::equal_char(3), 1}}) {
    const auto s = DgaSpec::quotient_thh(spec, k);
    const auto elems = oracle::all_elements(s.ring);
    for (int n = 0; n <= 5; ++n) {
      if (std::pow(double(elems.size()), double(basis(s, n).size())) > 7000) continue;
      const auto expected = oracle::brute_force_homology(differential_matrix(s, n + 1), differential_matrix(s, n), elems, spec.p);
      EXPECT_EQ(homology(s, n).module.abelian(), expected) << describe(spec) << " k=" << k << " n=" << n;
    }
  }
}

TEST(DgaMultiply, DividedPowerRule) {
  const auto s = DgaSpec::quotient_thh(zp(5), 3);
  const auto& R = s.ring;
  const auto y = monomial(s, {0, 1, 0});
  EXPECT_EQ(multiply(s, y, y), monomial(s, {0, 2, 0}, R.from_int(2)));
  EXPECT_EQ(multiply(s, monomial(s, {0, 2, 0}), monomial(s, {0, 3, 0})), monomial(s, {0, 5, 0}, R.from_int(10)));
  const auto dpi = monomial(s, {0, 0, 1});
  EXPECT_TRUE(multiply(s, dpi, dpi).is_zero());
  EXPECT_EQ(power(s, y, 1), y);
  EXPECT_EQ(power(s, y, 2), monomial(s, {0, 2, 0}, R.from_int(2)));
}

TEST(DgaMultiply, PowerOfBinomialMatchesHandFormula) {
  const auto s = DgaSpec::quotient_thh(zp(3), 4);
  const auto& R = s.ring;
  const QElem c = R.from_int(7);
  const auto x = monomial(s, {1, 0, 0}), y = monomial(s, {0, 1, 0});
  const auto g = sub(s, y, scale(s, c, x));
  // (y - c x)^3 = 6 y^[3] - 6 c x y^[2] + 3 c^2 x^2 y - c^3 x^3
  ChainElt expected = monomial(s, {0, 3, 0}, R.from_int(6));
  expected = add(s, expected, monomial(s, {1, 2, 0}, R.neg(R.mul(R.from_int(6), c))));
  expected = add(s, expected, monomial(s, {2, 1, 0}, R.mul(R.from_int(3), R.mul(c, c))));
  expected = add(s, expected, monomial(s, {3, 0, 0}, R.neg(R.pow(c, 3))));
  EXPECT_EQ(power(s, g, 3), expected);
}

TEST(DgaProperties, SquareZeroAndPdDerivation) {
  for (const auto& spec : oracle::eisenstein_grid())
    for (int k : {1, 3, 5}) {
      const auto s = DgaSpec::quotient_thh(spec, k);
      for (int n = 1; n <= 12; ++n)
        EXPECT_TRUE((differential_matrix(s, n) * differential_matrix(s, n + 1)).is_zero());
      const auto y = monomial(s, {0, 1, 0});
      for (int i = 1; i <= 6; ++i)
        EXPECT_EQ(differential(s, monomial(s, {0, i, 0})), multiply(s, differential(s, y), monomial(s, {0, i - 1, 0})));
    }
}

TEST(DgaProperties, Leibniz) {
  std::mt19937 rng(43);
  const auto s = DgaSpec::quotient_thh(CdvrSpec::mixed_over_zp(2, {-2, -2, 1}), 5);
  const auto elems = oracle::all_elements(s.ring);
  auto random_elt = [&](int degree) {
    std::vector<QElem> v;
    for (std::size_t i = 0; i < basis(s, degree).size(); ++i) v.push_back(elems[rng() % elems.size()]);
    return from_vector(s, degree, v);
  };
  for (int trial = 0; trial < 60; ++trial) {
    const int da = 2 * (rng() % 4), db = static_cast<int>(rng() % 7);
    const auto a = random_elt(da), b = random_elt(db);
    const auto lhs = differential(s, multiply(s, a, b));
    const auto rhs = add(s, multiply(s, differential(s, a), b), multiply(s, a, differential(s, b)));
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(DgaProperties, DividedPowerAssociativity) {
  std::mt19937 rng(47);
  const auto s = DgaSpec::quotient_thh(zp(2), 6);
  for (int trial = 0; trial < 60; ++trial) {
    const int r = rng() % 9, t = rng() % 9, u = rng() % 9;
    const auto a = monomial(s, {0, r, 0}), b = monomial(s, {0, t, 0}), c = monomial(s, {0, u, 0});
    EXPECT_EQ(multiply(s, a, multiply(s, b, c)), multiply(s, multiply(s, a, b), c));
  }
}

TEST(DgaProperties, HomologyOrderBound) {
  const auto s = DgaSpec::quotient_thh(CdvrSpec::mixed_over_zp(3, {-3, 0, 0, 1}), 4);
  for (int m = 0; m <= 6; ++m) {
    EXPECT_LE(homology(s, 2 * m).module.log_order(), s.ring.log_order() * (m + 1));
    EXPECT_LE(homology(s, 2 * m + 1).module.log_order(), s.ring.log_order() * (m + 1));
  }
}

TEST(DgaProperties, CoefficientDgaOddHomologyIsCyclic) {
  // Over A/pi^K the odd homology is A/gcd(n phi'(pi), pi^K): exponent min(e v_p(n) + d, K), computed by hand.
  const auto spec = CdvrSpec::mixed_over_zp(2, {-2, 0, 1});  // e = 2, d = 3
  const int K = 9;
  const auto s = DgaSpec::cdvr_with_coeffs(spec, K);
  for (int n = 1; n <= 8; ++n) {
    const int expected = std::min(2 * vp(std::int64_t(n), 2) + 3, K);
    EXPECT_EQ(exps(s, 2 * n - 1), (std::vector<int>{expected})) << n;
  }
}

TEST(DgaDivisibility, Basics) {
  const auto s = DgaSpec::quotient_thh(zp(3), 2);
  const auto& R = s.ring;
  const auto h2 = homology(s, 2);
  ASSERT_FALSE(h2.representatives.empty());
  for (const auto& z : h2.representatives) EXPECT_TRUE(divisibility_query(s, z, R.one()));
  EXPECT_FALSE(divisibility_query(s, h2.representatives.front(), R.zero()));
  try {
    (void)divisibility_query(s, monomial(s, {1, 0, 0}), R.one());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotACycle);
  }
}

TEST(DgaLog, OddHomology) {
  const auto s = DgaSpec::log_cdvr(zp(3), 5);
  EXPECT_EQ(s.odd_name, "dlog π");
  EXPECT_EQ(exps(s, 1), (std::vector<int>{1}));
  EXPECT_EQ(exps(s, 5), (std::vector<int>{2}));
}

TEST(DgaFormat, ToString) {
  const auto s = DgaSpec::quotient_thh(zp(3), 2);
  const auto e = add(s, monomial(s, {0, 2, 0}), monomial(s, {1, 1, 0}, s.ring.from_int(6)));
  EXPECT_EQ(to_string(s, e), "6·x·y + y^[2]");
  EXPECT_EQ(to_string(s, ChainElt{}), "0");
}
