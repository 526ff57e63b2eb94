#include "dualpoly/numerics.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"

using namespace dualpoly;

namespace {

Rational random_rational(std::mt19937_64& rng, long num_range, long den_range) {
  std::uniform_int_distribution<long> num(-num_range, num_range);
  std::uniform_int_distribution<long> den(1, den_range);
  return Rational(num(rng), den(rng));
}

// Pascal triangle built row by row, independent of GMP's binomial.
std::vector<std::vector<BigInt>> pascal(int rows) {
  std::vector<std::vector<BigInt>> t(rows + 1);
  for (int n = 0; n <= rows; ++n) {
    t[n].assign(n + 1, BigInt(1));
    for (int k = 1; k < n; ++k) t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
  }
  return t;
}

}  // namespace

TEST(RationalTest, CanonicalForm) {
  EXPECT_EQ(Rational(0).str(), "0/1");
  EXPECT_EQ(Rational(6, -4).str(), "-3/2");
  EXPECT_EQ(Rational(-6, -4).str(), "3/2");
  EXPECT_EQ(Rational::parse("10/4"), Rational(5, 2));
  EXPECT_EQ(Rational::parse("-7"), Rational(-7));
  EXPECT_EQ(Rational::parse("+3/9").str(), "1/3");
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("abc"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1/"), std::invalid_argument);
  EXPECT_THROW(Rational(1, 0), ArithmeticError);
}

TEST(RationalTest, DivisionByZeroThrows) {
  Rational a(3, 4);
  EXPECT_THROW(a / Rational(0), ArithmeticError);
}

TEST(RationalTest, FloorCeil) {
  EXPECT_EQ(Rational(7, 2).floor(), 3);
  EXPECT_EQ(Rational(7, 2).ceil(), 4);
  EXPECT_EQ(Rational(-7, 2).floor(), -4);
  EXPECT_EQ(Rational(-7, 2).ceil(), -3);
  EXPECT_EQ(Rational(4).ceil(), 4);
}

TEST(RationalTest, AddSubtractRoundTrip) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    Rational r = random_rational(rng, 1000000, 999983);
    Rational s = random_rational(rng, 1000000, 999979);
    EXPECT_EQ((r + s) - s, r);
    if (!s.is_zero()) EXPECT_EQ((r * s) / s, r);
  }
}

TEST(RationalTest, PowAndAbs) {
  EXPECT_EQ(pow(Rational(-2, 3), 3), Rational(-8, 27));
  EXPECT_EQ(pow(Rational(5), 0), Rational(1));
  EXPECT_EQ(Rational(-5, 7).abs(), Rational(5, 7));
}

TEST(BinomialTest, SmallValues) {
  EXPECT_EQ(binomial(5, 2), 10);
  for (long n = 0; n < 20; ++n) EXPECT_EQ(binomial(n, 0), 1);
  EXPECT_EQ(binomial(4, 5), 0);
  EXPECT_EQ(binomial(4, -1), 0);
  EXPECT_THROW(binomial(-1, 0), std::invalid_argument);
}

TEST(BinomialTest, MatchesPascalOracle) {
  auto t = pascal(52);
  EXPECT_EQ(binomial(52, 26), t[52][26]);
  EXPECT_EQ(binomial(52, 26), BigInt("495918532948104"));
  for (int n = 0; n <= 52; ++n)
    for (int k = 0; k <= n; ++k) ASSERT_EQ(binomial(n, k), t[n][k]) << n << "," << k;
}

TEST(BinomialTest, PascalIdentity) {
  for (long n = 2; n <= 40; ++n)
    for (long k = 1; k < n; ++k)
      ASSERT_EQ(binomial(n, k), binomial(n - 1, k) + binomial(n - 1, k - 1));
}

TEST(BinomialTest, FactorialAndPower) {
  EXPECT_EQ(factorial(0), 1);
  EXPECT_EQ(factorial(10), 3628800);
  EXPECT_EQ(ipow(4, 6), 4096);
  EXPECT_EQ(ipow(-3, 3), -27);
}

TEST(ChebyshevTest, KnownValues) {
  for (unsigned d = 0; d < 30; ++d) EXPECT_EQ(chebyshev_eval(d, 1), Rational(1));
  EXPECT_EQ(chebyshev_eval(2, 0), Rational(-1));
  EXPECT_EQ(chebyshev_eval(3, Rational(1, 2)), Rational(-1));
  for (unsigned d = 0; d < 10; ++d)
    EXPECT_EQ(chebyshev_eval(d, -1), Rational(d % 2 ? -1 : 1));
}

TEST(ChebyshevTest, MatchesExplicitCoefficientOracle) {
  // Build coefficient lists with T_{d+1} = 2x T_d - T_{d-1} on the
  // coefficient vectors, then evaluate with Horner.
  std::vector<std::vector<Rational>> t = {{1}, {0, 1}};
  for (int d = 2; d <= 7; ++d) {
    std::vector<Rational> next(d + 1, Rational(0));
    for (std::size_t i = 0; i < t[d - 1].size(); ++i) next[i + 1] += Rational(2) * t[d - 1][i];
    for (std::size_t i = 0; i < t[d - 2].size(); ++i) next[i] -= t[d - 2][i];
    t.push_back(next);
  }
  UnivariatePolynomial t7(t[7]);
  EXPECT_EQ(t7.degree(), 7);
  EXPECT_EQ(chebyshev_eval(7, Rational(3, 5)), t7(Rational(3, 5)));
  EXPECT_EQ(t7.coefficients()[7], Rational(64));
}

TEST(ChebyshevTest, BoundedOnUnitInterval) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-1000, 1000);
  std::uniform_int_distribution<unsigned> deg(0, 50);
  for (int i = 0; i < 200; ++i) {
    Rational x(num(rng), 1000);
    unsigned d = deg(rng);
    EXPECT_LE(chebyshev_eval(d, x).abs(), Rational(1)) << d << " " << x;
  }
}

TEST(PolynomialTest, Univariate) {
  UnivariatePolynomial zero;
  EXPECT_EQ(zero.degree(), -1);
  EXPECT_EQ(zero(Rational(5)), Rational(0));
  UnivariatePolynomial p({Rational(1), Rational(0), Rational(0)});
  EXPECT_EQ(p.degree(), 0);
  auto m = UnivariatePolynomial::monomial(3, Rational(2));
  EXPECT_EQ(m(Rational(3)), Rational(54));
}

TEST(PolynomialTest, TrivariateBasics) {
  TrivariatePolynomial zero(3);
  EXPECT_EQ(poly_eval_trivariate(zero, 1, 2, 3), Rational(0));
  TrivariatePolynomial mab(3);
  mab.add_term({1, 1, 1}, 1);
  EXPECT_EQ(poly_eval_trivariate(mab, 2, 3, 4), Rational(24));
  EXPECT_THROW(mab.add_term({2, 1, 1}, 1), std::invalid_argument);
  EXPECT_THROW(mab.add_term({-1, 0, 0}, 1), std::invalid_argument);
  mab.add_term({1, 1, 1}, -1);
  EXPECT_TRUE(mab.terms().empty());
}

TEST(PolynomialTest, TrivariateMatchesHorner) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 4;
    TrivariatePolynomial p(d);
    // Dense coefficient cube for the Horner oracle.
    Rational c[d + 1][d + 1][d + 1];
    for (int i = 0; i <= d; ++i)
      for (int j = 0; i + j <= d; ++j)
        for (int k = 0; i + j + k <= d; ++k) {
          c[i][j][k] = random_rational(rng, 20, 7);
          p.add_term({i, j, k}, c[i][j][k]);
        }
    Rational m = random_rational(rng, 9, 5), a = random_rational(rng, 9, 5),
             b = random_rational(rng, 9, 5);
    Rational outer = 0;
    for (int i = d; i >= 0; --i) {
      Rational mid = 0;
      for (int j = d; j >= 0; --j) {
        Rational inner = 0;
        for (int k = d; k >= 0; --k) inner = inner * b + c[i][j][k];
        mid = mid * a + inner;
      }
      outer = outer * m + mid;
    }
    EXPECT_EQ(poly_eval_trivariate(p, m, a, b), outer);
  }
}

TEST(ExpBoundsTest, EnclosesKnownValues) {
  auto [lo0, hi0] = exp_neg_bounds(0);
  EXPECT_LE(lo0, Rational(1));
  EXPECT_GE(hi0, Rational(1));
  for (Rational z : {Rational(1, 3), Rational(9, 16), Rational(3), Rational(25, 2)}) {
    auto [lo, hi] = exp_neg_bounds(z);
    double e = std::exp(-z.to_double());
    EXPECT_LE(lo.to_double(), e * (1 + 1e-12));
    EXPECT_GE(hi.to_double(), e * (1 - 1e-12));
    EXPECT_LT((hi - lo).to_double(), 1e-20);
  }
  EXPECT_THROW(exp_neg_bounds(-1), std::invalid_argument);
}

TEST(CeilDivSqrtTest, SmallestInteger) {
  // c^2 * 1/2 >= 100 first at c = 15.
  EXPECT_EQ(ceil_div_sqrt(10, Rational(1, 2)), 15);
  EXPECT_EQ(ceil_div_sqrt(10, Rational(1)), 10);
  EXPECT_EQ(ceil_div_sqrt(10, Rational(1, 4)), 20);
  EXPECT_EQ(ceil_div_sqrt(10, Rational(1, 3)), 18);
}

TEST(LinearSolveTest, ConsistentAndInconsistent) {
  std::vector<std::vector<Rational>> a = {{1, 2}, {3, 4}};
  auto s = solve_linear_system(a, {5, 6});
  ASSERT_TRUE(s.consistent);
  EXPECT_EQ(s.rank, 2);
  EXPECT_EQ(s.solution[0], Rational(-4));
  EXPECT_EQ(s.solution[1], Rational(9, 2));

  std::vector<std::vector<Rational>> singular = {{1, 1}, {2, 2}};
  EXPECT_FALSE(solve_linear_system(singular, {1, 3}).consistent);
  auto u = solve_linear_system(singular, {1, 2});
  EXPECT_TRUE(u.consistent);
  EXPECT_EQ(u.rank, 1);
}

TEST(LinearSolveTest, NullSpace) {
  std::vector<std::vector<Rational>> a = {{1, 1, 1}};
  auto basis = null_space(a, 3);
  ASSERT_EQ(basis.size(), 2u);
  for (const auto& v : basis) EXPECT_EQ(v[0] + v[1] + v[2], Rational(0));
}
