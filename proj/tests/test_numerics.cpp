#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "tvx/numerics.hpp"
#include "tvx/polynomial.hpp"
#include "tvx/rational.hpp"

using tvx::QPolynomial;
using tvx::Rational;

namespace {

QPolynomial P(std::vector<Rational> c) { return QPolynomial(std::move(c)); }

}  // namespace

TEST(Rational, CanonicalForm) {
  EXPECT_EQ(Rational(6, -4).str(), "-3/2");
  EXPECT_EQ(Rational::parse("-3/6"), Rational(-1, 2));
  EXPECT_EQ(Rational::parse("12").str(), "12");
  EXPECT_EQ(Rational(0, 5).str(), "0");
  EXPECT_TRUE(Rational(4, 2).is_integer());
  EXPECT_EQ(Rational(-7, 3).sign(), -1);
  EXPECT_ANY_THROW(Rational(1, 0));
  EXPECT_ANY_THROW(Rational(0).inverse());
  EXPECT_ANY_THROW(Rational::parse("1/x"));
}

TEST(Rational, PromotesAndDemotes) {
  Rational big(std::int64_t{1} << 62);
  Rational sq = big * big;
  EXPECT_TRUE(sq.is_big());
  EXPECT_EQ(sq.str(), "21267647932558653966460912964485513216");
  Rational back = sq / big;
  EXPECT_FALSE(back.is_big());
  EXPECT_EQ(back, big);
  Rational diff = (sq + Rational(5)) - sq;
  EXPECT_FALSE(diff.is_big());
  EXPECT_EQ(diff, Rational(5));
}

TEST(Rational, AgreesWithGmpOnRandomOperations) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> dist(-(std::int64_t{1} << 40), std::int64_t{1} << 40);
  Rational acc(1);
  mpq_class ref(1);
  for (int i = 0; i < 400; ++i) {
    std::int64_t n = dist(rng), d = dist(rng);
    if (d == 0) d = 1;
    Rational x(n, d);
    mpq_class y(mpz_class(static_cast<long>(n)), mpz_class(static_cast<long>(d)));
    y.canonicalize();
    switch (i % 4) {
      case 0: acc += x; ref += y; break;
      case 1: acc -= x; ref -= y; break;
      case 2: acc *= x; ref *= y; break;
      default:
        if (n == 0) continue;
        acc /= x;
        ref /= y;
    }
    ASSERT_EQ(acc.to_mpq(), ref) << "step " << i;
  }
}

TEST(Numerics, BinomialMatchesPascal) {
  std::vector<std::vector<mpz_class>> pascal(61);
  for (int n = 0; n <= 60; ++n) {
    pascal[n].assign(n + 1, 1);
    for (int k = 1; k < n; ++k) pascal[n][k] = pascal[n - 1][k - 1] + pascal[n - 1][k];
  }
  for (int n = 0; n <= 60; ++n)
    for (int k = 0; k <= n; ++k) ASSERT_EQ(tvx::binom(n, k), Rational(pascal[n][k]));
  EXPECT_EQ(tvx::binom(5, 7), Rational(0));
  EXPECT_EQ(tvx::binom(5, -1), Rational(0));
  EXPECT_EQ(tvx::binom(-1, 5), Rational(-1));
  EXPECT_EQ(tvx::binom(-3, 2), Rational(6));
}

TEST(Numerics, GeneralizedBinomial) {
  EXPECT_EQ(tvx::binom_general(Rational(1, 2), 2), Rational(-1, 8));
  EXPECT_EQ(tvx::binom_general(Rational(7), 3), Rational(35));
  EXPECT_EQ(tvx::binom_general(Rational(-2, 3), 0), Rational(1));
  // (1+x)^(1/2) squared is 1+x
  for (int n = 2; n <= 8; ++n) {
    Rational s;
    for (int k = 0; k <= n; ++k) s += tvx::binom_general(Rational(1, 2), k) * tvx::binom_general(Rational(1, 2), n - k);
    EXPECT_EQ(s, Rational(0)) << n;
  }
}

TEST(Numerics, MoebiusAndDivisors) {
  for (int n = 1; n <= 200; ++n) {
    int sum = 0;
    for (int d : tvx::divisors(n)) {
      EXPECT_EQ(n % d, 0);
      sum += tvx::moebius(d);
    }
    EXPECT_EQ(sum, n == 1 ? 1 : 0) << n;
  }
  EXPECT_EQ(tvx::moebius(30), -1);
  EXPECT_EQ(tvx::moebius(12), 0);
  EXPECT_EQ(tvx::divisors(12), (std::vector<int>{1, 2, 3, 4, 6, 12}));
  EXPECT_EQ(tvx::gcd64(84, -18), 6);
}

namespace {

// Number of partitions of j whose Young diagram fits in a k x (n-k) box.
long box_partitions(int j, int rows, int cols) {
  if (j == 0) return 1;
  if (rows == 0 || cols == 0) return 0;
  long total = 0;
  for (int first = 1; first <= std::min(j, cols); ++first) {
    // remaining parts are at most `first`
    std::function<long(int, int, int)> rec = [&](int left, int r, int maxpart) -> long {
      if (left == 0) return 1;
      if (r == 0) return 0;
      long t = 0;
      for (int p = 1; p <= std::min(left, maxpart); ++p) t += rec(left - p, r - 1, p);
      return t;
    };
    total += rec(j - first, rows - 1, first);
  }
  return total;
}

}  // namespace

TEST(Numerics, GaussianBinomialCountsBoxPartitions) {
  for (int n = 0; n <= 9; ++n) {
    for (int k = 0; k <= n; ++k) {
      QPolynomial g = tvx::gaussian_binomial(n, k);
      EXPECT_EQ(g.degree(), k * (n - k));
      EXPECT_EQ(g.eval(Rational(1)), tvx::binom(n, k));
      for (int j = 0; j <= k * (n - k); ++j) EXPECT_EQ(g.coeff(j), Rational(box_partitions(j, k, n - k)));
    }
  }
  EXPECT_TRUE(tvx::gaussian_binomial(4, 5).is_zero());
}

TEST(Numerics, QFactorialFactor) {
  QPolynomial p = tvx::q_factorial_factor(3);
  EXPECT_EQ(p, P({1, -1, -1, 0, 1, 1, -1}));
  EXPECT_EQ(tvx::q_factorial_factor(0), QPolynomial(Rational(1)));
}

TEST(Polynomial, DivisionAndGcd) {
  QPolynomial a = P({-1, 0, 1});  // q^2 - 1
  QPolynomial b = P({-1, 1});    // q - 1
  auto [quot, rem] = divmod(a, b);
  EXPECT_EQ(quot, P({1, 1}));
  EXPECT_TRUE(rem.is_zero());
  EXPECT_EQ(gcd(a * P({2, 3}), b * P({2, 3})), (b * P({2, 3})).monic());
  EXPECT_TRUE(P({1, 2, 1}).is_palindromic());
  EXPECT_FALSE(P({1, 2}).is_palindromic());
  EXPECT_EQ(P({1, 0, 3}).str(), "3*q^2 + 1");
  EXPECT_ANY_THROW(divmod(a, QPolynomial()));
}

TEST(Polynomial, RationalFunctionReduction) {
  // (q^3 - 1) / (q - 1) = q^2 + q + 1
  tvx::QRationalFunction f(P({-1, 0, 0, 1}), P({-1, 1}));
  ASSERT_TRUE(f.is_polynomial());
  EXPECT_EQ(f.as_polynomial(), P({1, 1, 1}));
  EXPECT_EQ(f.eval_at_one(), Rational(3));
  tvx::QRationalFunction g(QPolynomial(Rational(1)), P({-1, 1}));
  EXPECT_FALSE(g.is_polynomial());
  EXPECT_THROW(g.eval_at_one(), tvx::pole_at_one);
  EXPECT_EQ(f - f * g * P({-1, 1}), tvx::QRationalFunction());
  // Laurent inputs: (v^-1 + 1) / (v^-2) = v + v^2
  tvx::LaurentPolynomial num(-1, {1, 1});
  tvx::LaurentPolynomial den(-2, {1});
  EXPECT_EQ(tvx::rf_normalize(num, den).as_polynomial(), P({0, 1, 1}));
  EXPECT_EQ(num.reflected(), tvx::LaurentPolynomial(0, {1, 1}));
}
