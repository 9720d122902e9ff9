#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "tvx/polynomial.hpp"
#include "tvx/rational.hpp"

namespace tvx {

// Generalized binomial coefficient x(x-1)...(x-k+1)/k! for rational x; zero for k < 0.
inline Rational binom_general(const Rational& x, int k) {
  if (k < 0) return Rational();
  Rational acc(1);
  for (int i = 0; i < k; ++i) acc = acc * (x - Rational(i)) / Rational(i + 1);
  return acc;
}

inline Rational binom(std::int64_t n, std::int64_t k) {
  if (k < 0) return Rational();
  if (n >= 0 && k > n) return Rational();
  if (n >= 0) {
    mpz_class z;
    mpz_bin_uiui(z.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(z);
  }
  return binom_general(Rational(n), static_cast<int>(k));
}

inline int moebius(int n) {
  if (n < 1) throw std::invalid_argument("moebius of non-positive integer");
  int mu = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

inline std::vector<int> divisors(int n) {
  if (n < 1) throw std::invalid_argument("divisors of non-positive integer");
  std::vector<int> d;
  for (int i = 1; i <= n; ++i)
    if (n % i == 0) d.push_back(i);
  return d;
}

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

// Gaussian binomial coefficient [n choose k] as a polynomial in v.
inline QPolynomial gaussian_binomial(int n, int k) {
  if (k < 0 || k > n) return {};
  // Pascal recursion [n,k] = [n-1,k-1] + v^k [n-1,k].
  std::vector<QPolynomial> row{QPolynomial(Rational(1))};
  for (int m = 1; m <= n; ++m) {
    std::vector<QPolynomial> next(static_cast<std::size_t>(m) + 1);
    for (int j = 0; j <= m; ++j) {
      QPolynomial left = j >= 1 ? row[static_cast<std::size_t>(j - 1)] : QPolynomial();
      QPolynomial right = j <= m - 1 ? QPolynomial::monomial(j) * row[static_cast<std::size_t>(j)] : QPolynomial();
      next[static_cast<std::size_t>(j)] = left + right;
    }
    row = std::move(next);
  }
  return row[static_cast<std::size_t>(k)];
}

// prod_{j=1}^{n} (1 - v^j)
inline QPolynomial q_factorial_factor(int n) {
  QPolynomial acc(Rational(1));
  for (int j = 1; j <= n; ++j) acc = acc * (QPolynomial(Rational(1)) - QPolynomial::monomial(j));
  return acc;
}

}  // namespace tvx
