#pragma once

#include <stdexcept>
#include <vector>

#include "tvx/funceq.hpp"
#include "tvx/gw.hpp"
#include "tvx/numerics.hpp"
#include "tvx/quiver.hpp"
#include "tvx/series.hpp"

namespace tvx {

namespace detail {

inline void check_tree_params(int l1, int l2) {
  if (l1 < 1 || l2 < 1) throw std::invalid_argument("tree counts need l1, l2 >= 1");
}

}  // namespace detail

// [x^n] y^{l1} where y = x phi(y) and phi(u) = (1 + u^{l1-1})^{l2-1}, by fixed-point iteration.
inline Rational lagrange_coeff_series(int l1, int l2, int n) {
  detail::check_tree_params(l1, l2);
  if (n < 1) throw std::invalid_argument("n must be positive");
  ContextPtr ctx = make_context({{"x", Axis::X, 1}});
  TruncatedSeries x = TruncatedSeries::variable(ctx, n, 0);
  TruncatedSeries one = TruncatedSeries::one(ctx, n);
  TruncatedSeries y(ctx, n);
  for (int sweep = 0; sweep <= n + 1; ++sweep) {
    TruncatedSeries phi = pow_int(one + pow_int(y, l1 - 1), l2 - 1);
    TruncatedSeries next = x * phi;
    if (next == y) break;
    y = std::move(next);
  }
  return pow_int(y, l1).coeff(Monomial::variable(0, n));
}

// The same coefficient by Lagrange inversion: (l1/n) [u^{n-l1}] (1 + u^{l1-1})^{n(l2-1)}.
inline Rational lagrange_coeff(int l1, int l2, int n) {
  detail::check_tree_params(l1, l2);
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (n < l1) return Rational();
  long top = static_cast<long>(n) * (l2 - 1);
  Rational inner;
  if (l1 == 1) {
    // phi is the constant 2^{l2-1}
    inner = n == 1 ? Rational(mpz_class(mpz_class(1) << static_cast<unsigned long>(top))) : Rational();
  } else if ((n - l1) % (l1 - 1) == 0) {
    inner = binom(top, (n - l1) / (l1 - 1));
  }
  return Rational(l1, n) * inner;
}

// Closed-form tree count for degree d.
inline Rational tree_formula(int l1, int l2, int d) {
  detail::check_tree_params(l1, l2);
  return dm1d_N(l1, l2, d);
}

namespace detail {

// Counts colourings of the trees grown from `open` unprocessed sinks using exactly `budget`
// more sources. Each sink independently chooses a set of the l2 - 1 colours it does not share
// with its parent; each chosen colour adds a source carrying l1 - 1 new sinks.
inline long count_tree_growths(int l1, int l2, int open, int budget) {
  if (open == 0) return budget == 0 ? 1 : 0;
  long total = 0;
  unsigned colours = static_cast<unsigned>(l2 - 1);
  for (unsigned mask = 0; mask < (1u << colours); ++mask) {
    int chosen = __builtin_popcount(mask);
    if (chosen > budget) continue;
    total += count_tree_growths(l1, l2, open - 1 + chosen * (l1 - 1), budget - chosen);
  }
  return total;
}

}  // namespace detail

// Direct enumeration of the localization trees with d sources: l2 root colours, l1 sinks at
// the root, divided by the d choices of root.
inline Rational enumerate_trees(int l1, int l2, int d) {
  detail::check_tree_params(l1, l2);
  if (d < 1) throw std::invalid_argument("d must be positive");
  if (l2 - 1 > 20) throw std::invalid_argument("too many colours for direct enumeration");
  long rooted = detail::count_tree_growths(l1, l2, l1, d - 1);
  return Rational(static_cast<long>(l2) * rooted, d);
}

struct TreeReport {
  int l1 = 0;
  int l2 = 0;
  int d = 0;
  Rational formula;
  Rational enumeration;
  long quiver_sum = 0;      // sum of chi over |P1| = d - 1, |P2| = d
  long transposed_sum = 0;  // sum of chi over |P1| = d, |P2| = d - 1
  bool formula_verified = false;
};

// Compares the closed form and the enumeration with Euler characteristics of stable moduli.
// The closed form counts vectors with d - 1 on the sinks and d on the sources.
inline TreeReport tree_report(int l1, int l2, int d) {
  TreeReport r;
  r.l1 = l1;
  r.l2 = l2;
  r.d = d;
  r.formula = tree_formula(l1, l2, d);
  r.enumeration = enumerate_trees(l1, l2, d);
  detail::EulerCache euler(BipartiteQuiver::complete(l1, l2));
  for (const auto& v : enum_dimvecs(l1, l2, d - 1, d)) r.quiver_sum += euler.get(v);
  for (const auto& v : enum_dimvecs(l1, l2, d, d - 1)) r.transposed_sum += euler.get(v);
  r.formula_verified = r.formula == r.enumeration && r.formula == Rational(r.quiver_sum);
  return r;
}

}  // namespace tvx
