#include <gtest/gtest.h>

#include <gmpxx.h>

#include "tvx/io.hpp"
#include "tvx/localization.hpp"

using namespace tvx;

namespace {

// Coefficients of y = x phi(y) with phi(u) = (1 + u^{l1-1})^{l2-1}, by plain dense iteration,
// then [x^n] y^{l1}.
mpq_class dense_lagrange(int l1, int l2, int n) {
  using Poly = std::vector<mpq_class>;
  auto mul = [n](const Poly& a, const Poly& b) {
    Poly c(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 0; i <= n; ++i)
      for (int j = 0; i + j <= n; ++j) c[i + j] += a[i] * b[j];
    return c;
  };
  auto pw = [&](Poly p, int e) {
    Poly r(static_cast<std::size_t>(n) + 1, 0);
    r[0] = 1;
    for (int i = 0; i < e; ++i) r = mul(r, p);
    return r;
  };
  Poly y(static_cast<std::size_t>(n) + 1, 0);
  for (int it = 0; it <= n; ++it) {
    Poly inner = pw(y, l1 - 1);
    inner[0] += 1;
    Poly phi = pw(inner, l2 - 1);
    Poly next(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 0; i < n; ++i) next[i + 1] = phi[i];
    y = next;
  }
  return pw(y, l1)[n];
}

}  // namespace

TEST(Localization, LagrangeRoutesAgree) {
  for (auto [l1, l2] : std::vector<std::pair<int, int>>{{2, 2}, {3, 3}, {2, 3}, {3, 2}, {1, 3}, {4, 2}}) {
    for (int n = 1; n <= 40; ++n) {
      Rational closed = lagrange_coeff(l1, l2, n);
      ASSERT_EQ(closed, lagrange_coeff_series(l1, l2, n)) << l1 << l2 << " n=" << n;
      if (n <= 16) {
        EXPECT_EQ(closed.to_mpq(), dense_lagrange(l1, l2, n)) << l1 << l2 << " n=" << n;
      }
    }
  }
  EXPECT_THROW(lagrange_coeff(0, 2, 3), std::invalid_argument);
  EXPECT_THROW(lagrange_coeff(2, 2, 0), std::invalid_argument);
}

TEST(Localization, TreeCountsAgreeWithModuli) {
  json ref = read_json_file(resolve_fixture("reference_values.json"));
  for (const auto& e : ref.at("tree_counts")) {
    TreeReport r = tree_report(e.at("l1").get<int>(), e.at("l2").get<int>(), e.at("d").get<int>());
    Rational v(e.at("value").get<long>());
    EXPECT_EQ(r.formula, v);
    EXPECT_EQ(r.enumeration, v);
    EXPECT_EQ(Rational(r.quiver_sum), v);
    EXPECT_TRUE(r.formula_verified);
  }
  struct Case {
    int l1, l2, d;
  };
  for (const auto& c : std::vector<Case>{{3, 3, 3}, {2, 2, 1}, {2, 2, 2}, {3, 2, 2}, {3, 2, 3}, {2, 3, 3}, {4, 2, 3}, {2, 1, 2}}) {
    TreeReport r = tree_report(c.l1, c.l2, c.d);
    EXPECT_TRUE(r.formula_verified) << c.l1 << c.l2 << c.d;
  }
  EXPECT_EQ(tree_report(3, 3, 3).formula, Rational(39));
}

TEST(Localization, TreeFormulaIsRescaledLagrangeCoefficient) {
  for (auto [l1, l2] : std::vector<std::pair<int, int>>{{2, 2}, {3, 3}, {2, 3}, {4, 2}}) {
    for (int d = 1; d <= 6; ++d) {
      int n = (l1 - 1) * d + 1;
      EXPECT_EQ(tree_formula(l1, l2, d), Rational(l2, d) * lagrange_coeff_series(l1, l2, n)) << l1 << l2 << d;
    }
  }
}

TEST(Localization, EnumerationBudget) {
  EXPECT_EQ(enumerate_trees(3, 3, 1), Rational(3));
  EXPECT_THROW(enumerate_trees(2, 30, 2), std::invalid_argument);
  EXPECT_THROW(enumerate_trees(2, 2, 0), std::invalid_argument);
}
