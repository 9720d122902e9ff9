#include <gtest/gtest.h>

#include "tvx/funceq.hpp"
#include "tvx/gw.hpp"
#include "tvx/hn.hpp"
#include "tvx/io.hpp"
#include "test_support.hpp"

using namespace tvx;

namespace {

std::vector<Rational> level_totals(const ChiTable& chi, int a, int b, int levels) {
  std::vector<Rational> out(static_cast<std::size_t>(levels) + 1);
  for (int k = 1; k <= levels; ++k) out[static_cast<std::size_t>(k)] = Rational(chi.total(k * a, k * b));
  return out;
}

// Moebius inversion written out directly from the divisor lattice.
int mu(int n) {
  int r = 1;
  for (int p = 2; p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    r = -r;
  }
  return r;
}

}  // namespace

TEST(Funceq, ChiTableBasics) {
  ChiTable t;
  t.set({{1}, {2}}, 3, Provenance::Direct);
  t.set({{2}, {4}}, -1, Provenance::Extracted);
  t.set({{2}, {4}}, 5, Provenance::Fixture);
  EXPECT_EQ(t.size(), 2u);
  EXPECT_EQ(t.at({{2}, {4}}), 5);
  EXPECT_EQ(t.total(2, 4), 5);
  EXPECT_FALSE(t.contains({{1}, {1}}));
  EXPECT_THROW(t.at({{1}, {1}}), std::out_of_range);
  EXPECT_STREQ(provenance_name(Provenance::ClosedForm), "closed-form");
  ContextPtr ctx = bipartite_context(2, 3);
  DimVector d{{2, 0}, {1, 1, 3}};
  EXPECT_EQ(dimvec_of(*ctx, monomial_of(d)), d);
  EXPECT_EQ(chi_table_from_json(to_json(t)).at({{1}, {2}}), 3);
}

TEST(Funceq, ExtractionRoundTrips) {
  struct Case {
    int l1, l2, a, b, order;
  };
  for (const auto& c : std::vector<Case>{{2, 2, 1, 1, 8}, {3, 3, 1, 2, 6}, {1, 3, 1, 2, 6}, {2, 3, 1, 1, 6}, {3, 2, 2, 1, 6}}) {
    BipartiteQuiver q = BipartiteQuiver::complete(c.l1, c.l2);
    Scattering s = factorize(InitialData::plain(c.l1, c.l2), c.order);
    TruncatedSeries f = s.wall(c.a, c.b);
    ChiTable chi = extract_chi(q, f, c.a, c.b, c.order);
    RSystemSolution sol = solve_R_system(q, chi, c.a, c.b, c.order);
    EXPECT_EQ(sol.f, f) << c.l1 << c.l2 << c.a << c.b;
    EXPECT_GE(sol.sweeps, 1);
    // Level one is Theta-coprime, so the HN recursion gives the same numbers independently.
    for (const auto& d : enum_dimvecs(c.l1, c.l2, c.a, c.b)) EXPECT_EQ(chi.at(d), euler_stable(q, d)) << d.str();
  }
}

TEST(Funceq, KroneckerExtraction) {
  BipartiteQuiver k3 = BipartiteQuiver::kronecker(3);
  Scattering s = factorize(InitialData::kronecker(3), 8);
  ChiTable chi = extract_chi(k3, s.wall(3, 5), 3, 5, 8);
  EXPECT_EQ(chi.at({{3}, {5}}), 68);
  ChiTable c12 = extract_chi(k3, s.wall(1, 2), 1, 2, 6);
  EXPECT_EQ(c12.at({{1}, {2}}), 3);
  EXPECT_EQ(solve_R_system(k3, c12, 1, 2, 6).f, s.wall(1, 2).truncated(6));
}

TEST(Funceq, ExceptionalValuesFromFixture) {
  json ref = read_json_file(resolve_fixture("reference_values.json"));
  for (const auto& e : ref.at("exceptional_chi")) {
    int l1 = e.at("l1").get<int>(), l2 = e.at("l2").get<int>();
    DimVector d{e.at("p1").get<std::vector<int>>(), e.at("p2").get<std::vector<int>>()};
    int g = std::gcd(d.sink_total(), d.source_total());
    int a = d.sink_total() / g, b = d.source_total() / g;
    int order = d.sink_total() + d.source_total();
    Scattering s = factorize(InitialData::plain(l1, l2), order);
    ChiTable chi = extract_chi(BipartiteQuiver::complete(l1, l2), s.wall(a, b), a, b, order);
    EXPECT_EQ(chi.at(d), e.at("chi").get<long>()) << d.str();
  }
}

TEST(Funceq, CentralSystemMatchesFactorization) {
  for (auto [l1, l2] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 3}}) {
    CentralSolution cs = central_system(l1, l2, 8);
    Scattering s = factorize(InitialData::plain(l1, l2), 8);
    EXPECT_EQ(cs.f, s.wall(1, 1));
    EXPECT_EQ(cs.r.size(), static_cast<std::size_t>(l1 * l2));
    ChiTable chi = extract_chi(BipartiteQuiver::complete(l1, l2), cs.f, 1, 1, 8);
    for (const auto& [d, e] : chi.entries()) {
      if (d.sink_total() >= 2) {
        EXPECT_EQ(e.chi, 0) << d.str();
      }
    }
    EXPECT_EQ(chi.total(1, 1), l1 * l2);
  }
}

TEST(Funceq, CentralClosedFormOnTwoByTwo) {
  // From prod (1 + s_i t_j) (1 - s1 s2 t1 t2)^{-4}: k N[k] = 4 (-1)^{k-1} / k + [k even] 8 / k.
  GWTable t = gw_from_wall(central_system(2, 2, 12).f, 1, 1);
  for (int k = 1; k <= 6; ++k) {
    Rational expect = Rational(4 * (k % 2 == 1 ? 1 : -1), k * k) + (k % 2 == 0 ? Rational(8, k * k) : Rational(0));
    EXPECT_EQ(t.aggregated.at(k), expect);
    EXPECT_EQ(central_N(2, 2, k), expect);
  }
}

TEST(Funceq, SpecializedEquation) {
  struct Case {
    int l1, l2, a, b, order;
  };
  for (const auto& c : std::vector<Case>{{3, 3, 1, 2, 9}, {2, 2, 1, 1, 10}, {2, 3, 1, 1, 8}, {1, 3, 1, 2, 9}, {3, 3, 1, 1, 8}}) {
    Scattering s = factorize(InitialData::plain(c.l1, c.l2), c.order);
    TruncatedSeries f = s.wall(c.a, c.b);
    int levels = c.order / (c.a + c.b);
    ChiTable chi = extract_chi(BipartiteQuiver::complete(c.l1, c.l2), f, c.a, c.b, c.order);
    std::vector<Rational> agg = level_totals(chi, c.a, c.b, levels);
    Rational E = specialized_exponent(c.l1, c.l2, c.a, c.b);
    std::vector<Rational> solved = solve_specialized(agg, E, levels);
    std::vector<Rational> diag = specialize_diagonal(f, c.a, c.b);
    diag.resize(solved.size());
    EXPECT_EQ(solved, diag) << c.l1 << c.l2 << c.a << c.b;
    GWTable gw = gw_from_wall(f, c.a, c.b);
    for (int k = 1; k <= levels; ++k) {
      Rational n = gw.aggregated.count(k) ? gw.aggregated.at(k) : Rational();
      if (E.is_zero()) {
        EXPECT_THROW(specialized_N(agg, E, k), std::domain_error);
        EXPECT_EQ(specialized_N_log_route(agg, k), n) << k;
      } else {
        EXPECT_EQ(specialized_N(agg, E, k), n) << k;
      }
    }
  }
  EXPECT_EQ(specialized_exponent(2, 2, 1, 1), Rational(0));
  EXPECT_EQ(specialized_exponent(3, 3, 1, 2), Rational(1, 3));
}

TEST(Funceq, MoebiusBpsValues) {
  const int K = 6;
  for (auto [l1, l2] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 3}}) {
    std::vector<Rational> n(K + 1);
    for (int k = 1; k <= K; ++k) n[k] = central_N(l1, l2, k);
    int sigma = l1 * l2 - l1 - l2;
    std::vector<Rational> bps = bps_moebius(n, sigma);
    for (int k = 1; k <= K; ++k) {
      Rational s;
      for (int d = 1; d <= k; ++d) {
        if (k % d) continue;
        int sign = ((static_cast<long>(sigma) * (d - k)) % 2 == 0) ? 1 : -1;
        s += Rational(mu(k / d) * sign * d * d, k * k) * n[d];
      }
      EXPECT_EQ(bps[k], s);
      EXPECT_TRUE(bps[k].is_integer() && bps[k].sign() >= 0) << l1 << l2 << " k=" << k << " " << bps[k];
    }
  }
}

TEST(Funceq, ProductFactorization) {
  // 1 + u = (1 - (-u))^{-1 * d(1)} with d(1) = -1.
  std::vector<Rational> d = product_factorization({1, 1, 0, 0, 0}, -1);
  EXPECT_EQ(d, (std::vector<Rational>{0, -1, 0, 0, 0}));
  std::vector<Rational> c{1, 3, -2, 7, 11, 0, 5};
  for (int sign : {1, -1}) EXPECT_EQ(product_expand(product_factorization(c, sign), sign, 6), c);
  EXPECT_THROW(product_factorization({2, 1}, 1), std::domain_error);
  EXPECT_THROW(product_factorization({1, 1}, 0), std::invalid_argument);
}

TEST(Funceq, DegreeOneBelowFormula) {
  for (auto [l1, l2] : std::vector<std::pair<int, int>>{{3, 3}, {2, 3}, {3, 2}}) {
    for (int d = 1; d <= 3; ++d) {
      Scattering s = factorize(InitialData::plain(l1, l2), 2 * d - 1);
      GWTable gw = gw_from_wall(s.wall(d - 1, d), d - 1, d);
      EXPECT_EQ(gw.aggregated.at(1), dm1d_N(l1, l2, d)) << l1 << l2 << d;
    }
  }
}
