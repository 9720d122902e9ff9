#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tvx/numerics.hpp"
#include "tvx/quiver.hpp"
#include "tvx/series.hpp"
#include "tvx/wallcross.hpp"

namespace tvx {

enum class Provenance { Direct, Extracted, ClosedForm, Fixture };

inline const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Direct: return "direct";
    case Provenance::Extracted: return "extracted";
    case Provenance::ClosedForm: return "closed-form";
    case Provenance::Fixture: return "fixture";
  }
  return "unknown";
}

struct ChiEntry {
  long chi = 0;
  Provenance provenance = Provenance::Direct;
};

// Euler characteristics of stable moduli keyed by dimension vector.
class ChiTable {
 public:
  void set(const DimVector& d, long chi, Provenance p) { entries_[d] = {chi, p}; }
  bool contains(const DimVector& d) const { return entries_.count(d) > 0; }
  long at(const DimVector& d) const {
    auto it = entries_.find(d);
    if (it == entries_.end()) throw std::out_of_range("no Euler characteristic for " + d.str());
    return it->second.chi;
  }
  const std::map<DimVector, ChiEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  // Sum of chi over the stored vectors with |P1| = n1 and |P2| = n2.
  long total(int n1, int n2) const {
    long s = 0;
    for (const auto& [d, e] : entries_)
      if (d.sink_total() == n1 && d.source_total() == n2) s += e.chi;
    return s;
  }

 private:
  std::map<DimVector, ChiEntry> entries_;
};

// Monomial s^{P1} t^{P2} in bipartite_context(l1, l2).
inline Monomial monomial_of(const DimVector& d) {
  std::vector<int> v = d.flat();
  return Monomial::from_exponents(v);
}

// Exponents of the x-axis variables, then the y-axis variables, in context order.
inline DimVector dimvec_of(const SeriesContext& ctx, const Monomial& m) {
  DimVector d;
  for (std::size_t i = 0; i < ctx.size(); ++i) (ctx[i].axis == Axis::X ? d.p1 : d.p2).push_back(m[i]);
  return d;
}

struct RSystemSolution {
  int a = 0;
  int b = 0;
  int order = 0;
  std::map<DimVector, TruncatedSeries> r;
  TruncatedSeries f;
  int sweeps = 0;
};

namespace detail {

inline int uniform_plain_multiplicity(const BipartiteQuiver& q) {
  for (int r : q.sink_levels())
    if (r != 1) throw std::invalid_argument("functional equations need unit levels");
  for (int r : q.source_levels())
    if (r != 1) throw std::invalid_argument("functional equations need unit levels");
  int m = q.uniform_multiplicity();
  if (m < 1) throw std::invalid_argument("functional equations need a uniform arrow multiplicity");
  return m;
}

// Coefficients of <d, e> as a linear form in d: <d, e> = sum_v d_v * c_v(e), sinks first.
inline std::vector<long> euler_linear_form(const BipartiteQuiver& q, const DimVector& e) {
  std::vector<long> c;
  for (int k = 0; k < q.l1(); ++k) c.push_back(e.p1[static_cast<std::size_t>(k)]);
  for (int l = 0; l < q.l2(); ++l) {
    long v = e.p2[static_cast<std::size_t>(l)];
    for (int k = 0; k < q.l1(); ++k) v -= static_cast<long>(q.arrows(k, l)) * e.p1[static_cast<std::size_t>(k)];
    c.push_back(v);
  }
  return c;
}

}  // namespace detail

// Solves R^d = (1 - z^d prod_{d'} (R^{d'})^{-<d,d'> chi(d')})^{-1} for all d on the ray (a,b)
// by Jacobi sweeps, and returns f = (prod_d (R^d)^{k chi(d)})^m with k the level of d and m the
// arrow multiplicity. chi must cover every d with k(a+b) <= order.
inline RSystemSolution solve_R_system(const BipartiteQuiver& q, const ChiTable& chi, int a, int b, int order) {
  check_primitive(a, b);
  int mult = detail::uniform_plain_multiplicity(q);
  ContextPtr ctx = bipartite_context(q.l1(), q.l2());
  int levels = order / (a + b);

  struct Node {
    DimVector d;
    int level;
    long chi;
    Monomial mono;
    std::vector<int> flat;
  };
  std::vector<Node> nodes;
  for (int k = 1; k <= levels; ++k)
    for (const auto& d : enum_dimvecs(q.l1(), q.l2(), k * a, k * b)) {
      if (!chi.contains(d)) throw std::invalid_argument("missing Euler characteristic for " + d.str());
      nodes.push_back({d, k, chi.at(d), monomial_of(d), d.flat()});
    }

  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].chi != 0) active.push_back(i);
  std::vector<std::vector<long>> forms;
  for (std::size_t i : active) forms.push_back(detail::euler_linear_form(q, nodes[i].d));

  std::size_t nv = static_cast<std::size_t>(q.num_vertices());
  TruncatedSeries zero(ctx, order);
  TruncatedSeries one = TruncatedSeries::one(ctx, order);
  std::vector<TruncatedSeries> logs(nodes.size(), zero);

  // lambda_v = sum_{d'} chi(d') c_v(d') log R^{d'}
  auto lambdas = [&]() {
    std::vector<TruncatedSeries> lam(nv, zero);
    for (std::size_t ai = 0; ai < active.size(); ++ai) {
      const Node& n = nodes[active[ai]];
      for (std::size_t v = 0; v < nv; ++v) {
        long c = n.chi * forms[ai][v];
        if (c != 0) lam[v] += Rational(c) * logs[active[ai]];
      }
    }
    return lam;
  };
  auto solve_node = [&](const Node& n, const std::vector<TruncatedSeries>& lam) {
    TruncatedSeries expo = zero;
    for (std::size_t v = 0; v < nv; ++v)
      if (n.flat[v] != 0) expo -= Rational(n.flat[v]) * lam[v];
    return inverse(one - tvx::exp(expo).times_monomial(n.mono));
  };

  RSystemSolution sol;
  sol.a = a;
  sol.b = b;
  sol.order = order;
  std::vector<TruncatedSeries> rs(nodes.size(), one);
  int last_change = 0;
  for (int sweep = 1;; ++sweep) {
    if (sweep > order + 2) throw consistency_error("R-system iteration failed to converge");
    std::vector<TruncatedSeries> lam = lambdas();
    int change = order + 1;
    std::vector<TruncatedSeries> next(rs);
    for (std::size_t i : active) {
      next[i] = solve_node(nodes[i], lam);
      change = std::min(change, (next[i] - rs[i]).valuation());
    }
    sol.sweeps = sweep;
    if (change > order) break;
    if (change <= last_change) throw consistency_error("R-system sweep made no progress");
    last_change = change;
    for (std::size_t i : active) {
      rs[i] = std::move(next[i]);
      logs[i] = tvx::log(rs[i]);
    }
  }
  std::vector<TruncatedSeries> lam = lambdas();
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].chi == 0) rs[i] = solve_node(nodes[i], lam);

  TruncatedSeries total = zero;
  for (std::size_t i : active) total += Rational(static_cast<long>(mult) * nodes[i].level * nodes[i].chi) * logs[i];
  sol.f = tvx::exp(total);
  for (std::size_t i = 0; i < nodes.size(); ++i) sol.r.emplace(nodes[i].d, std::move(rs[i]));
  return sol;
}

// Recovers chi level by level from a wall function on the ray (a,b), then checks that
// solving the R-system with the result reproduces f.
inline ChiTable extract_chi(const BipartiteQuiver& q, const TruncatedSeries& f, int a, int b, int order) {
  check_primitive(a, b);
  int mult = detail::uniform_plain_multiplicity(q);
  ContextPtr ctx = bipartite_context(q.l1(), q.l2());
  if (!(*f.context() == *ctx)) throw std::invalid_argument("wall function lives in a different context");
  if (order > f.order()) throw std::invalid_argument("extraction order exceeds the wall function's order");
  ChiTable chi;
  int levels = order / (a + b);
  for (int k = 1; k <= levels; ++k) {
    ChiTable trial = chi;
    auto dims = enum_dimvecs(q.l1(), q.l2(), k * a, k * b);
    for (const auto& d : dims) trial.set(d, 0, Provenance::Extracted);
    int n = k * (a + b);
    TruncatedSeries model = solve_R_system(q, trial, a, b, n).f;
    TruncatedSeries diff = f.truncated(n) - model;
    if (diff.valuation() < n) throw consistency_error("wall function disagrees with lower levels");
    for (const auto& d : dims) {
      Rational c = diff.coeff(monomial_of(d)) / Rational(static_cast<long>(mult) * k);
      if (!c.is_integer()) throw consistency_error("non-integral Euler characteristic at " + d.str());
      chi.set(d, c.to_int64(), Provenance::Extracted);
    }
  }
  if (solve_R_system(q, chi, a, b, order).f != f.truncated(order))
    throw consistency_error("extracted Euler characteristics do not reproduce the wall function");
  return chi;
}

namespace detail {

inline ContextPtr univariate_context() {
  static const ContextPtr ctx = make_context({{"u", Axis::X, 1}});
  return ctx;
}

inline std::vector<Rational> coefficients(const TruncatedSeries& s) {
  std::vector<Rational> c(static_cast<std::size_t>(s.order()) + 1);
  for (const auto& t : s.terms()) c[static_cast<std::size_t>(t.mono.degree())] = t.coeff;
  return c;
}

inline TruncatedSeries univariate(const std::vector<Rational>& c, int order) {
  std::vector<Term> terms;
  for (std::size_t k = 0; k < c.size(); ++k) terms.push_back({Monomial::variable(0, static_cast<int>(k)), c[k]});
  return TruncatedSeries::from_terms(univariate_context(), order, terms);
}

}  // namespace detail

// Solves f = prod_k (1 - (u f^E)^k)^{-k chi[k]} in one variable u up to u^K; chi[0] is ignored.
// Returns the coefficients f_0..f_K.
inline std::vector<Rational> solve_specialized(const std::vector<Rational>& chi, const Rational& E, int K) {
  ContextPtr ctx = detail::univariate_context();
  TruncatedSeries f = TruncatedSeries::one(ctx, K);
  TruncatedSeries u = TruncatedSeries::variable(ctx, K, 0);
  for (int sweep = 0;; ++sweep) {
    if (sweep > K + 2) throw consistency_error("specialized equation failed to converge");
    TruncatedSeries w = u * pow_rational(f, E);
    TruncatedSeries total(ctx, K);
    TruncatedSeries wk = TruncatedSeries::one(ctx, K);
    for (int k = 1; k <= K; ++k) {
      wk = wk * w;
      Rational c = k < static_cast<int>(chi.size()) ? chi[static_cast<std::size_t>(k)] : Rational();
      if (c.is_zero()) continue;
      total += (-Rational(k) * c) * tvx::log(TruncatedSeries::one(ctx, K) - wk);
    }
    TruncatedSeries next = tvx::exp(total);
    if (next == f) break;
    f = std::move(next);
  }
  return detail::coefficients(f);
}

struct CentralSolution {
  std::map<std::pair<int, int>, TruncatedSeries> r;  // keyed by (k, l), 1-based
  TruncatedSeries f;
};

// R^{k,l} = 1 + s_k t_l prod_{k' != k, l' != l} R^{k',l'} and f = prod R^{k,l}.
inline CentralSolution central_system(int l1, int l2, int order) {
  if (l1 < 1 || l2 < 1) throw std::invalid_argument("central system needs l1, l2 >= 1");
  ContextPtr ctx = bipartite_context(l1, l2);
  TruncatedSeries one = TruncatedSeries::one(ctx, order);
  std::map<std::pair<int, int>, TruncatedSeries> r;
  for (int k = 1; k <= l1; ++k)
    for (int l = 1; l <= l2; ++l) r.emplace(std::make_pair(k, l), one);
  for (int sweep = 0;; ++sweep) {
    if (sweep > order + 2) throw consistency_error("central system failed to converge");
    std::map<std::pair<int, int>, TruncatedSeries> next;
    bool changed = false;
    for (const auto& [kl, old] : r) {
      TruncatedSeries prod = one;
      for (const auto& [kl2, s] : r)
        if (kl2.first != kl.first && kl2.second != kl.second) prod = prod * s;
      Monomial m = Monomial::variable(static_cast<std::size_t>(kl.first - 1)) *
                   Monomial::variable(static_cast<std::size_t>(l1 + kl.second - 1));
      TruncatedSeries v = one + prod.times_monomial(m);
      changed = changed || v != old;
      next.emplace(kl, std::move(v));
    }
    r = std::move(next);
    if (!changed) break;
  }
  TruncatedSeries f = one;
  for (const auto& [kl, s] : r) f = f * s;
  return {std::move(r), std::move(f)};
}

// Level-k aggregated invariant on the central slope (1,1).
inline Rational central_N(int l1, int l2, int k) {
  if (k < 1) throw std::invalid_argument("level must be positive");
  return Rational(static_cast<long>(l1) * l2, static_cast<long>(k) * k) *
         binom(static_cast<long>(l1 - 1) * (l2 - 1) * k - 1, k - 1);
}

// Level-one aggregated invariant on the ray (d-1, d); equal to the tree count.
inline Rational dm1d_N(int l1, int l2, int d) {
  if (d < 1) throw std::invalid_argument("d must be positive");
  long n = static_cast<long>(l1 - 1) * d + 1;
  return Rational(static_cast<long>(l1) * l2, static_cast<long>(d) * n) *
         binom(static_cast<long>(l2 - 1) * (l1 - 1) * d + l2 - 1, d - 1);
}

// Closed form for the level-k invariant of the specialized equation with exponent E != 0:
// 1/(E k^2) * sum over (r_i) with sum i r_i = k of prod_i binom(E k i chi[i] + r_i - 1, r_i).
inline Rational specialized_N(const std::vector<Rational>& chi, const Rational& E, int k) {
  if (E.is_zero()) throw std::domain_error("specialized closed form needs E != 0; use the log route");
  if (k < 1) throw std::invalid_argument("level must be positive");
  Rational total;
  std::vector<int> r(static_cast<std::size_t>(k) + 1, 0);
  std::function<void(int, int, Rational)> rec = [&](int i, int left, Rational acc) {
    if (left == 0) {
      total += acc;
      return;
    }
    if (i > left) return;
    Rational ci = i < static_cast<int>(chi.size()) ? chi[static_cast<std::size_t>(i)] : Rational();
    Rational top = E * Rational(static_cast<long>(k) * i) * ci;
    for (int ri = 0; ri * i <= left; ++ri) rec(i + 1, left - ri * i, acc * binom_general(top + Rational(ri - 1), ri));
  };
  rec(1, k, Rational(1));
  return total / (E * Rational(static_cast<long>(k) * k));
}

// E = 0: f = prod (1 - u^k)^{-k chi[k]}, so N[n] = sum_{k | n} k^2 chi[k] / n^2.
inline Rational specialized_N_log_route(const std::vector<Rational>& chi, int n) {
  Rational s;
  for (int k : divisors(n))
    if (k < static_cast<int>(chi.size())) s += Rational(static_cast<long>(k) * k) * chi[static_cast<std::size_t>(k)];
  return s / Rational(static_cast<long>(n) * n);
}

// Exponent in the specialized equation for K(l1, l2) on the ray (a, b).
inline Rational specialized_exponent(int l1, int l2, int a, int b) {
  long num = static_cast<long>(l1) * l2 * a * b - static_cast<long>(l2) * a * a - static_cast<long>(l1) * b * b;
  return Rational(num, static_cast<long>(l1) * l2);
}

// out[k] = sum_{d | k} mu(k/d) (-1)^{sigma (d - k)} (d^2 / k^2) N[d] for k = 1..K; out[0] = 0.
inline std::vector<Rational> bps_moebius(const std::vector<Rational>& N, int sigma) {
  std::vector<Rational> out(N.size());
  for (int k = 1; k < static_cast<int>(N.size()); ++k) {
    Rational s;
    for (int d : divisors(k)) {
      int mu = moebius(k / d);
      if (mu == 0) continue;
      long parity = static_cast<long>(sigma) * (d - k);
      int sign = (parity % 2 == 0) ? mu : -mu;
      s += Rational(static_cast<long>(sign) * d * d, static_cast<long>(k) * k) * N[static_cast<std::size_t>(d)];
    }
    out[static_cast<std::size_t>(k)] = s;
  }
  return out;
}

// Exponents d[1..K] with f = prod_k (1 - (sign u)^k)^{-k d[k]}, from f's coefficients c_0..c_K.
inline std::vector<Rational> product_factorization(const std::vector<Rational>& c, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  if (c.empty() || !c[0].is_one()) throw std::domain_error("product factorization needs constant term 1");
  int K = static_cast<int>(c.size()) - 1;
  std::vector<Rational> L = detail::coefficients(tvx::log(detail::univariate(c, K)));
  std::vector<Rational> d(c.size());
  for (int n = 1; n <= K; ++n) {
    Rational s;
    for (int k : divisors(n)) {
      int mu = moebius(n / k);
      if (mu == 0) continue;
      int sk = (sign == -1 && k % 2 == 1) ? -1 : 1;
      s += Rational(static_cast<long>(mu) * sk * k) * L[static_cast<std::size_t>(k)];
    }
    d[static_cast<std::size_t>(n)] = s / Rational(static_cast<long>(n) * n);
  }
  return d;
}

// Expands prod_k (1 - (sign u)^k)^{-k d[k]} to order K.
inline std::vector<Rational> product_expand(const std::vector<Rational>& d, int sign, int K) {
  ContextPtr ctx = detail::univariate_context();
  TruncatedSeries total(ctx, K);
  for (int k = 1; k < static_cast<int>(d.size()) && k <= K; ++k) {
    if (d[static_cast<std::size_t>(k)].is_zero()) continue;
    Rational coef = (sign == -1 && k % 2 == 1) ? Rational(-1) : Rational(1);
    TruncatedSeries g = TruncatedSeries::one(ctx, K) -
                        TruncatedSeries::monomial(ctx, K, Monomial::variable(0, k), coef);
    total += (-Rational(k) * d[static_cast<std::size_t>(k)]) * tvx::log(g);
  }
  return detail::coefficients(tvx::exp(total));
}

}  // namespace tvx
