#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tvx/numerics.hpp"
#include "tvx/quiver.hpp"
#include "tvx/wallcross.hpp"

namespace tvx {

using Decomposition = std::vector<DimVector>;

// Calls fn for every ordered decomposition d = d^1 + ... + d^s into nonzero parts whose
// proper partial sums all have slope strictly above the slope of d.
inline void for_each_hn_decomposition(const BipartiteQuiver& q, const StabilitySpec& spec, const DimVector& d,
                                      const std::function<void(const Decomposition&)>& fn) {
  q.check(d);
  if (d.is_zero()) throw std::invalid_argument("HN decompositions of the zero vector");
  Rational mu = slope(q, spec, d);
  std::vector<int> full = d.flat();
  std::size_t l1 = d.p1.size();
  Decomposition parts;
  std::function<void(const std::vector<int>&)> rec = [&](const std::vector<int>& prefix) {
    std::vector<int> rest(full.size());
    for (std::size_t i = 0; i < full.size(); ++i) rest[i] = full[i] - prefix[i];
    for_each_subvector(rest, [&](const std::vector<int>& part) {
      bool zero = true;
      for (int x : part) zero = zero && x == 0;
      if (zero) return;
      std::vector<int> next(prefix);
      for (std::size_t i = 0; i < next.size(); ++i) next[i] += part[i];
      parts.push_back(DimVector::from_flat(part, l1));
      if (next == full) {
        fn(parts);
      } else if (slope(q, spec, DimVector::from_flat(next, l1)) > mu) {
        rec(next);
      }
      parts.pop_back();
    });
  };
  rec(std::vector<int>(full.size(), 0));
}

inline std::vector<Decomposition> hn_decompositions(const BipartiteQuiver& q, const StabilitySpec& spec, const DimVector& d) {
  std::vector<Decomposition> out;
  for_each_hn_decomposition(q, spec, d, [&](const Decomposition& dec) { out.push_back(dec); });
  return out;
}

namespace detail {

inline long euler_flat(const BipartiteQuiver& q, const std::vector<int>& d, const std::vector<int>& e) {
  std::size_t l1 = static_cast<std::size_t>(q.l1());
  return euler_form(q, DimVector::from_flat(d, l1), DimVector::from_flat(e, l1));
}

// prod_v prod_{j=1}^{d_v} (1 - q^{-j}) as a Laurent polynomial in q
inline LaurentPolynomial q_factorial_denominator(const std::vector<int>& d) {
  LaurentPolynomial acc = LaurentPolynomial::monomial(0);
  for (int n : d)
    for (int j = 1; j <= n; ++j) {
      std::vector<Rational> c(static_cast<std::size_t>(j) + 1);
      c.front() = Rational(-1);
      c.back() = Rational(1);
      acc = acc * LaurentPolynomial(-j, std::move(c));
    }
  return acc;
}

// Final assembly: (q - 1) * num(q) / den(q), reduced, must be a polynomial.
inline QPolynomial assemble_poincare(const LaurentPolynomial& num_q, const std::vector<int>& d) {
  LaurentPolynomial num = num_q * LaurentPolynomial(0, {Rational(-1), Rational(1)});
  QRationalFunction r = rf_normalize(num, q_factorial_denominator(d));
  if (!r.is_polynomial()) throw consistency_error("HN sum did not reduce to a polynomial");
  return r.as_polynomial();
}

inline void check_poincare_invariants(const BipartiteQuiver& q, const DimVector& d, const QPolynomial& p) {
  if (p.is_zero()) return;
  for (const auto& c : p.coeffs())
    if (c.sign() < 0 || !c.is_integer()) throw consistency_error("Poincare polynomial has a bad coefficient");
  if (!p.is_palindromic()) throw consistency_error("Poincare polynomial is not palindromic");
  if (p.degree() != 1 - euler_form(q, d, d)) throw consistency_error("Poincare polynomial has the wrong degree");
}

}  // namespace detail

// Poincare polynomial (in q = class of the affine line) of the stable moduli space, for
// Theta-coprime d. The HN recursion is evaluated by memoizing over partial sums e <= d.
inline QPolynomial poincare(const BipartiteQuiver& q, const StabilitySpec& spec, const DimVector& d) {
  q.check(d);
  if (d.is_zero()) throw std::invalid_argument("Poincare polynomial of the zero vector");
  if (!is_theta_coprime(q, spec, d)) throw std::invalid_argument("dimension vector " + d.str() + " is not Theta-coprime");
  Rational mu = slope(q, spec, d);
  std::vector<int> full = d.flat();
  std::size_t l1 = d.p1.size();

  // Eligible partial sums in increasing mixed-radix order: those of slope > mu, then d.
  std::vector<std::vector<int>> pts;
  for_each_subvector(full, [&](const std::vector<int>& e) {
    bool zero = true;
    for (int x : e) zero = zero && x == 0;
    if (zero || e == full) return;
    if (slope(q, spec, DimVector::from_flat(e, l1)) > mu) pts.push_back(e);
  });
  pts.push_back(full);

  std::map<std::pair<int, int>, QPolynomial> gauss;
  auto gb = [&](int n, int k) -> const QPolynomial& {
    auto key = std::make_pair(n, k);
    auto it = gauss.find(key);
    if (it == gauss.end()) it = gauss.emplace(key, gaussian_binomial(n, k)).first;
    return it->second;
  };

  // G(e) = [e]! * (signed sum over chains ending in e), a Laurent polynomial in v = 1/q.
  std::vector<LaurentPolynomial> g(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& e = pts[i];
    LaurentPolynomial acc = LaurentPolynomial::monomial(static_cast<int>(detail::euler_flat(q, e, e)));
    for (std::size_t j = 0; j < i; ++j) {
      const auto& ep = pts[j];
      bool below = true;
      for (std::size_t v = 0; v < e.size() && below; ++v) below = ep[v] <= e[v];
      if (!below || ep == e || g[j].is_zero()) continue;
      std::vector<int> diff(e.size());
      for (std::size_t v = 0; v < e.size(); ++v) diff[v] = e[v] - ep[v];
      LaurentPolynomial term = g[j] * LaurentPolynomial::monomial(static_cast<int>(detail::euler_flat(q, diff, e)));
      for (std::size_t v = 0; v < e.size(); ++v)
        if (ep[v] > 0 && diff[v] > 0) term = term * LaurentPolynomial::from(gb(e[v], ep[v]));
      acc = acc - term;
    }
    g[i] = std::move(acc);
  }
  QPolynomial p = detail::assemble_poincare(g.back().reflected(), full);
  detail::check_poincare_invariants(q, d, p);
  return p;
}

// The same polynomial as an explicit sum over hn_decompositions.
inline QPolynomial poincare_by_decompositions(const BipartiteQuiver& q, const StabilitySpec& spec, const DimVector& d) {
  if (!is_theta_coprime(q, spec, d)) throw std::invalid_argument("dimension vector " + d.str() + " is not Theta-coprime");
  std::vector<int> full = d.flat();
  QPolynomial dfact(Rational(1));
  for (int n : full) dfact = dfact * q_factorial_factor(n);
  LaurentPolynomial total;  // in v = 1/q, times [d]!
  for_each_hn_decomposition(q, spec, d, [&](const Decomposition& dec) {
    std::vector<int> prefix(full.size(), 0);
    long expo = 0;
    QPolynomial denom(Rational(1));
    for (const auto& part : dec) {
      std::vector<int> pf = part.flat();
      for (std::size_t v = 0; v < pf.size(); ++v) prefix[v] += pf[v];
      expo += detail::euler_flat(q, pf, prefix);
      for (int n : pf) denom = denom * q_factorial_factor(n);
    }
    auto [quot, rem] = divmod(dfact, denom);
    if (!rem.is_zero()) throw consistency_error("q-multinomial is not a polynomial");
    LaurentPolynomial term = LaurentPolynomial::monomial(static_cast<int>(expo), Rational(dec.size() % 2 == 1 ? 1 : -1)) *
                             LaurentPolynomial::from(quot);
    total += term;
  });
  QPolynomial p = detail::assemble_poincare(total.reflected(), full);
  detail::check_poincare_invariants(q, d, p);
  return p;
}

inline long euler_stable(const BipartiteQuiver& q, const StabilitySpec& spec, const DimVector& d) {
  return poincare(q, spec, d).eval(Rational(1)).to_int64();
}

inline long euler_stable(const BipartiteQuiver& q, const DimVector& d) { return euler_stable(q, default_stability(q), d); }

}  // namespace tvx
