#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "tvx/funceq.hpp"
#include "tvx/hn.hpp"
#include "tvx/quiver.hpp"
#include "tvx/series.hpp"
#include "tvx/wallcross.hpp"

namespace tvx {

// Relative Gromov-Witten invariants read off log f on the ray (a,b): the coefficient of the
// level-k monomial z^d in log f equals k N[d].
struct GWTable {
  int a = 0;
  int b = 0;
  std::map<DimVector, Rational> refined;
  std::map<int, Rational> aggregated;  // level k -> sum of refined invariants at level k
};

inline GWTable gw_from_wall(const TruncatedSeries& f, int a, int b) {
  check_primitive(a, b);
  GWTable t;
  t.a = a;
  t.b = b;
  TruncatedSeries l = tvx::log(f);
  for (const auto& term : l.terms()) {
    auto [p, q] = f.bidegree(term.mono);
    int k = a != 0 ? p / a : q / b;
    if (k * a != p || k * b != q) throw consistency_error("wall function has a term off its ray");
    Rational n = term.coeff / Rational(k);
    t.refined[dimvec_of(f.ctx(), term.mono)] = n;
    t.aggregated[k] += n;
  }
  return t;
}

enum class SmoothModel {
  Back,   // unit framing at the sources; generating function f^b
  Front,  // unit framing at the sinks; generating function f^a
};

// Euler characteristics of the smooth models, keyed by dimension vector: the coefficients of
// f^b or f^a, which must all be integers.
inline std::map<DimVector, long> smooth_model_chi(const TruncatedSeries& f, int a, int b, SmoothModel type) {
  check_primitive(a, b);
  TruncatedSeries g = pow_int(f, type == SmoothModel::Back ? b : a);
  std::map<DimVector, long> out;
  for (const auto& t : g.terms()) {
    if (!t.coeff.is_integer()) throw consistency_error("smooth model series has a non-integral coefficient");
    out[dimvec_of(f.ctx(), t.mono)] = t.coeff.to_int64();
  }
  return out;
}

namespace detail {

// Euler characteristics are invariant under permuting sinks and permuting sources.
class EulerCache {
 public:
  explicit EulerCache(BipartiteQuiver q) : q_(std::move(q)), spec_(default_stability(q_)) {}
  long get(const DimVector& d) {
    DimVector key = d;
    std::sort(key.p1.rbegin(), key.p1.rend());
    std::sort(key.p2.rbegin(), key.p2.rend());
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, euler_stable(q_, spec_, key)).first;
    return it->second;
  }

 private:
  BipartiteQuiver q_;
  StabilitySpec spec_;
  std::map<DimVector, long> cache_;
};

}  // namespace detail

struct CorrespondenceRow {
  DimVector d;
  Rational gw;
  long chi = 0;
};

struct CorrespondenceReport {
  int l1 = 0;
  int l2 = 0;
  int a = 0;
  int b = 0;
  std::vector<CorrespondenceRow> rows;
  Rational gw_total;
  long chi_total = 0;
  bool pass = false;
};

// For primitive (a,b): every level-one invariant of the wall equals the Euler characteristic
// of the corresponding stable moduli space.
inline CorrespondenceReport coprime_correspondence_check(int l1, int l2, int a, int b) {
  check_primitive(a, b);
  Scattering s = factorize(InitialData::plain(l1, l2), a + b);
  GWTable gw = gw_from_wall(s.wall(a, b), a, b);
  detail::EulerCache euler(BipartiteQuiver::complete(l1, l2));
  CorrespondenceReport r{l1, l2, a, b, {}, Rational(), 0, true};
  for (const auto& d : enum_dimvecs(l1, l2, a, b)) {
    auto it = gw.refined.find(d);
    Rational n = it == gw.refined.end() ? Rational() : it->second;
    long chi = euler.get(d);
    r.rows.push_back({d, n, chi});
    r.gw_total += n;
    r.chi_total += chi;
    if (n != Rational(chi)) r.pass = false;
  }
  // Nothing else may sit at level one.
  std::set<DimVector> expected;
  for (const auto& row : r.rows) expected.insert(row.d);
  for (const auto& [d, n] : gw.refined)
    if (d.sink_total() == a && d.source_total() == b && expected.count(d) == 0) r.pass = false;
  return r;
}

struct DivisibilityReport {
  int m = 0;
  int a = 0;
  int b = 0;
  int k = 0;
  long lhs = 0;        // sum of chi over level-k vectors of K(m, m)
  long kronecker = 0;  // chi of the Kronecker quiver K(m) in dimension (ka, kb)
  Provenance kronecker_source = Provenance::Direct;
  bool pass = false;
};

// sum_{|P1| = ka, |P2| = kb} chi_{K(m,m)}(P1, P2) = m * chi_{K(m)}(ka, kb)
inline DivisibilityReport balanced_divisibility_check(int m, int a, int b, int k) {
  check_primitive(a, b);
  if (m < 1 || k < 1) throw std::invalid_argument("m and k must be positive");
  int n = k * (a + b);
  DivisibilityReport r{m, a, b, k, 0, 0, Provenance::Direct, false};
  BipartiteQuiver qmm = BipartiteQuiver::complete(m, m);
  Scattering s = factorize(InitialData::plain(m, m), n);
  ChiTable chi = extract_chi(qmm, s.wall(a, b), a, b, n);
  r.lhs = chi.total(k * a, k * b);
  BipartiteQuiver km = BipartiteQuiver::kronecker(m);
  if (k == 1) {
    r.kronecker = euler_stable(km, DimVector{{a}, {b}});
  } else {
    Scattering sk = factorize(InitialData::kronecker(m), n);
    r.kronecker = extract_chi(km, sk.wall(a, b), a, b, n).at(DimVector{{k * a}, {k * b}});
    r.kronecker_source = Provenance::Extracted;
  }
  r.pass = r.lhs == static_cast<long>(m) * r.kronecker;
  return r;
}

}  // namespace tvx
