#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "tvx/numerics.hpp"

namespace tvx {

// Dimension vector of a bipartite quiver: p1 on the sinks, p2 on the sources.
struct DimVector {
  std::vector<int> p1;
  std::vector<int> p2;

  int sink_total() const { return std::accumulate(p1.begin(), p1.end(), 0); }
  int source_total() const { return std::accumulate(p2.begin(), p2.end(), 0); }
  bool is_zero() const { return sink_total() == 0 && source_total() == 0; }

  // Vertex values with sinks first.
  std::vector<int> flat() const {
    std::vector<int> v(p1);
    v.insert(v.end(), p2.begin(), p2.end());
    return v;
  }
  static DimVector from_flat(const std::vector<int>& v, std::size_t l1) {
    DimVector d;
    d.p1.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(l1));
    d.p2.assign(v.begin() + static_cast<std::ptrdiff_t>(l1), v.end());
    return d;
  }

  // "2,1+1+1" style: sink parts joined by '+', a comma, then source parts.
  std::string str() const {
    auto join = [](const std::vector<int>& p) {
      std::string s;
      for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "+" : "") + std::to_string(p[i]);
      return s;
    };
    return "(" + join(p1) + "," + join(p2) + ")";
  }

  friend bool operator==(const DimVector&, const DimVector&) = default;
  friend auto operator<=>(const DimVector&, const DimVector&) = default;
};

// Bipartite quiver with sinks i_1..i_l1 and sources j_1..j_l2; every arrow runs from a
// source to a sink, with mult[k][l] arrows from j_l to i_k. Levels feed the default
// stability and are 1 unless the quiver is levelled.
class BipartiteQuiver {
 public:
  BipartiteQuiver(std::vector<std::vector<int>> mult, std::vector<int> sink_levels, std::vector<int> source_levels)
      : mult_(std::move(mult)), sink_levels_(std::move(sink_levels)), source_levels_(std::move(source_levels)) {
    if (mult_.size() != sink_levels_.size()) throw std::invalid_argument("multiplicity rows must match sinks");
    for (const auto& row : mult_) {
      if (row.size() != source_levels_.size()) throw std::invalid_argument("multiplicity columns must match sources");
      for (int m : row)
        if (m < 0) throw std::invalid_argument("negative arrow multiplicity");
    }
    for (int r : sink_levels_)
      if (r < 1) throw std::invalid_argument("levels must be positive");
    for (int s : source_levels_)
      if (s < 1) throw std::invalid_argument("levels must be positive");
  }

  // Complete bipartite quiver K(l1, l2) with m arrows between every sink and source.
  static BipartiteQuiver complete(int l1, int l2, int m = 1) {
    if (l1 < 0 || l2 < 0) throw std::invalid_argument("negative vertex count");
    return BipartiteQuiver(std::vector<std::vector<int>>(static_cast<std::size_t>(l1), std::vector<int>(static_cast<std::size_t>(l2), m)),
                           std::vector<int>(static_cast<std::size_t>(l1), 1), std::vector<int>(static_cast<std::size_t>(l2), 1));
  }
  // One source, one sink, m arrows.
  static BipartiteQuiver kronecker(int m) {
    if (m < 1) throw std::invalid_argument("Kronecker quiver needs at least one arrow");
    return complete(1, 1, m);
  }
  // l1star[r-1] sinks of level r and l2star[s-1] sources of level s; r*s arrows from j^s to i^r.
  static BipartiteQuiver levelled(const std::vector<int>& l1star, const std::vector<int>& l2star) {
    auto expand = [](const std::vector<int>& counts) {
      std::vector<int> lv;
      for (std::size_t r = 0; r < counts.size(); ++r) {
        if (counts[r] < 0) throw std::invalid_argument("negative level count");
        lv.insert(lv.end(), static_cast<std::size_t>(counts[r]), static_cast<int>(r) + 1);
      }
      return lv;
    };
    std::vector<int> sl = expand(l1star), tl = expand(l2star);
    std::vector<std::vector<int>> mult(sl.size(), std::vector<int>(tl.size()));
    for (std::size_t k = 0; k < sl.size(); ++k)
      for (std::size_t l = 0; l < tl.size(); ++l) mult[k][l] = sl[k] * tl[l];
    return BipartiteQuiver(std::move(mult), std::move(sl), std::move(tl));
  }

  int l1() const { return static_cast<int>(sink_levels_.size()); }
  int l2() const { return static_cast<int>(source_levels_.size()); }
  int num_vertices() const { return l1() + l2(); }
  int arrows(int k, int l) const { return mult_[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)]; }
  const std::vector<int>& sink_levels() const { return sink_levels_; }
  const std::vector<int>& source_levels() const { return source_levels_; }

  // Common multiplicity of all arrows, or 0 if multiplicities differ.
  int uniform_multiplicity() const {
    int m = -1;
    for (const auto& row : mult_)
      for (int x : row) {
        if (m == -1) m = x;
        else if (m != x) return 0;
      }
    return m <= 0 ? 0 : m;
  }

  void check(const DimVector& d) const {
    if (static_cast<int>(d.p1.size()) != l1() || static_cast<int>(d.p2.size()) != l2())
      throw std::invalid_argument("dimension vector " + d.str() + " does not fit the quiver");
    for (int x : d.p1)
      if (x < 0) throw std::invalid_argument("negative dimension");
    for (int x : d.p2)
      if (x < 0) throw std::invalid_argument("negative dimension");
  }

  friend bool operator==(const BipartiteQuiver&, const BipartiteQuiver&) = default;

 private:
  std::vector<std::vector<int>> mult_;
  std::vector<int> sink_levels_;
  std::vector<int> source_levels_;
};

// <d, e> = sum_v d_v e_v - sum over arrows a: t(a) -> h(a) of d_{t(a)} e_{h(a)}
inline long euler_form(const BipartiteQuiver& q, const DimVector& d, const DimVector& e) {
  q.check(d);
  q.check(e);
  long s = 0;
  for (int k = 0; k < q.l1(); ++k) s += static_cast<long>(d.p1[static_cast<std::size_t>(k)]) * e.p1[static_cast<std::size_t>(k)];
  for (int l = 0; l < q.l2(); ++l) s += static_cast<long>(d.p2[static_cast<std::size_t>(l)]) * e.p2[static_cast<std::size_t>(l)];
  for (int k = 0; k < q.l1(); ++k)
    for (int l = 0; l < q.l2(); ++l)
      s -= static_cast<long>(q.arrows(k, l)) * d.p2[static_cast<std::size_t>(l)] * e.p1[static_cast<std::size_t>(k)];
  return s;
}

inline long antisym_form(const BipartiteQuiver& q, const DimVector& d, const DimVector& e) {
  return euler_form(q, d, e) - euler_form(q, e, d);
}

// Stability function Theta and positive weight kappa, one integer per vertex (sinks first).
struct StabilitySpec {
  std::vector<long> theta;
  std::vector<long> kappa;
};

// Theta = level on sources and 0 on sinks; kappa = level everywhere.
inline StabilitySpec default_stability(const BipartiteQuiver& q) {
  StabilitySpec s;
  for (int r : q.sink_levels()) {
    s.theta.push_back(0);
    s.kappa.push_back(r);
  }
  for (int r : q.source_levels()) {
    s.theta.push_back(r);
    s.kappa.push_back(r);
  }
  return s;
}

inline void check_stability(const BipartiteQuiver& q, const StabilitySpec& s) {
  if (static_cast<int>(s.theta.size()) != q.num_vertices() || static_cast<int>(s.kappa.size()) != q.num_vertices())
    throw std::invalid_argument("stability data must give one value per vertex");
  for (long k : s.kappa)
    if (k <= 0) throw std::invalid_argument("kappa must be positive");
}

inline Rational slope(const BipartiteQuiver& q, const StabilitySpec& s, const DimVector& d) {
  q.check(d);
  check_stability(q, s);
  std::vector<int> v = d.flat();
  long th = 0, ka = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    th += s.theta[i] * v[i];
    ka += s.kappa[i] * v[i];
  }
  if (ka == 0) throw std::domain_error("slope of the zero dimension vector");
  return Rational(th, ka);
}

// Calls fn(e) for every e with 0 <= e <= d componentwise, in mixed-radix order.
inline void for_each_subvector(const std::vector<int>& d, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> e(d.size(), 0);
  while (true) {
    fn(e);
    std::size_t i = 0;
    while (i < d.size() && e[i] == d[i]) e[i++] = 0;
    if (i == d.size()) return;
    ++e[i];
  }
}

// True iff no proper nonzero subvector e <= d has the slope of d.
inline bool is_theta_coprime(const BipartiteQuiver& q, const StabilitySpec& s, const DimVector& d) {
  Rational mu = slope(q, s, d);
  std::vector<int> full = d.flat();
  bool coprime = true;
  for_each_subvector(full, [&](const std::vector<int>& e) {
    if (!coprime) return;
    bool zero = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
    if (zero || e == full) return;
    if (slope(q, s, DimVector::from_flat(e, d.p1.size())) == mu) coprime = false;
  });
  return coprime;
}

// All weak compositions of n into k parts, lexicographically decreasing.
inline std::vector<std::vector<int>> weak_compositions(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k == 0) {
    if (n == 0) out.emplace_back();
    return out;
  }
  std::vector<int> cur(static_cast<std::size_t>(k), 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == k - 1) {
      cur[static_cast<std::size_t>(i)] = left;
      out.push_back(cur);
      return;
    }
    for (int x = left; x >= 0; --x) {
      cur[static_cast<std::size_t>(i)] = x;
      rec(i + 1, left - x);
    }
  };
  rec(0, n);
  return out;
}

// Every dimension vector with |P1| = n1 and |P2| = n2, in increasing order.
inline std::vector<DimVector> enum_dimvecs(int l1, int l2, int n1, int n2) {
  std::vector<DimVector> out;
  for (const auto& a : weak_compositions(n1, l1))
    for (const auto& b : weak_compositions(n2, l2)) out.push_back({a, b});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tvx
