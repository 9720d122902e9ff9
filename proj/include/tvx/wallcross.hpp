#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tvx/series.hpp"

namespace tvx {

class consistency_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Primitive direction (a, b); walls are listed by decreasing b/a.
struct Direction {
  int a = 0;
  int b = 0;
  friend bool operator==(const Direction&, const Direction&) = default;
};

// Strict order by decreasing b/a, so (0,1) comes first and (1,0) last.
struct DecreasingSlope {
  bool operator()(const Direction& u, const Direction& v) const {
    return static_cast<long>(u.b) * v.a > static_cast<long>(v.b) * u.a;
  }
};

inline void check_primitive(int a, int b) {
  if (a < 0 || b < 0 || (a == 0 && b == 0) || std::gcd(a, b) != 1)
    throw std::invalid_argument("direction (" + std::to_string(a) + "," + std::to_string(b) + ") is not primitive");
}

// T_{(a,b),f}: x -> x f^{-b}, y -> y f^{a}. f must be a series in the ray (a,b) with constant term 1.
struct WallAutomorphism {
  int a = 0;
  int b = 0;
  TruncatedSeries f;
};

// Image of the generators under an automorphism: theta(x) = x * x_factor, theta(y) = y * y_factor.
struct GeneratorImage {
  TruncatedSeries x_factor;
  TruncatedSeries y_factor;
};

// (1 + v)^exponent for a context variable v.
struct InitialFactor {
  std::size_t variable = 0;
  long exponent = 1;
};

// The two-wall product T_{(1,0),F} o T_{(0,1),G} with F and G products of InitialFactors
// over the x-axis and y-axis variables respectively.
struct InitialData {
  ContextPtr ctx;
  std::vector<InitialFactor> factors;

  static InitialData plain(int l1, int l2) {
    InitialData d{bipartite_context(l1, l2), {}};
    for (std::size_t i = 0; i < d.ctx->size(); ++i) d.factors.push_back({i, 1});
    return d;
  }
  // The variable of level r enters as (1 + s x^r)^r.
  static InitialData levelled(const std::vector<int>& l1star, const std::vector<int>& l2star) {
    InitialData d{levelled_context(l1star, l2star), {}};
    for (std::size_t i = 0; i < d.ctx->size(); ++i) d.factors.push_back({i, (*d.ctx)[i].weight});
    return d;
  }
  // (1 + s x)^m and (1 + t y)^m.
  static InitialData kronecker(int m) {
    InitialData d{bipartite_context(1, 1), {}};
    d.factors = {{0, m}, {1, m}};
    return d;
  }

  TruncatedSeries axis_product(Axis axis, int order) const {
    TruncatedSeries acc = TruncatedSeries::one(ctx, order);
    for (const auto& fac : factors) {
      if ((*ctx)[fac.variable].axis != axis) continue;
      TruncatedSeries lin = TruncatedSeries::one(ctx, order) + TruncatedSeries::variable(ctx, order, fac.variable);
      acc = acc * pow_int(lin, fac.exponent);
    }
    return acc;
  }
  TruncatedSeries F(int order) const { return axis_product(Axis::X, order); }
  TruncatedSeries G(int order) const { return axis_product(Axis::Y, order); }
};

namespace detail {

// Caches f^e for integer e at a fixed order.
class PowerCache {
 public:
  explicit PowerCache(TruncatedSeries f) : pos_{TruncatedSeries::one(f.context(), f.order()), f} {}

  const TruncatedSeries& get(long e) {
    if (e >= 0) {
      while (static_cast<long>(pos_.size()) <= e) pos_.push_back(pos_.back() * pos_[1]);
      return pos_[static_cast<std::size_t>(e)];
    }
    if (neg_.empty()) {
      neg_.push_back(pos_[0]);
      neg_.push_back(inverse(pos_[1]));
    }
    while (static_cast<long>(neg_.size()) <= -e) neg_.push_back(neg_.back() * neg_[1]);
    return neg_[static_cast<std::size_t>(-e)];
  }

 private:
  std::vector<TruncatedSeries> pos_;
  std::vector<TruncatedSeries> neg_;
};

// Applies T_{(a,b),f} to x^dp y^dq * g and returns the result divided by x^dp y^dq.
inline TruncatedSeries apply_shifted(int a, int b, PowerCache& cache, const TruncatedSeries& g, int dp, int dq) {
  int n = g.order();
  std::map<std::pair<int, int>, std::vector<const Term*>> groups;
  for (const auto& t : g.terms()) groups[g.bidegree(t.mono)].push_back(&t);
  Accumulator acc(g.size() * 2);
  for (const auto& [pq, terms] : groups) {
    long e = static_cast<long>(a) * (pq.second + dq) - static_cast<long>(b) * (pq.first + dp);
    if (e == 0) {
      for (const Term* u : terms) acc.add(u->mono, u->coeff);
      continue;
    }
    const TruncatedSeries& pw = cache.get(e);
    const auto& pt = pw.terms();
    for (const Term* u : terms) {
      int room = n - u->mono.degree();
      for (std::size_t j = 0; j < pt.size() && pt[j].mono.degree() <= room; ++j)
        acc.add_mul(u->mono * pt[j].mono, u->coeff, pt[j].coeff);
    }
  }
  return TruncatedSeries::from_terms(g.context(), n, acc.take_sorted());
}

}  // namespace detail

// T(g) for a series g in the context variables: a monomial of bidegree (p,q) picks up f^{aq-bp}.
inline TruncatedSeries apply(const WallAutomorphism& t, const TruncatedSeries& g) {
  check_primitive(t.a, t.b);
  t.f.check_same(g);
  if (t.f.is_one()) return g;
  detail::PowerCache cache(t.f.truncated(g.order()));
  return detail::apply_shifted(t.a, t.b, cache, g, 0, 0);
}

// Image of x and y under W_1 o W_2 o ... o W_r, where `application_order` lists W_r first.
inline GeneratorImage compose(const std::vector<WallAutomorphism>& application_order, const ContextPtr& ctx, int order) {
  GeneratorImage img{TruncatedSeries::one(ctx, order), TruncatedSeries::one(ctx, order)};
  for (const auto& w : application_order) {
    check_primitive(w.a, w.b);
    if (w.f.is_one()) continue;
    detail::PowerCache cache(w.f.truncated(order));
    img.x_factor = detail::apply_shifted(w.a, w.b, cache, img.x_factor, 1, 0);
    img.y_factor = detail::apply_shifted(w.a, w.b, cache, img.y_factor, 0, 1);
  }
  return img;
}

inline GeneratorImage commutator_image(const InitialData& init, int order) {
  std::vector<WallAutomorphism> walls{{0, 1, init.G(order)}, {1, 0, init.F(order)}};
  return compose(walls, init.ctx, order);
}

// Ordered factorization: walls with decreasing b/a whose product equals the initial two-wall product.
class Scattering {
 public:
  Scattering(ContextPtr ctx, int order) : ctx_(std::move(ctx)), order_(order) {}

  const ContextPtr& context() const { return ctx_; }
  int order() const { return order_; }
  // Walls in product order (decreasing b/a); only nontrivial walls are stored.
  std::vector<WallAutomorphism> walls() const {
    std::vector<WallAutomorphism> out;
    for (const auto& [d, f] : walls_) out.push_back({d.a, d.b, f});
    return out;
  }
  std::size_t size() const { return walls_.size(); }
  // Wall function at (a,b); the constant 1 when absent.
  TruncatedSeries wall(int a, int b) const {
    check_primitive(a, b);
    auto it = walls_.find({a, b});
    if (it == walls_.end()) return TruncatedSeries::one(ctx_, order_);
    return it->second;
  }
  bool has_wall(int a, int b) const { return walls_.count({a, b}) > 0; }

  void multiply_wall(Direction d, const TruncatedSeries& factor) {
    auto it = walls_.find(d);
    TruncatedSeries f = it == walls_.end() ? factor : it->second * factor;
    if (f.is_one()) {
      if (it != walls_.end()) walls_.erase(it);
      return;
    }
    walls_.insert_or_assign(d, std::move(f));
  }

  // Walls in application order (smallest b/a first), truncated to order n.
  std::vector<WallAutomorphism> application_order(int n) const {
    std::vector<WallAutomorphism> out;
    for (auto it = walls_.rbegin(); it != walls_.rend(); ++it) out.push_back({it->first.a, it->first.b, it->second.truncated(n)});
    return out;
  }

 private:
  ContextPtr ctx_;
  int order_;
  std::map<Direction, TruncatedSeries, DecreasingSlope> walls_;
};

// Order-by-order factorization of the initial product into walls of decreasing slope.
inline Scattering factorize(const InitialData& init, int order) {
  if (order < 0 || order > kMaxOrder) throw std::invalid_argument("order out of range");
  const ContextPtr& ctx = init.ctx;
  GeneratorImage target = commutator_image(init, order);
  Scattering s(ctx, order);
  for (int n = 1; n <= order; ++n) {
    GeneratorImage cur = compose(s.application_order(n), ctx, n);
    TruncatedSeries dx = target.x_factor.truncated(n) - cur.x_factor;
    TruncatedSeries dy = target.y_factor.truncated(n) - cur.y_factor;
    if (dx.valuation() < n || dy.valuation() < n)
      throw consistency_error("factorization discrepancy below the current order");
    std::map<Direction, std::vector<Term>, DecreasingSlope> corrections;
    // Both discrepancies are supported in degree n; walk their union of monomials.
    std::size_t i = 0, j = 0;
    const auto& tx = dx.terms();
    const auto& ty = dy.terms();
    while (i < tx.size() || j < ty.size()) {
      Monomial m;
      Rational cx, cy;
      if (j >= ty.size() || (i < tx.size() && tx[i].mono < ty[j].mono)) {
        m = tx[i].mono;
        cx = tx[i++].coeff;
      } else if (i >= tx.size() || ty[j].mono < tx[i].mono) {
        m = ty[j].mono;
        cy = ty[j++].coeff;
      } else {
        m = tx[i].mono;
        cx = tx[i++].coeff;
        cy = ty[j++].coeff;
      }
      auto [p, q] = ctx->bidegree(m);
      int g = std::gcd(p, q);
      int a = p / g, b = q / g;
      // A central element 1 + c m on the ray (a,b) moves x by -b c m and y by a c m.
      Rational c = a != 0 ? cy / Rational(a) : -cx / Rational(b);
      if (cx != -Rational(b) * c || cy != Rational(a) * c)
        throw consistency_error("discrepancy at order " + std::to_string(n) + " is not central");
      corrections[{a, b}].push_back({m, c});
    }
    for (auto& [d, terms] : corrections) {
      terms.push_back({Monomial(), Rational(1)});
      s.multiply_wall(d, TruncatedSeries::from_terms(ctx, order, terms));
    }
  }
  return s;
}

inline Scattering factorize_levelled(const std::vector<int>& l1star, const std::vector<int>& l2star, int order) {
  return factorize(InitialData::levelled(l1star, l2star), order);
}

// Recomposes the walls and compares with the initial product at the scattering's order.
inline bool compose_and_verify(const Scattering& s, const InitialData& init) {
  GeneratorImage lhs = commutator_image(init, s.order());
  GeneratorImage rhs = compose(s.application_order(s.order()), init.ctx, s.order());
  return lhs.x_factor == rhs.x_factor && lhs.y_factor == rhs.y_factor;
}

// True iff every wall function is supported on its own ray.
inline bool walls_on_rays(const Scattering& s) {
  for (const auto& w : s.walls())
    for (const auto& t : w.f.terms()) {
      auto [p, q] = s.context()->bidegree(t.mono);
      if (static_cast<long>(p) * w.b != static_cast<long>(q) * w.a) return false;
    }
  return true;
}

}  // namespace tvx
