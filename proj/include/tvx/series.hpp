#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tvx/numerics.hpp"

namespace tvx {

enum class Axis : std::uint8_t { X, Y };

// A formal variable. A variable of axis X and weight r stands for s * x^r, so a
// monomial's exponent vector determines its (x, y) bidegree.
struct VariableSpec {
  std::string name;
  Axis axis = Axis::X;
  int weight = 1;
  friend bool operator==(const VariableSpec&, const VariableSpec&) = default;
};

inline constexpr std::size_t kMaxVariables = 24;
inline constexpr int kMaxOrder = 250;

class Monomial {
 public:
  Monomial() = default;
  static Monomial variable(std::size_t i, int power = 1) {
    Monomial m;
    m.set(i, power);
    return m;
  }
  static Monomial from_exponents(const std::vector<int>& e) {
    if (e.size() > kMaxVariables) throw std::invalid_argument("too many variables");
    Monomial m;
    for (std::size_t i = 0; i < e.size(); ++i) m.set(i, e[i]);
    return m;
  }

  int operator[](std::size_t i) const { return e_[i]; }
  int degree() const { return deg_; }
  void set(std::size_t i, int power) {
    if (i >= kMaxVariables) throw std::invalid_argument("variable index out of range");
    if (power < 0 || power > 255) throw std::invalid_argument("monomial exponent out of range");
    deg_ = static_cast<std::uint16_t>(deg_ - e_[i] + power);
    e_[i] = static_cast<std::uint8_t>(power);
  }
  std::vector<int> exponents(std::size_t n) const { return {e_.begin(), e_.begin() + static_cast<std::ptrdiff_t>(n)}; }

  // Callers keep total degree within kMaxOrder, so exponents cannot overflow.
  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVariables; ++i) m.e_[i] = static_cast<std::uint8_t>(a.e_[i] + b.e_[i]);
    m.deg_ = static_cast<std::uint16_t>(a.deg_ + b.deg_);
    return m;
  }
  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      if (e_[i] > o.e_[i]) return false;
    return true;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.deg_ == b.deg_ && std::memcmp(a.e_.data(), b.e_.data(), kMaxVariables) == 0;
  }
  // Lexicographic on exponent vectors.
  static bool lex_less(const Monomial& a, const Monomial& b) {
    return std::memcmp(a.e_.data(), b.e_.data(), kMaxVariables) < 0;
  }
  // Total degree first, then lexicographic.
  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.deg_ != b.deg_) return a.deg_ < b.deg_;
    return lex_less(a, b);
  }

  std::size_t hash() const {
    std::uint64_t w[3];
    std::memcpy(w, e_.data(), sizeof w);
    std::uint64_t h = w[0] * 0x9E3779B97F4A7C15ULL;
    h ^= (w[1] + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2)) * 0xBF58476D1CE4E5B9ULL;
    h ^= (w[2] + 0x85EBCA77C2B2AE63ULL + (h << 6) + (h >> 2)) * 0x94D049BB133111EBULL;
    return static_cast<std::size_t>(h ^ (h >> 31));
  }

 private:
  static_assert(kMaxVariables == 24, "hash reads exactly three words");
  std::array<std::uint8_t, kMaxVariables> e_{};
  std::uint16_t deg_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

class SeriesContext {
 public:
  explicit SeriesContext(std::vector<VariableSpec> vars) : vars_(std::move(vars)) {
    if (vars_.size() > kMaxVariables) throw std::invalid_argument("too many series variables");
    for (const auto& v : vars_)
      if (v.weight < 1) throw std::invalid_argument("variable weights must be positive");
  }
  std::size_t size() const { return vars_.size(); }
  const VariableSpec& operator[](std::size_t i) const { return vars_[i]; }
  const std::vector<VariableSpec>& variables() const { return vars_; }

  std::pair<int, int> bidegree(const Monomial& m) const {
    int p = 0, q = 0;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      int c = m[i] * vars_[i].weight;
      if (vars_[i].axis == Axis::X) p += c;
      else q += c;
    }
    return {p, q};
  }
  friend bool operator==(const SeriesContext& a, const SeriesContext& b) { return a.vars_ == b.vars_; }

 private:
  std::vector<VariableSpec> vars_;
};

using ContextPtr = std::shared_ptr<const SeriesContext>;

inline ContextPtr make_context(std::vector<VariableSpec> vars) {
  return std::make_shared<const SeriesContext>(std::move(vars));
}

// Variables s1..s_l1 on the x axis followed by t1..t_l2 on the y axis, all of weight one.
inline ContextPtr bipartite_context(int l1, int l2) {
  if (l1 < 0 || l2 < 0) throw std::invalid_argument("negative vertex count");
  std::vector<VariableSpec> v;
  for (int k = 1; k <= l1; ++k) v.push_back({"s" + std::to_string(k), Axis::X, 1});
  for (int l = 1; l <= l2; ++l) v.push_back({"t" + std::to_string(l), Axis::Y, 1});
  return make_context(std::move(v));
}

// l1star[r-1] variables of weight r on the x axis, then likewise for y.
inline ContextPtr levelled_context(const std::vector<int>& l1star, const std::vector<int>& l2star) {
  std::vector<VariableSpec> v;
  auto add = [&v](const std::vector<int>& counts, const char* stem, Axis axis) {
    for (std::size_t r = 0; r < counts.size(); ++r) {
      if (counts[r] < 0) throw std::invalid_argument("negative level count");
      for (int z = 1; z <= counts[r]; ++z)
        v.push_back({std::string(stem) + std::to_string(r + 1) + "_" + std::to_string(z), axis, static_cast<int>(r) + 1});
    }
  };
  add(l1star, "s", Axis::X);
  add(l2star, "t", Axis::Y);
  return make_context(std::move(v));
}

struct Term {
  Monomial mono;
  Rational coeff;
};

namespace detail {

class Accumulator {
 public:
  explicit Accumulator(std::size_t reserve = 0) { map_.reserve(reserve); }
  void add(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    map_[m] += c;
  }
  void add_mul(const Monomial& m, const Rational& a, const Rational& b) { map_[m].add_mul(a, b); }
  std::vector<Term> take_sorted() {
    std::vector<Term> out;
    out.reserve(map_.size());
    for (auto& [m, c] : map_)
      if (!c.is_zero()) out.push_back({m, std::move(c)});
    map_.clear();
    std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.mono < b.mono; });
    return out;
  }

 private:
  std::unordered_map<Monomial, Rational, MonomialHash> map_;
};

}  // namespace detail

// Multivariate power series modulo the ideal of monomials of total degree > order.
// Terms are kept sorted by (total degree, lexicographic exponent vector) with no zeros.
class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  TruncatedSeries(ContextPtr ctx, int order) : ctx_(std::move(ctx)), order_(order) {
    if (!ctx_) throw std::invalid_argument("series needs a context");
    if (order < 0 || order > kMaxOrder) throw std::invalid_argument("series order out of range");
  }
  static TruncatedSeries from_terms(ContextPtr ctx, int order, const std::vector<Term>& terms) {
    TruncatedSeries s(std::move(ctx), order);
    detail::Accumulator acc(terms.size());
    for (const auto& t : terms) {
      s.check_monomial(t.mono);
      if (t.mono.degree() <= order) acc.add(t.mono, t.coeff);
    }
    s.terms_ = acc.take_sorted();
    return s;
  }
  static TruncatedSeries constant(ContextPtr ctx, int order, const Rational& c) {
    TruncatedSeries s(std::move(ctx), order);
    if (!c.is_zero()) s.terms_.push_back({Monomial(), c});
    return s;
  }
  static TruncatedSeries one(ContextPtr ctx, int order) { return constant(std::move(ctx), order, Rational(1)); }
  static TruncatedSeries monomial(ContextPtr ctx, int order, const Monomial& m, const Rational& c = Rational(1)) {
    TruncatedSeries s(std::move(ctx), order);
    s.check_monomial(m);
    if (m.degree() <= order && !c.is_zero()) s.terms_.push_back({m, c});
    return s;
  }
  static TruncatedSeries variable(ContextPtr ctx, int order, std::size_t i) {
    return monomial(std::move(ctx), order, Monomial::variable(i));
  }

  const ContextPtr& context() const { return ctx_; }
  const SeriesContext& ctx() const { return *ctx_; }
  int order() const { return order_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].mono.degree() == 0 && terms_[0].coeff.is_one(); }

  Rational constant_term() const {
    if (!terms_.empty() && terms_[0].mono.degree() == 0) return terms_[0].coeff;
    return Rational();
  }
  Rational coeff(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& x) { return t.mono < x; });
    if (it != terms_.end() && it->mono == m) return it->coeff;
    return Rational();
  }
  // Lowest total degree carrying a nonzero term; order + 1 for the zero series.
  int valuation() const { return terms_.empty() ? order_ + 1 : terms_.front().mono.degree(); }

  // Index range [first, last) of terms of total degree k.
  std::pair<std::size_t, std::size_t> degree_range(int k) const {
    auto lo = std::lower_bound(terms_.begin(), terms_.end(), k, [](const Term& t, int d) { return t.mono.degree() < d; });
    auto hi = std::lower_bound(lo, terms_.end(), k + 1, [](const Term& t, int d) { return t.mono.degree() < d; });
    return {static_cast<std::size_t>(lo - terms_.begin()), static_cast<std::size_t>(hi - terms_.begin())};
  }
  TruncatedSeries homogeneous_part(int k) const {
    TruncatedSeries s(ctx_, order_);
    auto [lo, hi] = degree_range(k);
    s.terms_.assign(terms_.begin() + static_cast<std::ptrdiff_t>(lo), terms_.begin() + static_cast<std::ptrdiff_t>(hi));
    return s;
  }

  TruncatedSeries truncated(int n) const {
    TruncatedSeries s(ctx_, std::min(n, order_));
    auto [lo, hi] = degree_range(s.order_ + 1);
    (void)hi;
    s.terms_.assign(terms_.begin(), terms_.begin() + static_cast<std::ptrdiff_t>(lo));
    return s;
  }

  // Keeps the terms satisfying pred; the order is unchanged.
  template <class Pred>
  TruncatedSeries filtered(Pred pred) const {
    TruncatedSeries s(ctx_, order_);
    for (const auto& t : terms_)
      if (pred(t.mono)) s.terms_.push_back(t);
    return s;
  }

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) { return combine(a, b, false); }
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return combine(a, b, true); }
  friend TruncatedSeries operator-(const TruncatedSeries& a) {
    TruncatedSeries s(a);
    for (auto& t : s.terms_) t.coeff.negate();
    return s;
  }
  TruncatedSeries& operator+=(const TruncatedSeries& b) { return *this = *this + b; }
  TruncatedSeries& operator-=(const TruncatedSeries& b) { return *this = *this - b; }
  TruncatedSeries& operator*=(const TruncatedSeries& b) { return *this = *this * b; }

  friend TruncatedSeries operator*(const Rational& c, const TruncatedSeries& a) {
    TruncatedSeries s(a.ctx_, a.order_);
    if (c.is_zero()) return s;
    s.terms_.reserve(a.terms_.size());
    for (const auto& t : a.terms_) s.terms_.push_back({t.mono, c * t.coeff});
    return s;
  }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.check_same(b);
    int n = std::min(a.order_, b.order_);
    TruncatedSeries s(a.ctx_, n);
    if (a.is_zero() || b.is_zero()) return s;
    if (a.is_one()) return b.truncated(n);
    if (b.is_one()) return a.truncated(n);
    const TruncatedSeries& big = a.size() >= b.size() ? a : b;
    const TruncatedSeries& small = a.size() >= b.size() ? b : a;
    detail::Accumulator acc(big.size() + small.size());
    std::vector<std::size_t> ends = big.degree_ends(n);
    for (const auto& u : small.terms_) {
      int room = n - u.mono.degree();
      if (room < 0) break;
      std::size_t end = ends[static_cast<std::size_t>(room)];
      for (std::size_t j = 0; j < end; ++j) acc.add_mul(u.mono * big.terms_[j].mono, u.coeff, big.terms_[j].coeff);
    }
    s.terms_ = acc.take_sorted();
    return s;
  }

  // c * m * this
  TruncatedSeries times_monomial(const Monomial& m, const Rational& c = Rational(1)) const {
    check_monomial(m);
    TruncatedSeries s(ctx_, order_);
    if (c.is_zero()) return s;
    for (const auto& t : terms_) {
      if (t.mono.degree() + m.degree() > order_) break;
      s.terms_.push_back({t.mono * m, c * t.coeff});
    }
    return s;
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.order_ != b.order_ || a.terms_.size() != b.terms_.size()) return false;
    if (a.ctx_ != b.ctx_ && !(a.ctx_ && b.ctx_ && *a.ctx_ == *b.ctx_)) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
  }
  friend bool operator!=(const TruncatedSeries& a, const TruncatedSeries& b) { return !(a == b); }

  std::pair<int, int> bidegree(const Monomial& m) const { return ctx_->bidegree(m); }

  void check_same(const TruncatedSeries& b) const {
    if (!ctx_ || !b.ctx_) throw std::invalid_argument("series without context");
    if (ctx_ != b.ctx_ && !(*ctx_ == *b.ctx_)) throw std::invalid_argument("series contexts differ");
  }

  std::string str() const {
    if (terms_.empty()) return "0 + O(" + std::to_string(order_ + 1) + ")";
    std::string s;
    for (const auto& t : terms_) {
      std::string cs = t.coeff.str();
      bool neg = cs[0] == '-';
      if (neg) cs.erase(0, 1);
      if (!s.empty()) s += neg ? " - " : " + ";
      else if (neg) s += "-";
      std::string mono;
      for (std::size_t i = 0; i < ctx_->size(); ++i) {
        int e = t.mono[i];
        if (e == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += (*ctx_)[i].name;
        if (e > 1) mono += "^" + std::to_string(e);
      }
      if (mono.empty()) s += cs;
      else if (cs == "1") s += mono;
      else s += cs + "*" + mono;
    }
    return s;
  }

 private:
  friend class SeriesBuilder;

  // ends[k] = number of terms of total degree <= k, for k = 0..n
  std::vector<std::size_t> degree_ends(int n) const {
    std::vector<std::size_t> ends(static_cast<std::size_t>(n) + 1, terms_.size());
    std::size_t j = 0;
    for (int k = 0; k <= n; ++k) {
      while (j < terms_.size() && terms_[j].mono.degree() <= k) ++j;
      ends[static_cast<std::size_t>(k)] = j;
    }
    return ends;
  }

  void check_monomial(const Monomial& m) const {
    for (std::size_t i = ctx_->size(); i < kMaxVariables; ++i)
      if (m[i] != 0) throw std::invalid_argument("monomial uses a variable outside the context");
  }

  static TruncatedSeries combine(const TruncatedSeries& a, const TruncatedSeries& b, bool subtract) {
    a.check_same(b);
    int n = std::min(a.order_, b.order_);
    TruncatedSeries s(a.ctx_, n);
    s.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (true) {
      bool ai = i < a.terms_.size() && a.terms_[i].mono.degree() <= n;
      bool bj = j < b.terms_.size() && b.terms_[j].mono.degree() <= n;
      if (!ai && !bj) break;
      if (ai && (!bj || a.terms_[i].mono < b.terms_[j].mono)) {
        s.terms_.push_back(a.terms_[i++]);
      } else if (bj && (!ai || b.terms_[j].mono < a.terms_[i].mono)) {
        Term t = b.terms_[j++];
        if (subtract) t.coeff.negate();
        s.terms_.push_back(std::move(t));
      } else {
        Rational c = subtract ? a.terms_[i].coeff - b.terms_[j].coeff : a.terms_[i].coeff + b.terms_[j].coeff;
        if (!c.is_zero()) s.terms_.push_back({a.terms_[i].mono, std::move(c)});
        ++i;
        ++j;
      }
    }
    return s;
  }

  ContextPtr ctx_;
  int order_ = 0;
  std::vector<Term> terms_;
};

// Builds a series one homogeneous degree at a time, in increasing degree.
class SeriesBuilder {
 public:
  SeriesBuilder(ContextPtr ctx, int order) : s_(std::move(ctx), order) {}
  void append_degree(std::vector<Term> sorted_part) {
    for (auto& t : sorted_part) s_.terms_.push_back(std::move(t));
  }
  const TruncatedSeries& current() const { return s_; }
  std::pair<std::size_t, std::size_t> range(int k) const { return s_.degree_range(k); }
  TruncatedSeries take() { return std::move(s_); }

 private:
  TruncatedSeries s_;
};

namespace detail {

// acc += scale * (degree-i part of a) * (degree-j part of b)
inline void add_part_product(Accumulator& acc, const std::vector<Term>& a, std::pair<std::size_t, std::size_t> ra,
                             const std::vector<Term>& b, std::pair<std::size_t, std::size_t> rb, const Rational& scale) {
  if (ra.first == ra.second || rb.first == rb.second) return;
  for (std::size_t i = ra.first; i < ra.second; ++i) {
    Rational c = scale * a[i].coeff;
    for (std::size_t j = rb.first; j < rb.second; ++j) acc.add_mul(a[i].mono * b[j].mono, c, b[j].coeff);
  }
}

inline std::vector<int> nonempty_degrees(const TruncatedSeries& f) {
  std::vector<int> d;
  for (const auto& t : f.terms())
    if (d.empty() || d.back() != t.mono.degree()) d.push_back(t.mono.degree());
  return d;
}

}  // namespace detail

inline TruncatedSeries inverse(const TruncatedSeries& f) {
  Rational c0 = f.constant_term();
  if (c0.is_zero()) throw std::domain_error("series with zero constant term is not invertible");
  int n = f.order();
  Rational minus_inv = -c0.inverse();
  SeriesBuilder g(f.context(), n);
  g.append_degree({Term{Monomial(), c0.inverse()}});
  std::vector<int> fdeg = detail::nonempty_degrees(f);
  for (int k = 1; k <= n; ++k) {
    // g_k = -(1/f_0) sum_{j>=1} f_j g_{k-j}
    detail::Accumulator acc;
    for (int j : fdeg) {
      if (j == 0) continue;
      if (j > k) break;
      detail::add_part_product(acc, f.terms(), f.degree_range(j), g.current().terms(), g.range(k - j), minus_inv);
    }
    g.append_degree(acc.take_sorted());
  }
  return g.take();
}

// Requires constant term 1.
inline TruncatedSeries log(const TruncatedSeries& f) {
  if (!f.constant_term().is_one()) throw std::domain_error("log needs constant term 1");
  int n = f.order();
  SeriesBuilder l(f.context(), n);
  std::vector<int> fdeg = detail::nonempty_degrees(f);
  // Euler operator identity: k L_k = k f_k - sum_{j=1}^{k-1} j L_j f_{k-j}
  for (int k = 1; k <= n; ++k) {
    detail::Accumulator acc;
    auto rk = f.degree_range(k);
    for (std::size_t i = rk.first; i < rk.second; ++i) acc.add(f.terms()[i].mono, f.terms()[i].coeff);
    for (int fj : fdeg) {
      if (fj == 0) continue;
      int j = k - fj;
      if (j < 1) break;
      detail::add_part_product(acc, l.current().terms(), l.range(j), f.terms(), f.degree_range(fj),
                               Rational(-j, k));
    }
    l.append_degree(acc.take_sorted());
  }
  return l.take();
}

// Requires zero constant term.
inline TruncatedSeries exp(const TruncatedSeries& g) {
  if (!g.constant_term().is_zero()) throw std::domain_error("exp needs zero constant term");
  int n = g.order();
  SeriesBuilder e(g.context(), n);
  e.append_degree({Term{Monomial(), Rational(1)}});
  std::vector<int> gdeg = detail::nonempty_degrees(g);
  // k E_k = sum_{j=1}^{k} j g_j E_{k-j}
  for (int k = 1; k <= n; ++k) {
    detail::Accumulator acc;
    for (int j : gdeg) {
      if (j > k) break;
      detail::add_part_product(acc, g.terms(), g.degree_range(j), e.current().terms(), e.range(k - j), Rational(j, k));
    }
    e.append_degree(acc.take_sorted());
  }
  return e.take();
}

// f^r = exp(r log f) for f with constant term 1.
inline TruncatedSeries pow_rational(const TruncatedSeries& f, const Rational& r) {
  if (r.is_zero()) return TruncatedSeries::one(f.context(), f.order());
  if (r.is_one()) return f;
  return exp(r * log(f));
}

// Integer power by repeated squaring; negative exponents go through the inverse.
inline TruncatedSeries pow_int(const TruncatedSeries& f, long e) {
  if (e < 0) return pow_int(inverse(f), -e);
  TruncatedSeries result = TruncatedSeries::one(f.context(), f.order());
  TruncatedSeries base = f;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

// Terms whose bidegree lies on the ray N_{>0}(a, b), plus the constant term.
inline TruncatedSeries slope_component(const TruncatedSeries& f, int a, int b) {
  if (a < 0 || b < 0 || (a == 0 && b == 0) || std::gcd(a, b) != 1)
    throw std::invalid_argument("slope must be a primitive nonnegative vector");
  return f.filtered([&](const Monomial& m) {
    auto [p, q] = f.bidegree(m);
    return static_cast<long>(p) * b == static_cast<long>(q) * a;
  });
}

// Coefficient list c_0..c_K of the diagonal specialization: c_k is the sum of the
// coefficients of bidegree (ka, kb).
inline std::vector<Rational> specialize_diagonal(const TruncatedSeries& f, int a, int b) {
  if (a < 0 || b < 0 || (a == 0 && b == 0)) throw std::invalid_argument("bad slope");
  std::vector<Rational> c;
  for (const auto& t : f.terms()) {
    auto [p, q] = f.bidegree(t.mono);
    if (static_cast<long>(p) * b != static_cast<long>(q) * a) continue;
    int k = a != 0 ? p / a : q / b;
    if (k * a != p || k * b != q) continue;
    if (static_cast<int>(c.size()) <= k) c.resize(static_cast<std::size_t>(k) + 1);
    c[static_cast<std::size_t>(k)] += t.coeff;
  }
  if (c.empty()) c.resize(1);
  return c;
}

}  // namespace tvx
