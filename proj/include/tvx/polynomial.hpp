#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tvx/rational.hpp"

namespace tvx {

// Dense univariate polynomial in q over the rationals; coefficient i multiplies q^i.
class QPolynomial {
 public:
  QPolynomial() = default;
  explicit QPolynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  QPolynomial(const Rational& constant) {  // NOLINT(google-explicit-constructor)
    if (!constant.is_zero()) c_.push_back(constant);
  }
  static QPolynomial monomial(int power, const Rational& coeff = Rational(1)) {
    if (power < 0) throw std::invalid_argument("negative power in QPolynomial::monomial");
    std::vector<Rational> c(static_cast<std::size_t>(power) + 1);
    c.back() = coeff;
    return QPolynomial(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  // Degree of the zero polynomial is -1.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return Rational();
    return c_[static_cast<std::size_t>(i)];
  }
  const Rational& leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
  }

  Rational eval(const Rational& x) const {
    Rational acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  bool is_palindromic() const {
    for (std::size_t i = 0, j = c_.size(); i < j; ++i, --j)
      if (c_[i] != c_[j - 1]) return false;
    return true;
  }

  friend QPolynomial operator+(const QPolynomial& a, const QPolynomial& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return QPolynomial(std::move(c));
  }
  friend QPolynomial operator-(const QPolynomial& a) {
    std::vector<Rational> c(a.c_);
    for (auto& x : c) x.negate();
    return QPolynomial(std::move(c));
  }
  friend QPolynomial operator-(const QPolynomial& a, const QPolynomial& b) { return a + (-b); }
  friend QPolynomial operator*(const QPolynomial& a, const QPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j].add_mul(a.c_[i], b.c_[j]);
    return QPolynomial(std::move(c));
  }
  friend bool operator==(const QPolynomial& a, const QPolynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const QPolynomial& a, const QPolynomial& b) { return !(a == b); }

  // Euclidean division; returns {quotient, remainder}.
  friend std::pair<QPolynomial, QPolynomial> divmod(const QPolynomial& a, const QPolynomial& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> r(a.c_);
    int db = b.degree();
    int dq = a.degree() - db;
    if (dq < 0) return {QPolynomial(), a};
    std::vector<Rational> q(static_cast<std::size_t>(dq) + 1);
    Rational inv = b.leading().inverse();
    for (int k = dq; k >= 0; --k) {
      Rational t = r[static_cast<std::size_t>(k + db)] * inv;
      if (t.is_zero()) continue;
      q[static_cast<std::size_t>(k)] = t;
      for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k + j)] -= t * b.c_[static_cast<std::size_t>(j)];
    }
    return {QPolynomial(std::move(q)), QPolynomial(std::move(r))};
  }

  QPolynomial monic() const {
    if (is_zero()) return {};
    Rational inv = leading().inverse();
    std::vector<Rational> c(c_);
    for (auto& x : c) x *= inv;
    return QPolynomial(std::move(c));
  }

  friend QPolynomial gcd(QPolynomial a, QPolynomial b) {
    while (!b.is_zero()) {
      auto r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  std::string str(const char* var = "q") const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      const Rational& x = c_[static_cast<std::size_t>(i)];
      if (x.is_zero()) continue;
      std::string cs = x.str();
      if (!s.empty()) s += (cs[0] == '-') ? " - " : " + ";
      else if (cs[0] == '-') s += "-";
      if (cs[0] == '-') cs.erase(0, 1);
      bool show = i == 0 || cs != "1";
      if (show) s += cs;
      if (i > 0) s += show ? std::string("*") + var : std::string(var);
      if (i > 1) s += "^" + std::to_string(i);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rational> c_;
};

// Laurent polynomial: coefficient i multiplies q^(low + i).
class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;
  LaurentPolynomial(int low, std::vector<Rational> coeffs) : low_(low), c_(std::move(coeffs)) { trim(); }
  static LaurentPolynomial monomial(int power, const Rational& coeff = Rational(1)) {
    return LaurentPolynomial(power, {coeff});
  }
  static LaurentPolynomial from(const QPolynomial& p) { return LaurentPolynomial(0, p.coeffs()); }

  bool is_zero() const { return c_.empty(); }
  int low() const { return low_; }
  int high() const { return low_ + static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int e) const {
    int i = e - low_;
    if (i < 0 || i >= static_cast<int>(c_.size())) return Rational();
    return c_[static_cast<std::size_t>(i)];
  }

  // Multiply by q^shift and return as an ordinary polynomial; throws if a negative power remains.
  QPolynomial to_polynomial(int shift = 0) const {
    if (is_zero()) return {};
    int lo = low_ + shift;
    if (lo < 0) throw std::domain_error("Laurent polynomial has negative powers");
    std::vector<Rational> c(static_cast<std::size_t>(lo), Rational());
    c.insert(c.end(), c_.begin(), c_.end());
    return QPolynomial(std::move(c));
  }

  LaurentPolynomial& operator+=(const LaurentPolynomial& b) {
    if (b.is_zero()) return *this;
    if (is_zero()) return *this = b;
    int lo = std::min(low_, b.low_);
    int hi = std::max(high(), b.high());
    std::vector<Rational> c(static_cast<std::size_t>(hi - lo + 1));
    for (std::size_t i = 0; i < c_.size(); ++i) c[static_cast<std::size_t>(low_ - lo) + i] += c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[static_cast<std::size_t>(b.low_ - lo) + i] += b.c_[i];
    *this = LaurentPolynomial(lo, std::move(c));
    return *this;
  }
  friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
  friend LaurentPolynomial operator-(const LaurentPolynomial& a) {
    std::vector<Rational> c(a.c_);
    for (auto& x : c) x.negate();
    return LaurentPolynomial(a.low_, std::move(c));
  }
  friend LaurentPolynomial operator-(const LaurentPolynomial& a, const LaurentPolynomial& b) { return a + (-b); }
  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j].add_mul(a.c_[i], b.c_[j]);
    return LaurentPolynomial(a.low_ + b.low_, std::move(c));
  }
  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return a.c_ == b.c_ && (a.c_.empty() || a.low_ == b.low_);
  }

  // Substitute q -> q^{-1}.
  LaurentPolynomial reflected() const {
    if (is_zero()) return {};
    std::vector<Rational> c(c_.rbegin(), c_.rend());
    return LaurentPolynomial(-high(), std::move(c));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    std::size_t k = 0;
    while (k < c_.size() && c_[k].is_zero()) ++k;
    if (k > 0) {
      c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(k));
      low_ += static_cast<int>(k);
    }
    if (c_.empty()) low_ = 0;
  }
  int low_ = 0;
  std::vector<Rational> c_;
};

class pole_at_one : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Reduced quotient num/den of polynomials in q: gcd(num, den) = 1, den monic.
class QRationalFunction {
 public:
  QRationalFunction() : den_(Rational(1)) {}
  QRationalFunction(const QPolynomial& p) : num_(p), den_(Rational(1)) {}  // NOLINT(google-explicit-constructor)
  QRationalFunction(QPolynomial num, QPolynomial den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  const QPolynomial& num() const { return num_; }
  const QPolynomial& den() const { return den_; }
  bool is_polynomial() const { return den_.degree() == 0; }
  QPolynomial as_polynomial() const {
    if (!is_polynomial()) throw std::domain_error("rational function is not a polynomial");
    return num_;
  }

  Rational eval_at_one() const {
    Rational d = den_.eval(Rational(1));
    if (d.is_zero()) throw pole_at_one("rational function has a pole at q = 1");
    return num_.eval(Rational(1)) / d;
  }

  friend QRationalFunction operator+(const QRationalFunction& a, const QRationalFunction& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend QRationalFunction operator-(const QRationalFunction& a, const QRationalFunction& b) {
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
  }
  friend QRationalFunction operator*(const QRationalFunction& a, const QRationalFunction& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend QRationalFunction operator/(const QRationalFunction& a, const QRationalFunction& b) {
    if (b.num_.is_zero()) throw std::domain_error("division by zero rational function");
    return {a.num_ * b.den_, a.den_ * b.num_};
  }
  friend bool operator==(const QRationalFunction& a, const QRationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = QPolynomial(Rational(1));
      return;
    }
    QPolynomial g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = divmod(num_, g).first;
      den_ = divmod(den_, g).first;
    }
    Rational lc = den_.leading().inverse();
    num_ = num_ * QPolynomial(lc);
    den_ = den_ * QPolynomial(lc);
  }
  QPolynomial num_;
  QPolynomial den_;
};

// Reduces a quotient whose numerator and denominator may carry negative powers of q.
inline QRationalFunction rf_normalize(const LaurentPolynomial& num, const LaurentPolynomial& den) {
  if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
  int shift = 0;
  if (!num.is_zero()) shift = std::max(shift, -num.low());
  shift = std::max(shift, -den.low());
  return {num.to_polynomial(shift), den.to_polynomial(shift)};
}

inline Rational rf_eval_at_one(const QRationalFunction& f) { return f.eval_at_one(); }

}  // namespace tvx
