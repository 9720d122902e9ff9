#pragma once

#include <gmpxx.h>

#include <charconv>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tvx {

// Exact rational number. Values whose reduced numerator and denominator fit in
// a signed 64-bit word are stored inline; everything else lives in an mpq_class.
// The representation is canonical: a value is big iff it does not fit inline.
class Rational {
 public:
  Rational() = default;
  Rational(int n) : num_(n) {}                        // NOLINT(google-explicit-constructor)
  Rational(long n) { set_i128(n, 1); }                // NOLINT(google-explicit-constructor)
  Rational(long long n) { set_i128(n, 1); }           // NOLINT(google-explicit-constructor)
  Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    __int128 nn = n, dd = d;
    if (dd < 0) { nn = -nn; dd = -dd; }
    std::uint64_t g = gcd_u(abs_u(nn), static_cast<std::uint64_t>(dd));
    if (g > 1) { nn /= g; dd /= g; }
    set_i128(nn, dd);
  }
  explicit Rational(const mpz_class& z) { set_big(mpq_class(z)); }
  explicit Rational(const mpq_class& q) {
    mpq_class c(q);
    c.canonicalize();
    set_big(std::move(c));
  }

  Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o) {
    if (this != &o) {
      num_ = o.num_;
      den_ = o.den_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;
  ~Rational() = default;

  // Accepts "n", "-n", "n/d".
  static Rational parse(std::string_view s) {
    auto slash = s.find('/');
    auto parse_z = [](std::string_view t) {
      if (t.empty()) throw std::invalid_argument("empty rational component");
      std::string str(t);
      if (str[0] == '+') str.erase(0, 1);
      mpz_class z;
      if (z.set_str(str, 10) != 0) throw std::invalid_argument("malformed rational: " + str);
      return z;
    };
    if (slash == std::string_view::npos) return Rational(parse_z(s));
    mpz_class d = parse_z(s.substr(slash + 1));
    if (d == 0) throw std::domain_error("rational with zero denominator");
    return Rational(mpq_class(parse_z(s.substr(0, slash)), d));
  }

  bool is_big() const { return static_cast<bool>(big_); }
  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }
  int sign() const {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
  }

  mpq_class to_mpq() const {
    if (big_) return *big_;
    return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
  }
  mpz_class numerator() const { return big_ ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(num_)); }
  mpz_class denominator() const { return big_ ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(den_)); }

  // Throws unless the value is an integer fitting in int64.
  std::int64_t to_int64() const {
    if (!is_integer()) throw std::domain_error("rational " + str() + " is not an integer");
    if (big_) throw std::overflow_error("integer " + str() + " exceeds 64 bits");
    return num_;
  }

  double to_double() const { return big_ ? big_->get_d() : static_cast<double>(num_) / static_cast<double>(den_); }

  std::string str() const {
    if (big_) return big_->get_str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  Rational operator-() const {
    Rational r(*this);
    r.negate();
    return r;
  }
  void negate() {
    if (big_) {
      *big_ = -*big_;
    } else {
      num_ = -num_;
    }
  }

  Rational inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    if (big_) return Rational(mpq_class(1) / *big_);
    Rational r;
    if (num_ < 0) {
      r.num_ = -den_;
      r.den_ = -num_;
    } else {
      r.num_ = den_;
      r.den_ = num_;
    }
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    Rational r(a);
    r += b;
    return r;
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    Rational r(a);
    r -= b;
    return r;
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return mul_small(a, b);
    return Rational(a.to_mpq() * b.to_mpq());
  }
  friend Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }

  Rational& operator+=(const Rational& b) {
    if (!big_ && !b.big_) {
      add_small(b.num_, b.den_);
    } else {
      *this = Rational(to_mpq() + b.to_mpq());
    }
    return *this;
  }
  Rational& operator-=(const Rational& b) {
    if (!big_ && !b.big_) {
      add_small(-b.num_, b.den_);
    } else {
      *this = Rational(to_mpq() - b.to_mpq());
    }
    return *this;
  }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  // this += x * y
  void add_mul(const Rational& x, const Rational& y) {
    if (!big_ && !x.big_ && !y.big_ && den_ == 1 && x.den_ == 1 && y.den_ == 1) {
      __int128 v = static_cast<__int128>(x.num_) * y.num_ + num_;
      set_i128(v, 1);
      return;
    }
    *this += x * y;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_)
      return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    return a.to_mpq() < b.to_mpq();
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  static constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

  static std::uint64_t abs_u(__int128 v) { return static_cast<std::uint64_t>(v < 0 ? -v : v); }
  static unsigned __int128 abs_u128(__int128 v) { return static_cast<unsigned __int128>(v < 0 ? -v : v); }
  static std::uint64_t gcd_u(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

  static bool fits(__int128 v) { return v <= kMax && v >= -kMax; }

  static mpz_class to_mpz(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = abs_u128(v);
    std::uint64_t words[2] = {static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(u >> 64)};
    mpz_class z;
    mpz_import(z.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, words);
    if (neg) z = -z;
    return z;
  }

  // n/d must already be reduced with d > 0.
  void set_i128(__int128 n, __int128 d) {
    if (fits(n) && fits(d)) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
      big_.reset();
    } else {
      mpq_class q(to_mpz(n), to_mpz(d));
      big_ = std::make_unique<mpq_class>(std::move(q));
      num_ = 0;
      den_ = 1;
    }
  }

  void set_big(mpq_class q) {
    if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
      long n = q.get_num().get_si();
      long d = q.get_den().get_si();
      if (n != std::numeric_limits<long>::min()) {
        num_ = n;
        den_ = d;
        big_.reset();
        return;
      }
    }
    big_ = std::make_unique<mpq_class>(std::move(q));
    num_ = 0;
    den_ = 1;
  }

  void add_small(std::int64_t bn, std::int64_t bd) {
    if (den_ == 1 && bd == 1) {
      set_i128(static_cast<__int128>(num_) + bn, 1);
      return;
    }
    std::uint64_t g = gcd_u(static_cast<std::uint64_t>(den_), static_cast<std::uint64_t>(bd));
    std::int64_t s = den_ / static_cast<std::int64_t>(g);
    std::int64_t t = bd / static_cast<std::int64_t>(g);
    __int128 n = static_cast<__int128>(num_) * t + static_cast<__int128>(bn) * s;
    __int128 d = static_cast<__int128>(den_) * t;
    if (n == 0) {
      num_ = 0;
      den_ = 1;
      return;
    }
    std::uint64_t r = static_cast<std::uint64_t>(abs_u128(n) % g);
    std::uint64_t g2 = gcd_u(r, g);
    if (g2 > 1) {
      n /= g2;
      d /= g2;
    }
    set_i128(n, d);
  }

  static Rational mul_small(const Rational& a, const Rational& b) {
    if (a.num_ == 0 || b.num_ == 0) return Rational();
    std::uint64_t g1 = gcd_u(abs_u(a.num_), static_cast<std::uint64_t>(b.den_));
    std::uint64_t g2 = gcd_u(abs_u(b.num_), static_cast<std::uint64_t>(a.den_));
    __int128 n = static_cast<__int128>(a.num_ / static_cast<std::int64_t>(g1)) * (b.num_ / static_cast<std::int64_t>(g2));
    __int128 d = static_cast<__int128>(a.den_ / static_cast<std::int64_t>(g2)) * (b.den_ / static_cast<std::int64_t>(g1));
    Rational r;
    r.set_i128(n, d);
    return r;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

}  // namespace tvx
