#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace skeintrace {

struct DivisionByZero : std::domain_error {
  DivisionByZero() : std::domain_error("division by zero") {}
};

// Exact rational number. Values whose numerator and denominator fit in
// 64 bits are stored inline; anything larger spills into a shared,
// immutable GMP rational. Always kept in lowest terms with den > 0.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n) {}  // NOLINT(implicit)
  Rational(int n) : num_(n) {}           // NOLINT(implicit)
  Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw DivisionByZero();
    assign_small(static_cast<__int128>(n), static_cast<__int128>(d));
  }
  explicit Rational(const mpq_class& q) { assign_big(q); }

  static Rational parse(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty rational");
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    if (q.get_den() == 0) throw DivisionByZero();
    q.canonicalize();
    return Rational(q);
  }

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  bool is_small() const { return !big_; }
  bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }
  int sign() const { return big_ ? sgn(*big_) : (num_ > 0) - (num_ < 0); }

  mpq_class to_mpq() const {
    if (big_) return *big_;
    mpq_class q;
    mpz_class n, d;
    set_i64(n, num_);
    set_i64(d, den_);
    q = mpq_class(n, d);
    return q;
  }

  // Numerator/denominator, valid only for inline values.
  std::int64_t small_num() const { return num_; }
  std::int64_t small_den() const { return den_; }

  std::string str() const {
    if (big_) return big_->get_str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  Rational operator-() const {
    if (big_) return Rational(mpq_class(-*big_));
    if (num_ == INT64_MIN) return Rational(mpq_class(-to_mpq()));
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (!a.big_ && !b.big_) {
      if (a.den_ == 1 && b.den_ == 1) {
        std::int64_t s;
        if (!__builtin_add_overflow(a.num_, b.num_, &s)) return Rational(s);
      }
      const __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
      const __int128 d = static_cast<__int128>(a.den_) * b.den_;
      Rational r;
      r.assign_small(n, d);
      return r;
    }
    return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

  friend Rational operator*(const Rational& a, const Rational& b) {
    if (a.is_zero() || b.is_zero()) return Rational();
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    if (!a.big_ && !b.big_) {
      if (a.den_ == 1 && b.den_ == 1) {
        std::int64_t p;
        if (!__builtin_mul_overflow(a.num_, b.num_, &p)) return Rational(p);
      }
      const __int128 n = static_cast<__int128>(a.num_) * b.num_;
      const __int128 d = static_cast<__int128>(a.den_) * b.den_;
      Rational r;
      r.assign_small(n, d);
      return r;
    }
    return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
  }

  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw DivisionByZero();
    return a * b.inverse();
  }

  Rational inverse() const {
    if (is_zero()) throw DivisionByZero();
    if (big_) return Rational(mpq_class(1 / *big_));
    Rational r;
    r.assign_small(static_cast<__int128>(den_), static_cast<__int128>(num_));
    return r;
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    // Canonical form guarantees a spilled value never fits inline.
    return false;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      const __int128 l = static_cast<__int128>(a.num_) * b.den_;
      const __int128 r = static_cast<__int128>(b.num_) * a.den_;
      return l <=> r;
    }
    const int c = cmp(a.to_mpq(), b.to_mpq());
    return c <=> 0;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  static void set_i64(mpz_class& z, std::int64_t v) {
    if (v >= LONG_MIN && v <= LONG_MAX) {
      z = static_cast<long>(v);
    } else {
      z = std::to_string(v);
    }
  }
  static __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }
  static bool fits(__int128 v) { return v >= INT64_MIN && v <= INT64_MAX; }
  static std::string i128_str(__int128 v) {
    if (v == 0) return "0";
    const bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    std::string s;
    while (u > 0) {
      s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
      u /= 10;
    }
    if (neg) s.push_back('-');
    return {s.rbegin(), s.rend()};
  }

  void assign_small(__int128 n, __int128 d) {
    if (d == 0) throw DivisionByZero();
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const __int128 g = gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (n == 0) d = 1;
    if (fits(n) && fits(d)) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
      big_.reset();
      return;
    }
    mpq_class q(mpz_class(i128_str(n)), mpz_class(i128_str(d)));
    big_ = std::make_shared<const mpq_class>(q);
    num_ = 0;
    den_ = 1;
  }

  void assign_big(const mpq_class& q) {
    const mpz_class& n = q.get_num();
    const mpz_class& d = q.get_den();
    if (n.fits_slong_p() && d.fits_slong_p()) {
      num_ = n.get_si();
      den_ = d.get_si();
      big_.reset();
      return;
    }
    big_ = std::make_shared<const mpq_class>(q);
    num_ = 0;
    den_ = 1;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

}  // namespace skeintrace
