#pragma once

#include "skeintrace/rational.hpp"

#include <cctype>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace skeintrace {

struct FieldMismatch : std::invalid_argument {
  explicit FieldMismatch(const std::string& what) : std::invalid_argument(what) {}
};

namespace detail {

using IntPoly = std::vector<long long>;  // coefficient of x^i at index i

inline IntPoly poly_divide_exact(IntPoly num, const IntPoly& den) {
  IntPoly q(num.size() - den.size() + 1, 0);
  for (std::size_t i = q.size(); i-- > 0;) {
    const long long c = num[i + den.size() - 1] / den.back();
    q[i] = c;
    for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
  }
  return q;
}

// m-th cyclotomic polynomial, monic, degree phi(m).
inline const IntPoly& cyclotomic_poly(int m) {
  static std::mutex mu;
  static std::map<int, IntPoly> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(m); it != cache.end()) return it->second;
  IntPoly p(static_cast<std::size_t>(m) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(m)] = 1;
  for (int d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    IntPoly phi_d;
    {
      // recursion without holding the lock twice
      IntPoly q(static_cast<std::size_t>(d) + 1, 0);
      q[0] = -1;
      q[static_cast<std::size_t>(d)] = 1;
      for (int e = 1; e < d; ++e) {
        if (d % e == 0) q = poly_divide_exact(q, cache.at(e));
      }
      phi_d = q;
      cache.emplace(d, phi_d);
    }
    p = poly_divide_exact(p, phi_d);
  }
  return cache.emplace(m, p).first->second;
}

}  // namespace detail

// Element of Q(zeta_m) in the power basis 1, z, ..., z^{phi(m)-1}, reduced
// modulo the m-th cyclotomic polynomial. Order 1 denotes a plain rational;
// rationals embed into every cyclotomic field on contact.
class Cyclotomic {
 public:
  Cyclotomic() = default;
  Cyclotomic(int n) : Cyclotomic(Rational(n)) {}            // NOLINT(implicit)
  Cyclotomic(std::int64_t n) : Cyclotomic(Rational(n)) {}   // NOLINT(implicit)
  Cyclotomic(const Rational& q) {                            // NOLINT(implicit)
    if (!q.is_zero()) coeffs_.push_back(q);
  }
  Cyclotomic(int order, std::vector<Rational> coeffs) : order_(order), coeffs_(std::move(coeffs)) {
    if (order < 1) throw std::invalid_argument("cyclotomic order must be >= 1");
    reduce();
  }

  // zeta_m^k
  static Cyclotomic root_of_unity(int order, int k = 1) {
    k %= order;
    if (k < 0) k += order;
    std::vector<Rational> c(static_cast<std::size_t>(k) + 1);
    c[static_cast<std::size_t>(k)] = Rational(1);
    return Cyclotomic(order, std::move(c));
  }

  static Cyclotomic parse(std::string_view text, int order);

  int order() const { return order_; }
  int degree() const { return static_cast<int>(detail::cyclotomic_poly(order_).size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_rational() const { return coeffs_.size() <= 1; }
  Rational rational_part() const { return coeffs_.empty() ? Rational() : coeffs_[0]; }

  std::string str() const;

  Cyclotomic operator-() const {
    Cyclotomic r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    const int m = common_order(a, b);
    std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] = a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
    return Cyclotomic(m, std::move(c));
  }
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    const int m = common_order(a, b);
    if (a.is_zero() || b.is_zero()) return Cyclotomic(m, {});
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Cyclotomic(m, std::move(c));
  }
  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }

  Cyclotomic inverse() const;

  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
  Cyclotomic& operator/=(const Cyclotomic& o) { return *this = *this / o; }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order_ != b.order_ && a.order_ != 1 && b.order_ != 1 && !(a.is_rational() && b.is_rational())) {
      throw FieldMismatch("comparing elements of Q(zeta_" + std::to_string(a.order_) + ") and Q(zeta_" +
                          std::to_string(b.order_) + ")");
    }
    return a.coeffs_ == b.coeffs_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Cyclotomic& c) { return os << c.str(); }

 private:
  static int common_order(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order_ == b.order_) return a.order_;
    if (a.order_ == 1) return b.order_;
    if (b.order_ == 1) return a.order_;
    throw FieldMismatch("mixing Q(zeta_" + std::to_string(a.order_) + ") and Q(zeta_" + std::to_string(b.order_) + ")");
  }

  void reduce() {
    const auto& phi = detail::cyclotomic_poly(order_);
    const std::size_t deg = phi.size() - 1;
    for (std::size_t i = coeffs_.size(); i-- > deg;) {
      if (coeffs_[i].is_zero()) continue;
      const Rational c = coeffs_[i];
      // x^i = x^{i-deg} * x^deg and x^deg = -(phi - x^deg)
      for (std::size_t j = 0; j < deg; ++j) {
        if (phi[j] != 0) coeffs_[i - deg + j] -= c * Rational(static_cast<std::int64_t>(phi[j]));
      }
      coeffs_[i] = Rational();
    }
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  int order_ = 1;
  std::vector<Rational> coeffs_;
};

inline Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (is_rational()) return Cyclotomic(order_, {coeffs_[0].inverse()});
  // Solve (a * x) = 1 with the multiplication-by-a matrix in the power basis.
  const std::size_t n = static_cast<std::size_t>(degree());
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> e(j + 1);
    e[j] = Rational(1);
    const Cyclotomic col = *this * Cyclotomic(order_, std::move(e));
    for (std::size_t i = 0; i < col.coeffs_.size(); ++i) a[i][j] = col.coeffs_[i];
  }
  a[0][n] = Rational(1);
  for (std::size_t c = 0, r = 0; c < n; ++c, ++r) {
    std::size_t p = r;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) throw DivisionByZero();
    std::swap(a[p], a[r]);
    const Rational inv = a[r][c].inverse();
    for (auto& v : a[r]) v *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      const Rational f = a[i][c];
      for (std::size_t k = c; k <= n; ++k) a[i][k] -= f * a[r][k];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
  return Cyclotomic(order_, std::move(x));
}

inline std::string Cyclotomic::str() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const Rational& c = coeffs_[k];
    if (c.is_zero()) continue;
    std::string term;
    const bool neg = c.sign() < 0;
    const Rational mag = neg ? -c : c;
    if (k == 0) {
      term = mag.str();
    } else {
      if (!mag.is_one()) term = mag.str() + "*";
      term += "z";
      if (k > 1) term += "^" + std::to_string(k);
    }
    if (out.empty()) {
      out = (neg ? "-" : "") + term;
    } else {
      out += (neg ? "-" : "+") + term;
    }
  }
  return out;
}

// Parses sums of terms "c", "c*z^k", "z^k", "c*z", with c a rational "p/q".
inline Cyclotomic Cyclotomic::parse(std::string_view text, int order) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw std::invalid_argument("empty scalar");
  std::vector<Rational> coeffs;
  std::size_t i = 0;
  bool any = false;
  while (i < s.size()) {
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') {
      neg = s[i] == '-';
      ++i;
    } else if (any) {
      throw std::invalid_argument("bad scalar: " + s);
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    std::string term = s.substr(i, j - i);
    if (term.empty()) throw std::invalid_argument("bad scalar: " + s);
    Rational c(1);
    std::size_t power = 0;
    const auto zpos = term.find('z');
    if (zpos == std::string::npos) {
      c = Rational::parse(term);
    } else {
      if (order == 1) throw std::invalid_argument("symbol z in a rational field: " + s);
      std::string head = term.substr(0, zpos);
      std::string tail = term.substr(zpos + 1);
      if (!head.empty()) {
        if (head.back() != '*') throw std::invalid_argument("bad scalar term: " + term);
        head.pop_back();
        c = Rational::parse(head);
      }
      power = 1;
      if (!tail.empty()) {
        if (tail[0] != '^') throw std::invalid_argument("bad scalar term: " + term);
        power = std::stoul(tail.substr(1));
      }
    }
    if (neg) c = -c;
    if (coeffs.size() <= power) coeffs.resize(power + 1);
    coeffs[power] += c;
    any = true;
    i = j;
  }
  return Cyclotomic(order, std::move(coeffs));
}

}  // namespace skeintrace
