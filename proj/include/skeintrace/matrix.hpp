#pragma once

#include "skeintrace/cyclotomic.hpp"
#include "skeintrace/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace skeintrace {

template <class K>
using Vec = std::vector<K>;

template <class K>
bool is_zero_vec(const Vec<K>& v) {
  for (const auto& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

// Dense row-major matrix.
template <class K>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<K> data) : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw std::invalid_argument("matrix entry count mismatch");
  }
  Matrix(std::initializer_list<std::initializer_list<K>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
      if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = K(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  K& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const K& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<K>& data() const { return data_; }

  Vec<K> row(std::size_t i) const { return Vec<K>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }
  Vec<K> col(std::size_t j) const {
    Vec<K> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  bool is_zero() const {
    for (const auto& x : data_) {
      if (!x.is_zero()) return false;
    }
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const K& x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const K& y = b(k, j);
          if (!y.is_zero()) c(i, j) += x * y;
        }
      }
    }
    return c;
  }
  friend Vec<K> operator*(const Matrix& a, const Vec<K>& v) {
    if (a.cols_ != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
    Vec<K> out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (!a(i, k).is_zero() && !v[k].is_zero()) out[i] += a(i, k) * v[k];
      }
    }
    return out;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend Matrix operator*(const K& s, Matrix a) {
    for (auto& x : a.data_) x = s * x;
    return a;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  K trace() const {
    K t;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
      os << "]";
    }
    os << "]";
    return os.str();
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<K> data_;
};

// Kronecker product; index (i*b.rows + k, j*b.cols + l).
template <class K>
Matrix<K> kron(const Matrix<K>& a, const Matrix<K>& b) {
  Matrix<K> c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const K& x = a(i, j);
      if (x.is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          if (!b(k, l).is_zero()) c(i * b.rows() + k, j * b.cols() + l) = x * b(k, l);
        }
      }
    }
  }
  return c;
}

template <class K>
struct Echelon {
  Matrix<K> rref;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

// Reduced row echelon form. Pivot: leftmost nonzero column, first nonzero
// row at or below the current one, scaled to 1.
template <class K>
Echelon<K> rref(Matrix<K> m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = c; j < cols; ++j) std::swap(m(p, j), m(r, j));
    }
    const K inv = m(r, c).inverse();
    for (std::size_t j = c; j < cols; ++j) {
      if (!m(r, j).is_zero()) m(r, j) = m(r, j) * inv;
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const K f = m(i, c);
      for (std::size_t j = c; j < cols; ++j) {
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

template <class K>
std::size_t rank(const Matrix<K>& m) {
  return rref(m).pivots.size();
}

// Basis of the right kernel, returned in reduced echelon form (as rows).
template <class K>
std::vector<Vec<K>> nullspace(const Matrix<K>& m) {
  const auto e = rref(m);
  const std::size_t cols = m.cols();
  std::vector<char> is_pivot(cols, 0);
  for (auto p : e.pivots) is_pivot[p] = 1;
  std::vector<Vec<K>> raw;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec<K> v(cols);
    v[f] = K(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.rref(r, f);
    raw.push_back(std::move(v));
  }
  if (raw.empty()) return raw;
  Matrix<K> b(raw.size(), cols);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) b(i, j) = raw[i][j];
  }
  const auto nb = rref(std::move(b));
  std::vector<Vec<K>> out;
  for (std::size_t i = 0; i < nb.pivots.size(); ++i) out.push_back(nb.rref.row(i));
  return out;
}

// One solution of m x = b with free variables set to zero, or nullopt.
template <class K>
std::optional<Vec<K>> solve(const Matrix<K>& m, const Vec<K>& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: rhs length mismatch");
  Matrix<K> aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const auto e = rref(std::move(aug));
  Vec<K> x(m.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == m.cols()) return std::nullopt;
    x[e.pivots[r]] = e.rref(r, m.cols());
  }
  return x;
}

// Solves m X = b for a matrix right-hand side; nullopt if inconsistent.
template <class K>
std::optional<Matrix<K>> solve_matrix(const Matrix<K>& m, const Matrix<K>& b) {
  if (b.rows() != m.rows()) throw std::invalid_argument("solve: rhs shape mismatch");
  const std::size_t n = m.cols();
  Matrix<K> aug(m.rows(), n + b.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) aug(i, n + j) = b(i, j);
  }
  const auto e = rref(std::move(aug));
  Matrix<K> x(n, b.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] >= n) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x(e.pivots[r], j) = e.rref(r, n + j);
  }
  return x;
}

template <class K>
std::optional<Matrix<K>> inverse(const Matrix<K>& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  auto x = solve_matrix(m, Matrix<K>::identity(m.rows()));
  if (!x || !(m * *x == Matrix<K>::identity(m.rows()))) return std::nullopt;
  return x;
}

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}
inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

// Reduction of a rational into Z/p; nullopt if p divides the denominator.
inline std::optional<std::uint64_t> reduce_mod(const Rational& q, std::uint64_t p) {
  const mpq_class v = q.to_mpq();
  mpz_class n = v.get_num() % p;
  if (n < 0) n += p;
  const mpz_class d = v.get_den() % p;
  if (d == 0) return std::nullopt;
  const std::uint64_t dn = d.get_ui();
  return mulmod(n.get_ui(), powmod(dn, p - 2, p), p);
}

}  // namespace detail

// Rank of a rational matrix reduced modulo the prime p. This is a lower
// bound for the rational rank whenever every entry reduces. Returns nullopt
// if some denominator vanishes mod p.
inline std::optional<std::size_t> rank_mod_p(const Matrix<Rational>& m, std::uint64_t p = 2305843009213693951ULL) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::uint64_t> a(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const Rational& q = m(i, j);
      if (q.is_zero()) continue;
      auto v = detail::reduce_mod(q, p);
      if (!v) return std::nullopt;
      a[i * cols + j] = *v;
    }
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
    }
    const std::uint64_t inv = detail::powmod(a[r * cols + c], p - 2, p);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const std::uint64_t f = detail::mulmod(a[i * cols + c], inv, p);
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j) {
        const std::uint64_t s = detail::mulmod(f, a[r * cols + j], p);
        a[i * cols + j] = (a[i * cols + j] + p - s) % p;
      }
    }
    ++r;
  }
  return r;
}

// Full-rank test that avoids rational elimination when a modular
// certificate suffices.
template <class K>
bool has_full_rank(const Matrix<K>& m) {
  const std::size_t want = std::min(m.rows(), m.cols());
  if constexpr (std::is_same_v<K, Rational>) {
    if (auto r = rank_mod_p(m); r && *r == want) return true;
  }
  return rank(m) == want;
}

}  // namespace skeintrace
