#pragma once

#include "skeintrace/hopf.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

namespace skeintrace {

// Dense scratch buffer that collects sparse sums.
template <class K>
class Accum {
 public:
  explicit Accum(std::size_t n = 0) : v_(n), on_(n, 0) {}
  void resize(std::size_t n) {
    v_.assign(n, K());
    on_.assign(n, 0);
    touched_.clear();
  }
  std::size_t size() const { return v_.size(); }
  void add(std::size_t i, const K& c) {
    if (c.is_zero()) return;
    if (!on_[i]) {
      on_[i] = 1;
      touched_.push_back(i);
      v_[i] = c;
    } else {
      v_[i] += c;
    }
  }
  void add(const SparseTerms<K>& t, const K& scale) {
    for (const auto& [i, c] : t) add(i, c * scale);
  }
  // Returns the collected terms sorted by index and clears the buffer.
  SparseTerms<K> take() {
    std::sort(touched_.begin(), touched_.end());
    SparseTerms<K> out;
    out.reserve(touched_.size());
    for (auto i : touched_) {
      if (!v_[i].is_zero()) out.emplace_back(i, std::move(v_[i]));
      v_[i] = K();
      on_[i] = 0;
    }
    touched_.clear();
    return out;
  }

 private:
  std::vector<K> v_;
  std::vector<char> on_;
  std::vector<std::size_t> touched_;
};

template <class K>
SparseTerms<K> to_sparse(const Vec<K>& v) {
  SparseTerms<K> t;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_zero()) t.emplace_back(i, v[i]);
  }
  return t;
}

template <class K>
Vec<K> to_dense(const SparseTerms<K>& t, std::size_t n) {
  Vec<K> v(n);
  for (const auto& [i, c] : t) v[i] += c;
  return v;
}

// Square sparse operator stored by columns: cols[j] is the image of e_j.
template <class K>
struct SparseOp {
  std::size_t dim = 0;
  std::vector<SparseTerms<K>> cols;

  SparseTerms<K> apply(const SparseTerms<K>& x, Accum<K>& acc) const {
    for (const auto& [j, c] : x) acc.add(cols[j], c);
    return acc.take();
  }
  Vec<K> apply(const Vec<K>& x) const {
    Vec<K> out(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      if (x[j].is_zero()) continue;
      for (const auto& [i, c] : cols[j]) out[i] += c * x[j];
    }
    return out;
  }
  Matrix<K> dense() const {
    Matrix<K> m(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) {
      for (const auto& [i, c] : cols[j]) m(i, j) += c;
    }
    return m;
  }
};

// Incremental row echelon form of sparse vectors. Each kept row has a
// leading entry 1 at its pivot; rows are not reduced against later ones.
template <class K>
class SparseEchelon {
 public:
  explicit SparseEchelon(std::size_t n) : buf_(n) {}

  // Reduces v against the kept rows; returns the remainder.
  SparseTerms<K> reduce(const SparseTerms<K>& v) {
    Vec<K>& b = buf_;
    std::vector<std::size_t> touched;
    for (const auto& [i, c] : v) {
      if (b[i].is_zero()) touched.push_back(i);
      b[i] += c;
    }
    // pivots in increasing order; a row only touches indices >= its pivot
    for (const auto& [p, r] : pivots_) {
      if (b[p].is_zero()) continue;
      const K f = b[p];
      for (const auto& [i, c] : rows_[r]) {
        if (b[i].is_zero()) touched.push_back(i);
        b[i] -= f * c;
      }
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    SparseTerms<K> out;
    for (auto i : touched) {
      if (!b[i].is_zero()) out.emplace_back(i, b[i]);
      b[i] = K();
    }
    return out;
  }
  // Adds v if independent; returns whether it was kept.
  bool add(const SparseTerms<K>& v) {
    auto r = reduce(v);
    if (r.empty()) return false;
    const K inv = K(1) / r.front().second;
    for (auto& [i, c] : r) c *= inv;
    pivots_.emplace(r.front().first, rows_.size());
    rows_.push_back(std::move(r));
    return true;
  }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<SparseTerms<K>>& rows() const { return rows_; }

 private:
  Vec<K> buf_;
  std::map<std::size_t, std::size_t> pivots_;
  std::vector<SparseTerms<K>> rows_;
};

template <class K>
SparseOp<K> sparse_op(const Matrix<K>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("sparse_op needs a square matrix");
  SparseOp<K> op{m.cols(), std::vector<SparseTerms<K>>(m.cols())};
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (!m(i, j).is_zero()) op.cols[j].emplace_back(i, m(i, j));
    }
  }
  return op;
}

}  // namespace skeintrace
