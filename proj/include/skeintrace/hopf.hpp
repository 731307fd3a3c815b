#pragma once

#include "skeintrace/matrix.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace skeintrace {

struct HypothesisViolation : std::runtime_error {
  explicit HypothesisViolation(const std::string& what) : std::runtime_error(what) {}
};

// Sparse list of (index, coefficient) pairs.
template <class K>
using SparseTerms = std::vector<std::pair<std::size_t, K>>;

// Finite-dimensional Hopf algebra given by structure constants in a basis
// b_0..b_{n-1}:
//   b_i b_j   = sum_k mult(i,j,k) b_k
//   Delta b_k = sum_{i,j} comult(k,i,j) b_i (x) b_j
//   S b_j     = sum_i S(i,j) b_i
// Elements of H^{(x)m} are dense vectors indexed by i_0*n^{m-1}+...+i_{m-1}.
template <class K>
class HopfAlgebra {
 public:
  HopfAlgebra() = default;
  HopfAlgebra(std::string name, std::size_t dim, int field_order = 1)
      : name_(std::move(name)), n_(dim), field_order_(field_order), unit_(dim), counit_(dim),
        mult_(dim * dim), comult_(dim), S_(dim, dim) {
    for (std::size_t i = 0; i < dim; ++i) labels_.push_back("b" + std::to_string(i));
  }

  // -- construction
  void set_labels(std::vector<std::string> l) {
    if (l.size() != n_) throw std::invalid_argument("label count mismatch");
    labels_ = std::move(l);
  }
  void set_unit(Vec<K> u) {
    if (u.size() != n_) throw std::invalid_argument("unit length mismatch");
    unit_ = std::move(u);
  }
  void set_counit(Vec<K> c) {
    if (c.size() != n_) throw std::invalid_argument("counit length mismatch");
    counit_ = std::move(c);
  }
  void add_mult(std::size_t i, std::size_t j, std::size_t k, const K& c) {
    check_index(i), check_index(j), check_index(k);
    add_term(mult_[i * n_ + j], k, c);
  }
  void add_comult(std::size_t k, std::size_t i, std::size_t j, const K& c) {
    check_index(i), check_index(j), check_index(k);
    add_term(comult_[k], i * n_ + j, c);
  }
  void set_antipode(Matrix<K> s) {
    if (s.rows() != n_ || s.cols() != n_) throw std::invalid_argument("antipode shape mismatch");
    S_ = std::move(s);
    Sinv_.reset();
  }
  void set_rmatrix(Vec<K> r) {
    if (r.size() != n_ * n_) throw std::invalid_argument("R-matrix length mismatch");
    rmatrix_ = std::move(r);
  }
  void set_ribbon_hint(Vec<K> v) {
    if (v.size() != n_) throw std::invalid_argument("ribbon element length mismatch");
    ribbon_hint_ = std::move(v);
  }
  void add_grouplike_hint(Vec<K> g) { grouplike_hints_.push_back(std::move(g)); }

  // -- accessors
  const std::string& name() const { return name_; }
  std::size_t dim() const { return n_; }
  int field_order() const { return field_order_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const Vec<K>& unit() const { return unit_; }
  const Vec<K>& counit() const { return counit_; }
  const Matrix<K>& antipode() const { return S_; }
  const Matrix<K>& antipode_inverse() const {
    if (!Sinv_) {
      auto inv = inverse(S_);
      if (!inv) throw HypothesisViolation("antipode is not invertible");
      Sinv_ = std::move(*inv);
    }
    return *Sinv_;
  }
  bool antipode_invertible() const { return inverse(S_).has_value(); }
  const std::optional<Vec<K>>& rmatrix() const { return rmatrix_; }
  const std::optional<Vec<K>>& ribbon_hint() const { return ribbon_hint_; }
  const std::vector<Vec<K>>& grouplike_hints() const { return grouplike_hints_; }
  const SparseTerms<K>& mult_terms(std::size_t i, std::size_t j) const { return mult_[i * n_ + j]; }
  const SparseTerms<K>& comult_terms(std::size_t k) const { return comult_[k]; }

  Vec<K> basis(std::size_t i) const {
    Vec<K> v(n_);
    v[i] = K(1);
    return v;
  }
  Vec<K> zero() const { return Vec<K>(n_); }

  // -- algebra
  Vec<K> mul(const Vec<K>& a, const Vec<K>& b) const {
    Vec<K> out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (b[j].is_zero()) continue;
        const K ab = a[i] * b[j];
        for (const auto& [k, c] : mult_[i * n_ + j]) out[k] += ab * c;
      }
    }
    return out;
  }
  Vec<K> mul(std::initializer_list<std::reference_wrapper<const Vec<K>>> xs) const {
    Vec<K> acc = unit_;
    for (const auto& x : xs) acc = mul(acc, x.get());
    return acc;
  }
  // Matrix of a -> x a (column j is x b_j).
  Matrix<K> left_mult_matrix(const Vec<K>& x) const {
    Matrix<K> m(n_, n_);
    for (std::size_t j = 0; j < n_; ++j) {
      const auto col = mul(x, basis(j));
      for (std::size_t i = 0; i < n_; ++i) m(i, j) = col[i];
    }
    return m;
  }
  // Matrix of a -> a x.
  Matrix<K> right_mult_matrix(const Vec<K>& x) const {
    Matrix<K> m(n_, n_);
    for (std::size_t j = 0; j < n_; ++j) {
      const auto col = mul(basis(j), x);
      for (std::size_t i = 0; i < n_; ++i) m(i, j) = col[i];
    }
    return m;
  }
  std::optional<Vec<K>> inverse_element(const Vec<K>& x) const {
    auto y = solve(left_mult_matrix(x), unit_);
    if (!y || mul(*y, x) != unit_) return std::nullopt;
    return y;
  }

  // -- coalgebra
  K eps(const Vec<K>& a) const {
    K s;
    for (std::size_t i = 0; i < n_; ++i) {
      if (!a[i].is_zero() && !counit_[i].is_zero()) s += a[i] * counit_[i];
    }
    return s;
  }
  Vec<K> coproduct(const Vec<K>& a) const {
    Vec<K> out(n_ * n_);
    for (std::size_t k = 0; k < n_; ++k) {
      if (a[k].is_zero()) continue;
      for (const auto& [ij, c] : comult_[k]) out[ij] += a[k] * c;
    }
    return out;
  }
  Vec<K> S(const Vec<K>& a) const { return S_ * a; }
  Vec<K> Sinv(const Vec<K>& a) const { return antipode_inverse() * a; }

  // -- tensor powers
  std::size_t pow(std::size_t m) const {
    std::size_t p = 1;
    for (std::size_t i = 0; i < m; ++i) p *= n_;
    return p;
  }
  // Componentwise product in H^{(x)m}.
  Vec<K> tensor_mul(const Vec<K>& a, const Vec<K>& b, std::size_t m) const {
    const std::size_t N = pow(m);
    Vec<K> out(N);
    std::vector<std::size_t> ia(m), ib(m);
    for (std::size_t I = 0; I < N; ++I) {
      if (a[I].is_zero()) continue;
      digits(I, m, ia);
      for (std::size_t J = 0; J < N; ++J) {
        if (b[J].is_zero()) continue;
        digits(J, m, ib);
        expand_product(ia, ib, 0, 0, a[I] * b[J], out);
      }
    }
    return out;
  }
  // Applies a linear map on one leg of an element of H^{(x)m}, producing
  // an element of H^{(x)(m-1+k)} where the map sends H to H^{(x)k}.
  // f(i) returns the sparse image of b_i in H^{(x)k}.
  Vec<K> map_leg(const Vec<K>& a, std::size_t m, std::size_t leg, std::size_t k,
                 const std::function<SparseTerms<K>(std::size_t)>& f) const {
    const std::size_t before = pow(leg);
    const std::size_t after = pow(m - leg - 1);
    const std::size_t nk = pow(k);
    Vec<K> out(before * nk * after);
    std::vector<SparseTerms<K>> cache(n_);
    std::vector<char> have(n_, 0);
    for (std::size_t I = 0; I < a.size(); ++I) {
      if (a[I].is_zero()) continue;
      const std::size_t hi = I / (n_ * after);
      const std::size_t mid = (I / after) % n_;
      const std::size_t lo = I % after;
      if (!have[mid]) {
        cache[mid] = f(mid);
        have[mid] = 1;
      }
      for (const auto& [t, c] : cache[mid]) out[(hi * nk + t) * after + lo] += a[I] * c;
    }
    return out;
  }
  Vec<K> coproduct_leg(const Vec<K>& a, std::size_t m, std::size_t leg) const {
    return map_leg(a, m, leg, 2, [this](std::size_t i) { return comult_[i]; });
  }
  Vec<K> antipode_leg(const Vec<K>& a, std::size_t m, std::size_t leg, bool inverse = false) const {
    const Matrix<K>& s = inverse ? antipode_inverse() : S_;
    return map_leg(a, m, leg, 1, [this, &s](std::size_t i) {
      SparseTerms<K> t;
      for (std::size_t r = 0; r < n_; ++r) {
        if (!s(r, i).is_zero()) t.emplace_back(r, s(r, i));
      }
      return t;
    });
  }
  Vec<K> counit_leg(const Vec<K>& a, std::size_t m, std::size_t leg) const {
    return map_leg(a, m, leg, 0, [this](std::size_t i) {
      SparseTerms<K> t;
      if (!counit_[i].is_zero()) t.emplace_back(0, counit_[i]);
      return t;
    });
  }
  // Permutes legs: output leg l carries input leg perm[l].
  Vec<K> permute_legs(const Vec<K>& a, const std::vector<std::size_t>& perm) const {
    const std::size_t m = perm.size();
    Vec<K> out(a.size());
    std::vector<std::size_t> d(m);
    for (std::size_t I = 0; I < a.size(); ++I) {
      if (a[I].is_zero()) continue;
      digits(I, m, d);
      std::size_t J = 0;
      for (std::size_t l = 0; l < m; ++l) J = J * n_ + d[perm[l]];
      out[J] += a[I];
    }
    return out;
  }
  // Multiplies all legs together in order: H^{(x)m} -> H.
  Vec<K> multiply_legs(const Vec<K>& a, std::size_t m) const {
    Vec<K> out(n_);
    std::vector<std::size_t> d(m);
    for (std::size_t I = 0; I < a.size(); ++I) {
      if (a[I].is_zero()) continue;
      digits(I, m, d);
      Vec<K> acc = basis(d[0]);
      for (std::size_t l = 1; l < m; ++l) acc = mul(acc, basis(d[l]));
      for (std::size_t k = 0; k < n_; ++k) out[k] += a[I] * acc[k];
    }
    return out;
  }
  Vec<K> tensor(const Vec<K>& a, const Vec<K>& b) const {
    Vec<K> out(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (!b[j].is_zero()) out[i * b.size() + j] = a[i] * b[j];
      }
    }
    return out;
  }
  // Inserts the unit as a new leg at position pos of an element of H^{(x)m}.
  Vec<K> insert_unit(const Vec<K>& a, std::size_t m, std::size_t pos) const {
    const std::size_t after = pow(m - pos);
    Vec<K> out(a.size() * n_);
    for (std::size_t I = 0; I < a.size(); ++I) {
      if (a[I].is_zero()) continue;
      const std::size_t hi = I / after;
      const std::size_t lo = I % after;
      for (std::size_t u = 0; u < n_; ++u) {
        if (!unit_[u].is_zero()) out[(hi * n_ + u) * after + lo] += a[I] * unit_[u];
      }
    }
    return out;
  }

  void digits(std::size_t I, std::size_t m, std::vector<std::size_t>& d) const {
    for (std::size_t l = m; l-- > 0;) {
      d[l] = I % n_;
      I /= n_;
    }
  }

 private:
  void check_index(std::size_t i) const {
    if (i >= n_) throw std::out_of_range("basis index " + std::to_string(i) + " out of range");
  }
  static void add_term(SparseTerms<K>& t, std::size_t idx, const K& c) {
    for (auto it = t.begin(); it != t.end(); ++it) {
      if (it->first == idx) {
        it->second += c;
        if (it->second.is_zero()) t.erase(it);
        return;
      }
    }
    if (c.is_zero()) return;
    t.emplace_back(idx, c);
    std::sort(t.begin(), t.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  }
  void expand_product(const std::vector<std::size_t>& ia, const std::vector<std::size_t>& ib, std::size_t leg,
                      std::size_t idx, const K& coef, Vec<K>& out) const {
    if (leg == ia.size()) {
      out[idx] += coef;
      return;
    }
    for (const auto& [k, c] : mult_[ia[leg] * n_ + ib[leg]]) expand_product(ia, ib, leg + 1, idx * n_ + k, coef * c, out);
  }

  std::string name_;
  std::size_t n_ = 0;
  int field_order_ = 1;
  std::vector<std::string> labels_;
  Vec<K> unit_, counit_;
  std::vector<SparseTerms<K>> mult_;
  std::vector<SparseTerms<K>> comult_;
  Matrix<K> S_;
  mutable std::optional<Matrix<K>> Sinv_;
  std::optional<Vec<K>> rmatrix_;
  std::optional<Vec<K>> ribbon_hint_;
  std::vector<Vec<K>> grouplike_hints_;
};

// -- verification reports

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string witness;  // empty on pass
};

struct Report {
  std::vector<CheckResult> checks;
  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
  }
  void add(std::string name, bool pass, std::string witness = {}) {
    checks.push_back({std::move(name), pass, pass ? std::string() : std::move(witness)});
  }
  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }
};

template <class K>
Report verify_hopf_axioms(const HopfAlgebra<K>& H) {
  Report rep;
  const std::size_t n = H.dim();
  const auto& L = H.labels();
  auto triple = [&](std::size_t i, std::size_t j, std::size_t k) {
    return "(" + L[i] + ", " + L[j] + ", " + L[k] + ")";
  };

  {  // associativity
    std::string w;
    for (std::size_t i = 0; i < n && w.empty(); ++i) {
      for (std::size_t j = 0; j < n && w.empty(); ++j) {
        const auto ij = H.mul(H.basis(i), H.basis(j));
        for (std::size_t k = 0; k < n; ++k) {
          if (H.mul(ij, H.basis(k)) != H.mul(H.basis(i), H.mul(H.basis(j), H.basis(k)))) {
            w = triple(i, j, k);
            break;
          }
        }
      }
    }
    rep.add("associativity", w.empty(), w);
  }
  {  // unit
    std::string w;
    for (std::size_t i = 0; i < n; ++i) {
      if (H.mul(H.unit(), H.basis(i)) != H.basis(i) || H.mul(H.basis(i), H.unit()) != H.basis(i)) {
        w = L[i];
        break;
      }
    }
    rep.add("unitality", w.empty(), w);
  }
  {  // coassociativity and counit
    std::string wa, wc;
    for (std::size_t k = 0; k < n; ++k) {
      const auto d = H.coproduct(H.basis(k));
      if (wa.empty() && H.coproduct_leg(d, 2, 0) != H.coproduct_leg(d, 2, 1)) wa = L[k];
      if (wc.empty() && (H.counit_leg(d, 2, 0) != H.basis(k) || H.counit_leg(d, 2, 1) != H.basis(k))) wc = L[k];
    }
    rep.add("coassociativity", wa.empty(), wa);
    rep.add("counitality", wc.empty(), wc);
  }
  {  // bialgebra
    std::string w, we;
    for (std::size_t i = 0; i < n && w.empty(); ++i) {
      const auto di = H.coproduct(H.basis(i));
      for (std::size_t j = 0; j < n; ++j) {
        const auto lhs = H.coproduct(H.mul(H.basis(i), H.basis(j)));
        const auto rhs = H.tensor_mul(di, H.coproduct(H.basis(j)), 2);
        if (lhs != rhs) {
          w = "(" + L[i] + ", " + L[j] + ")";
          break;
        }
        if (we.empty() && H.eps(H.mul(H.basis(i), H.basis(j))) != H.eps(H.basis(i)) * H.eps(H.basis(j))) {
          we = "(" + L[i] + ", " + L[j] + ")";
        }
      }
    }
    rep.add("comultiplication multiplicative", w.empty(), w);
    rep.add("counit multiplicative", we.empty(), we);
    const bool unit_ok = H.coproduct(H.unit()) == H.tensor(H.unit(), H.unit()) && H.eps(H.unit()) == K(1);
    rep.add("unit grouplike", unit_ok, "1");
  }
  {  // antipode
    std::string w;
    for (std::size_t k = 0; k < n; ++k) {
      const auto d = H.coproduct(H.basis(k));
      Vec<K> want(n);
      for (std::size_t u = 0; u < n; ++u) want[u] = H.unit()[u] * H.eps(H.basis(k));
      const auto l = H.multiply_legs(H.antipode_leg(d, 2, 0), 2);
      const auto r = H.multiply_legs(H.antipode_leg(d, 2, 1), 2);
      if (l != want || r != want) {
        w = L[k];
        break;
      }
    }
    rep.add("antipode", w.empty(), w);
    rep.add("antipode invertible", H.antipode_invertible(), "S singular");
  }
  return rep;
}

// R_{21}
template <class K>
Vec<K> flip(const HopfAlgebra<K>& H, const Vec<K>& r) {
  return H.permute_legs(r, {1, 0});
}

// Embeds an element of H(x)H into legs (a, b) of H^{(x)3}.
template <class K>
Vec<K> embed2in3(const HopfAlgebra<K>& H, const Vec<K>& r, std::size_t a, std::size_t b) {
  Vec<K> x = H.insert_unit(r, 2, 2);  // r (x) 1 on legs (0,1)
  // place leg 0 -> a, leg 1 -> b, leg 2 -> remaining
  std::size_t c = 3 - a - b;
  std::vector<std::size_t> perm(3);
  perm[a] = 0;
  perm[b] = 1;
  perm[c] = 2;
  return H.permute_legs(x, perm);
}

template <class K>
Report verify_quasitriangular(const HopfAlgebra<K>& H) {
  Report rep;
  if (!H.rmatrix()) {
    rep.add("R-matrix present", false, "no R-matrix");
    return rep;
  }
  const Vec<K>& R = *H.rmatrix();
  const std::size_t n = H.dim();
  const auto one2 = H.tensor(H.unit(), H.unit());
  // invertibility via (S(x)id)R
  const auto Rinv = H.antipode_leg(R, 2, 0);
  rep.add("R invertible", H.tensor_mul(R, Rinv, 2) == one2 && H.tensor_mul(Rinv, R, 2) == one2, "R (S(x)id)(R) != 1");
  const auto R13 = embed2in3(H, R, 0, 2);
  const auto R23 = embed2in3(H, R, 1, 2);
  const auto R12 = embed2in3(H, R, 0, 1);
  rep.add("(Delta(x)id)R = R13 R23", H.coproduct_leg(R, 2, 0) == H.tensor_mul(R13, R23, 3), "hexagon 1");
  rep.add("(id(x)Delta)R = R13 R12", H.coproduct_leg(R, 2, 1) == H.tensor_mul(R13, R12, 3), "hexagon 2");
  std::string w;
  for (std::size_t i = 0; i < n; ++i) {
    const auto d = H.coproduct(H.basis(i));
    if (H.tensor_mul(R, d, 2) != H.tensor_mul(flip(H, d), R, 2)) {
      w = H.labels()[i];
      break;
    }
  }
  rep.add("R Delta = Delta^op R", w.empty(), w);
  return rep;
}

// -- integrals

template <class K>
struct IntegralData {
  Vec<K> left, right;                   // integrals in H
  Vec<K> left_co, right_co;             // cointegrals in H*
  std::size_t dims[4] = {0, 0, 0, 0};   // dimensions of the four solution spaces
  bool unimodular = false;
};

namespace detail {

template <class K>
Vec<K> one_dim_space(const Matrix<K>& constraints, const std::string& what, std::size_t& dim_out) {
  auto ns = nullspace(constraints);
  dim_out = ns.size();
  if (ns.size() != 1) {
    throw HypothesisViolation(what + " space has dimension " + std::to_string(ns.size()) + ", expected 1");
  }
  return ns[0];
}

}  // namespace detail

template <class K>
IntegralData<K> integrals(const HopfAlgebra<K>& H) {
  const std::size_t n = H.dim();
  IntegralData<K> out;
  // left integral: h L = eps(h) L ; right: L h = eps(h) L
  Matrix<K> cl(n * n, n), cr(n * n, n);
  for (std::size_t h = 0; h < n; ++h) {
    const auto lm = H.left_mult_matrix(H.basis(h));
    const auto rm = H.right_mult_matrix(H.basis(h));
    const K e = H.eps(H.basis(h));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        cl(h * n + i, j) = lm(i, j) - (i == j ? e : K());
        cr(h * n + i, j) = rm(i, j) - (i == j ? e : K());
      }
    }
  }
  out.left = detail::one_dim_space(cl, "left integral", out.dims[0]);
  out.right = detail::one_dim_space(cr, "right integral", out.dims[1]);
  // cointegrals: (id(x)lambda)Delta(x) = lambda(x) 1 (left), (lambda(x)id)Delta(x) = lambda(x) 1 (right)
  Matrix<K> ql(n * n, n), qr(n * n, n);
  for (std::size_t x = 0; x < n; ++x) {
    for (const auto& [ij, c] : H.comult_terms(x)) {
      const std::size_t i = ij / n, j = ij % n;
      ql(x * n + i, j) += c;  // coefficient of b_i picks lambda(b_j)
      qr(x * n + j, i) += c;
    }
    for (std::size_t u = 0; u < n; ++u) {
      if (H.unit()[u].is_zero()) continue;
      ql(x * n + u, x) -= H.unit()[u];
      qr(x * n + u, x) -= H.unit()[u];
    }
  }
  out.left_co = detail::one_dim_space(ql, "left cointegral", out.dims[2]);
  out.right_co = detail::one_dim_space(qr, "right cointegral", out.dims[3]);
  out.unimodular = out.left == out.right;
  auto pair = [](const Vec<K>& f, const Vec<K>& x) {
    K s;
    for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * x[i];
    return s;
  };
  for (Vec<K>* co : {&out.left_co, &out.right_co}) {
    const K v = pair(*co, out.left);
    if (!v.is_zero()) {
      const K inv = v.inverse();
      for (auto& c : *co) c *= inv;
    }
  }
  return out;
}

// -- ribbon data

template <class K>
struct RibbonData {
  Vec<K> R;
  Vec<K> u;      // Drinfeld element
  Vec<K> nu;     // ribbon (or balancing) element
  Vec<K> nu_inv;
  Vec<K> g;      // pivotal element u nu^{-1}
  Vec<K> g_inv;
  bool ribbon = true;  // false: balanced only, S(nu) != nu
};

template <class K>
Vec<K> drinfeld_element(const HopfAlgebra<K>& H, const Vec<K>& R) {
  // u = sum S(r2) r1
  return H.multiply_legs(H.antipode_leg(flip(H, R), 2, 0), 2);
}

template <class K>
bool is_grouplike(const HopfAlgebra<K>& H, const Vec<K>& x) {
  return H.coproduct(x) == H.tensor(x, x) && H.eps(x) == K(1);
}

template <class K>
bool is_central(const HopfAlgebra<K>& H, const Vec<K>& x) {
  for (std::size_t i = 0; i < H.dim(); ++i) {
    if (H.mul(x, H.basis(i)) != H.mul(H.basis(i), x)) return false;
  }
  return true;
}

// Checks the balancing axioms for nu (central, eps = 1, invertible,
// Delta(nu) = (R21 R)^{-1}(nu (x) nu), g = u nu^{-1} grouplike with
// S^2 = Ad g). The ribbon flag records whether also S(nu) = nu.
template <class K>
std::optional<RibbonData<K>> check_balanced(const HopfAlgebra<K>& H, const Vec<K>& R, const Vec<K>& u,
                                            const Vec<K>& nu) {
  if (H.eps(nu) != K(1)) return std::nullopt;
  if (!is_central(H, nu)) return std::nullopt;
  const auto nu_inv = H.inverse_element(nu);
  if (!nu_inv) return std::nullopt;
  // R21 R Delta(nu) = nu (x) nu
  const auto M = H.tensor_mul(flip(H, R), R, 2);
  if (H.tensor_mul(M, H.coproduct(nu), 2) != H.tensor(nu, nu)) return std::nullopt;
  const auto g = H.mul(u, *nu_inv);
  if (!is_grouplike(H, g)) return std::nullopt;
  const auto g_inv = H.inverse_element(g);
  if (!g_inv) return std::nullopt;
  for (std::size_t i = 0; i < H.dim(); ++i) {
    if (H.S(H.S(H.basis(i))) != H.mul(H.mul(g, H.basis(i)), *g_inv)) return std::nullopt;
  }
  return RibbonData<K>{R, u, nu, *nu_inv, g, *g_inv, H.S(nu) == nu};
}

template <class K>
std::optional<RibbonData<K>> check_ribbon(const HopfAlgebra<K>& H, const Vec<K>& R, const Vec<K>& u, const Vec<K>& nu) {
  auto d = check_balanced(H, R, u, nu);
  if (d && !d->ribbon) return std::nullopt;
  return d;
}

// Grouplike elements available for the candidate search: grouplike basis
// elements, supplied hints, the group they generate, and negatives.
template <class K>
std::vector<Vec<K>> grouplike_closure(const HopfAlgebra<K>& H, std::size_t limit = 256) {
  std::vector<Vec<K>> gens;
  for (std::size_t i = 0; i < H.dim(); ++i) {
    if (is_grouplike(H, H.basis(i))) gens.push_back(H.basis(i));
  }
  for (const auto& g : H.grouplike_hints()) {
    if (is_grouplike(H, g)) gens.push_back(g);
  }
  std::vector<Vec<K>> group{H.unit()};
  for (std::size_t idx = 0; idx < group.size() && group.size() < limit; ++idx) {
    for (const auto& g : gens) {
      auto p = H.mul(group[idx], g);
      if (std::find(group.begin(), group.end(), p) == group.end()) group.push_back(std::move(p));
    }
  }
  const std::size_t base = group.size();
  for (std::size_t i = 0; i < base; ++i) {
    Vec<K> neg = group[i];
    for (auto& c : neg) c = -c;
    group.push_back(std::move(neg));
  }
  return group;
}

// All candidates u l^{-1} (and the file hint) passing the balancing axioms,
// hint first, then in closure order.
template <class K>
std::vector<RibbonData<K>> derive_balanced_elements(const HopfAlgebra<K>& H, const Vec<K>& R) {
  const auto u = drinfeld_element(H, R);
  std::vector<RibbonData<K>> found;
  auto consider = [&](const Vec<K>& nu) {
    for (const auto& f : found) {
      if (f.nu == nu) return;
    }
    if (auto d = check_balanced(H, R, u, nu)) found.push_back(std::move(*d));
  };
  if (H.ribbon_hint()) consider(*H.ribbon_hint());
  for (const auto& l : grouplike_closure(H)) {
    auto li = H.inverse_element(l);
    if (!li) continue;
    consider(H.mul(u, *li));
  }
  return found;
}

template <class K>
std::vector<RibbonData<K>> derive_ribbon_elements(const HopfAlgebra<K>& H, const Vec<K>& R) {
  auto all = derive_balanced_elements(H, R);
  std::vector<RibbonData<K>> out;
  for (auto& d : all) {
    if (d.ribbon) out.push_back(std::move(d));
  }
  return out;
}

// The structure used downstream: the first ribbon candidate, else the
// first balanced one (flagged non-ribbon).
template <class K>
RibbonData<K> select_structure(const HopfAlgebra<K>& H) {
  if (!H.rmatrix()) throw HypothesisViolation("no R-matrix");
  const auto all = derive_balanced_elements(H, *H.rmatrix());
  for (const auto& d : all) {
    if (d.ribbon) return d;
  }
  if (all.empty()) throw HypothesisViolation("no ribbon or balancing element among the candidates");
  return all.front();
}

}  // namespace skeintrace
