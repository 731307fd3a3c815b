#pragma once

#include "skeintrace/graph.hpp"
#include "skeintrace/hopf.hpp"
#include "skeintrace/rep.hpp"
#include "skeintrace/sparse.hpp"

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace skeintrace {

// Which element realizes a braiding-induced identification: R itself or
// R21^{-1} (the inverse braiding).
enum class BraidChoice { R, R21Inverse };

inline const char* to_string(BraidChoice c) { return c == BraidChoice::R ? "R" : "R21^-1"; }

struct GluingConventions {
  BraidChoice reflection = BraidChoice::R;  // A^{(x)op} -> A on the second slot of a pair
  BraidChoice vertex = BraidChoice::R;      // monoidal structure of (x): A^{[x]k} -> A at a vertex

  bool operator==(const GluingConventions&) const = default;
};

inline std::string to_string(const GluingConventions& c) {
  return std::string("reflection=") + to_string(c.reflection) + ", vertex=" + to_string(c.vertex);
}

struct GluingStep {
  std::string first, second;  // the second slot is reflected
  BraidChoice reflection = BraidChoice::R;
};

template <class K>
using BraidTerms = std::vector<std::tuple<std::size_t, std::size_t, K>>;

template <class K>
BraidTerms<K> braid_terms(const HopfAlgebra<K>& H, const Vec<K>& R, BraidChoice c) {
  Vec<K> el = R;
  if (c == BraidChoice::R21Inverse) el = flip(H, H.antipode_leg(R, 2, 0));  // R^{-1} = (S (x) id) R
  BraidTerms<K> out;
  const std::size_t n = H.dim();
  for (std::size_t I = 0; I < el.size(); ++I) {
    if (!el[I].is_zero()) out.emplace_back(I / n, I % n, el[I]);
  }
  return out;
}

// Iterated coproduct Delta^{(k)}: H -> H^{(x)k}; k = 0 gives the counit.
template <class K>
Vec<K> iterated_coproduct(const HopfAlgebra<K>& H, const Vec<K>& h, std::size_t k) {
  if (k == 0) return {H.eps(h)};
  Vec<K> x = h;
  for (std::size_t m = 1; m < k; ++m) x = H.coproduct_leg(x, m, m - 1);
  return x;
}

// Algebra with structure constants, over H^{(x)n} (one leg per marked
// interval). mult[i*dim + j] lists the coordinates of b_i b_j.
template <class K>
struct AlgebraObject {
  std::string name;
  Module<K> carrier;
  std::vector<SparseTerms<K>> mult;
  Vec<K> unit;
  std::optional<Vec<K>> lambda;
  std::vector<std::string> labels;

  std::size_t dim() const { return carrier.dim; }
  bool has_products() const { return mult.size() == dim() * dim(); }
  const HopfAlgebra<K>& hopf() const { return *carrier.H; }
  const SparseTerms<K>& product(std::size_t i, std::size_t j) const { return mult[i * dim() + j]; }

  Vec<K> mul(const Vec<K>& a, const Vec<K>& b) const {
    const std::size_t d = dim();
    Vec<K> out(d);
    for (std::size_t i = 0; i < d; ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < d; ++j) {
        if (b[j].is_zero()) continue;
        const K c = a[i] * b[j];
        for (const auto& [k, v] : mult[i * d + j]) out[k] += c * v;
      }
    }
    return out;
  }
  Vec<K> basis(std::size_t i) const {
    Vec<K> v(dim());
    v[i] = K(1);
    return v;
  }
  // Matrix of x -> x a.
  Matrix<K> right_mult_matrix(const Vec<K>& a) const {
    const std::size_t d = dim();
    Matrix<K> m(d, d);
    for (std::size_t j = 0; j < d; ++j) {
      if (a[j].is_zero()) continue;
      for (std::size_t i = 0; i < d; ++i) {
        for (const auto& [k, v] : mult[i * d + j]) m(k, i) += a[j] * v;
      }
    }
    return m;
  }
  K form(const Vec<K>& a) const {
    K s;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i].is_zero() && !(*lambda)[i].is_zero()) s += a[i] * (*lambda)[i];
    }
    return s;
  }
};

// The gluing model of a ribbon graph. Each pair {s, t} contributes a copy
// of Delta = Coind(k) for H (x) H^cop, written as H* through
// f(x) = phi(1 (x) x); s carries the first leg (h.f = f(S(h) -)), t the
// reflected second leg (h.f = f(- h)). The product of one factor is
// (f, f') -> f' * f precomposed with the braiding element on the second
// legs. A vertex restricts its legs along the iterated coproduct, in
// cyclic order starting after its marked slot, using the braiding to make
// the tensor product functor monoidal. Vertices without a marked slot
// contribute their invariants.
template <class K>
class GluedModel {
 public:
  GluedModel(const HopfAlgebra<K>& H, const Vec<K>& R, const Vec<K>& integral, RibbonGraph G,
             GluingConventions conv = {})
      : H_(&H), graph_(split_marked_vertices(std::move(G))), conv_(conv), integral_(integral) {
    sig_ = graph_signature(graph_);
    slots_ = slot_table(graph_);
    n_ = H.dim();
    P_ = graph_.pairs.size();
    N_ = 1;
    stride_.assign(P_, 1);
    for (std::size_t p = P_; p-- > 0;) {
      stride_[p] = N_;
      N_ *= n_;
    }
    build_factor_tables(R);
    build_vertices();
    const auto vb = braid_terms(H, R, conv_.vertex);
    for (const auto& legs : vertex_legs_) {
      const std::size_t k = legs.size();
      for (std::size_t i = 0; i + 1 < k; ++i) {
        for (std::size_t j = k - 1; j > i; --j) braids_.push_back({legs[j], legs[i]});
      }
    }
    vertex_braid_ = vb;
    for (const auto& [a, b] : graph_.pairs) steps_.push_back({a, b, conv_.reflection});
    if (!unmarked_.empty()) build_invariants();
  }

  const HopfAlgebra<K>& hopf() const { return *H_; }
  const RibbonGraph& graph() const { return graph_; }
  const SlotTable& slots() const { return slots_; }
  const Signature& signature() const { return sig_; }
  const GluingConventions& conventions() const { return conv_; }
  const std::vector<GluingStep>& steps() const { return steps_; }
  std::size_t carrier_dim() const { return N_; }
  std::size_t npairs() const { return P_; }
  std::size_t stride(std::size_t p) const { return stride_[p]; }
  std::size_t dim() const { return invariant_ ? basis_.size() : N_; }
  bool has_invariants() const { return invariant_; }
  const std::vector<std::vector<std::size_t>>& vertex_legs() const { return vertex_legs_; }
  const std::vector<long>& vertex_marked() const { return vertex_marked_; }

  // Action of basis element h of H on slot s, applied to carrier basis I.
  void leg_apply(std::size_t slot, std::size_t h, std::size_t I, const K& c, Accum<K>& acc) const {
    const auto p = static_cast<std::size_t>(slots_.pair_of[slot]);
    const auto& op = slots_.role[slot] == 0 ? xact_[h] : yact_[h];
    const std::size_t d = (I / stride_[p]) % n_;
    const std::size_t base = I - d * stride_[p];
    for (const auto& [k, v] : op.cols[d]) acc.add(base + k * stride_[p], c * v);
  }
  SparseTerms<K> leg_apply(std::size_t slot, const Vec<K>& h, const SparseTerms<K>& x) const {
    Accum<K> acc(N_);
    for (std::size_t b = 0; b < n_; ++b) {
      if (h[b].is_zero()) continue;
      for (const auto& [I, c] : x) leg_apply(slot, b, I, c * h[b], acc);
    }
    return acc.take();
  }
  // Action of h in H (x) ... on the listed slots through Delta^{(k)}.
  SparseTerms<K> slots_apply(const std::vector<std::size_t>& legs, const Vec<K>& h, const SparseTerms<K>& x) const {
    const std::size_t k = legs.size();
    const auto d = iterated_coproduct(*H_, h, k);
    if (k == 0) {
      SparseTerms<K> out;
      if (!d[0].is_zero()) {
        for (const auto& [I, c] : x) out.emplace_back(I, c * d[0]);
      }
      return out;
    }
    Accum<K> step(N_), total(N_);
    std::vector<std::size_t> digs(k);
    SparseTerms<K> cur;
    for (std::size_t T = 0; T < d.size(); ++T) {
      if (d[T].is_zero()) continue;
      H_->digits(T, k, digs);
      cur = x;
      for (std::size_t l = 0; l < k && !cur.empty(); ++l) {
        for (const auto& [I, c] : cur) leg_apply(legs[l], digs[l], I, c, step);
        cur = step.take();
      }
      total.add(cur, d[T]);
    }
    return total.take();
  }
  SparseTerms<K> vertex_apply(std::size_t v, const Vec<K>& h, const SparseTerms<K>& x) const {
    return slots_apply(vertex_legs_[v], h, x);
  }

  // Product of two carrier basis vectors.
  const SparseTerms<K>& carrier_mul(std::size_t I, std::size_t J) const {
    const std::size_t key = I * N_ + J;
    auto it = mul_cache_.find(key);
    if (it != mul_cache_.end()) return it->second;
    std::unordered_map<std::size_t, K> state{{key, K(1)}}, next;
    Accum<K> ax(N_), ay(N_);
    for (const auto& [sx, sy] : braids_) {
      next.clear();
      for (const auto& [xy, c] : state) {
        const std::size_t x = xy / N_, y = xy % N_;
        for (const auto& [a, b, r] : vertex_braid_) {
          leg_apply(sx, a, x, K(1), ax);
          const auto xs = ax.take();
          if (xs.empty()) continue;
          leg_apply(sy, b, y, K(1), ay);
          const auto ys = ay.take();
          const K cr = c * r;
          for (const auto& [x2, cx] : xs) {
            for (const auto& [y2, cy] : ys) {
              auto& slot = next[x2 * N_ + y2];
              slot += cr * cx * cy;
            }
          }
        }
      }
      state.clear();
      for (auto& [k, v] : next) {
        if (!v.is_zero()) state.emplace(k, std::move(v));
      }
    }
    Accum<K> out(N_);
    std::vector<std::size_t> dx(P_), dy(P_);
    for (const auto& [xy, c] : state) {
      split_digits(xy / N_, dx);
      split_digits(xy % N_, dy);
      expand_factor_product(dx, dy, 0, 0, c, out);
    }
    return mul_cache_.emplace(key, out.take()).first->second;
  }
  SparseTerms<K> carrier_mul(const SparseTerms<K>& x, const SparseTerms<K>& y) const {
    Accum<K> acc(N_);
    for (const auto& [I, a] : x) {
      for (const auto& [J, b] : y) acc.add(carrier_mul(I, J), a * b);
    }
    return acc.take();
  }
  K carrier_form(std::size_t I) const {
    K c(1);
    for (std::size_t p = 0; p < P_; ++p) {
      c *= form_[(I / stride_[p]) % n_];
      if (c.is_zero()) break;
    }
    return c;
  }
  K carrier_form(const SparseTerms<K>& x) const {
    K s;
    for (const auto& [I, c] : x) s += c * carrier_form(I);
    return s;
  }
  SparseTerms<K> carrier_unit() const {
    SparseTerms<K> u{{0, K(1)}};
    for (std::size_t p = 0; p < P_; ++p) {
      SparseTerms<K> v;
      for (const auto& [I, c] : u) {
        for (std::size_t k = 0; k < n_; ++k) {
          if (!unit_[k].is_zero()) v.emplace_back(I + k * stride_[p], c * unit_[k]);
        }
      }
      u = std::move(v);
    }
    std::sort(u.begin(), u.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return u;
  }

  // -- the algebra in its own basis (carrier basis, or the reduced basis of
  // the invariants)
  SparseTerms<K> basis_vector(std::size_t i) const {
    if (!invariant_) return {{i, K(1)}};
    return basis_[i];
  }
  Vec<K> coordinates(const SparseTerms<K>& x) const {
    Vec<K> out(dim());
    if (!invariant_) {
      for (const auto& [I, c] : x) out[I] += c;
      return out;
    }
    for (const auto& [I, c] : x) {
      auto it = pivot_index_.find(I);
      if (it != pivot_index_.end()) out[it->second] += c;
    }
    return out;
  }
  SparseTerms<K> embed(const Vec<K>& coords) const {
    Accum<K> acc(N_);
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (!coords[i].is_zero()) acc.add(basis_vector(i), coords[i]);
    }
    return acc.take();
  }
  Vec<K> mul(const Vec<K>& a, const Vec<K>& b) const { return coordinates(carrier_mul(embed(a), embed(b))); }
  K form(std::size_t i) const { return invariant_ ? basis_form_[i] : carrier_form(i); }
  Vec<K> form_vector() const {
    Vec<K> f(dim());
    for (std::size_t i = 0; i < dim(); ++i) f[i] = form(i);
    return f;
  }
  Vec<K> unit_coordinates() const { return coordinates(carrier_unit()); }

  // Action matrix of basis element h on marked leg l, in the algebra basis.
  Matrix<K> marked_action(std::size_t leg, std::size_t h) const {
    const std::size_t v = marked_vertex_[leg];
    Matrix<K> m(dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      const auto img = coordinates(vertex_apply(v, H_->basis(h), basis_vector(i)));
      for (std::size_t k = 0; k < dim(); ++k) m(k, i) = img[k];
    }
    return m;
  }

  // Without products the result carries the action, unit and form only;
  // enough for traces and comparison maps.
  AlgebraObject<K> materialize(const std::string& name = {}, bool products = true) const {
    AlgebraObject<K> A;
    A.name = name;
    const std::size_t d = dim();
    A.carrier = Module<K>{H_, d, std::vector<std::vector<Matrix<K>>>(graph_.marked.size())};
    for (std::size_t l = 0; l < graph_.marked.size(); ++l) {
      for (std::size_t h = 0; h < n_; ++h) A.carrier.legs[l].push_back(marked_action(l, h));
    }
    A.unit = unit_coordinates();
    A.lambda = form_vector();
    A.labels = basis_labels();
    if (!products) return A;
    A.mult.resize(d * d);
    std::vector<SparseTerms<K>> bv(d);
    for (std::size_t i = 0; i < d; ++i) bv[i] = basis_vector(i);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        A.mult[i * d + j] = to_sparse(coordinates(invariant_ ? carrier_mul(bv[i], bv[j]) : carrier_mul(i, j)));
      }
      if (!invariant_ && P_ > 0) drop_cache_row(i);
    }
    return A;
  }

  std::vector<std::string> basis_labels() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (invariant_) {
        out.push_back("u" + std::to_string(i));
        continue;
      }
      std::string s;
      for (std::size_t p = 0; p < P_; ++p) {
        if (p) s += "|";
        s += "d" + H_->labels()[(i / stride_[p]) % n_];
      }
      out.push_back(P_ ? s : "1");
    }
    return out;
  }

  const Vec<K>& factor_unit() const { return unit_; }
  const SparseOp<K>& factor_action(int role, std::size_t h) const { return role == 0 ? xact_[h] : yact_[h]; }

 private:
  static RibbonGraph split_marked_vertices(RibbonGraph G) {
    // a vertex with several marked slots is split by new edges so that each
    // piece keeps one marked slot; contracting the new edges gives back G
    std::vector<std::vector<std::string>> verts;
    std::size_t fresh = 0;
    std::map<std::string, int> is_marked;
    for (const auto& m : G.marked) is_marked[m] = 1;
    for (const auto& cyc : G.vertices) {
      std::vector<std::size_t> mpos;
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        if (is_marked.count(cyc[i])) mpos.push_back(i);
      }
      if (mpos.size() <= 1) {
        verts.push_back(cyc);
        continue;
      }
      // pieces: from each marked slot up to the next marked slot
      std::vector<std::vector<std::string>> pieces;
      for (std::size_t q = 0; q < mpos.size(); ++q) {
        std::vector<std::string> piece;
        const std::size_t start = mpos[q], stop = mpos[(q + 1) % mpos.size()];
        for (std::size_t i = start; i != stop || piece.empty(); i = (i + 1) % cyc.size()) piece.push_back(cyc[i]);
        pieces.push_back(std::move(piece));
      }
      // chain the pieces: piece q ends with an edge to piece q+1
      for (std::size_t q = 0; q + 1 < pieces.size(); ++q) {
        const std::string e = "#split" + std::to_string(fresh) + "a", f = "#split" + std::to_string(fresh) + "b";
        ++fresh;
        pieces[q].push_back(e);
        // f goes just before the remaining pieces, i.e. at the end of q+1's
        // cycle so that contraction restores the original order
        pieces[q + 1].push_back(f);
        G.pairs.emplace_back(e, f);
      }
      for (auto& p : pieces) verts.push_back(std::move(p));
    }
    G.vertices = std::move(verts);
    return G;
  }

  void build_factor_tables(const Vec<K>& R) {
    const auto& H = *H_;
    const std::size_t n = n_;
    xact_.assign(n, SparseOp<K>{n, std::vector<SparseTerms<K>>(n)});
    yact_.assign(n, SparseOp<K>{n, std::vector<SparseTerms<K>>(n)});
    for (std::size_t h = 0; h < n; ++h) {
      const auto Sh = H.S(H.basis(h));
      for (std::size_t k = 0; k < n; ++k) {
        // (h.e^j)(b_k) = e^j(S(h) b_k) for the first leg
        const auto a = H.mul(Sh, H.basis(k));
        for (std::size_t j = 0; j < n; ++j) {
          if (!a[j].is_zero()) xact_[h].cols[j].emplace_back(k, a[j]);
        }
        // (h.e^j)(b_k) = e^j(b_k h) for the second leg
        const auto b = H.mul(H.basis(k), H.basis(h));
        for (std::size_t j = 0; j < n; ++j) {
          if (!b[j].is_zero()) yact_[h].cols[j].emplace_back(k, b[j]);
        }
      }
    }
    for (auto* ops : {&xact_, &yact_}) {
      for (auto& op : *ops) {
        for (auto& c : op.cols) std::sort(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      }
    }
    // (e^a, e^b) -> e^b * e^a, i.e. coefficient of e^k is comult(k; b, a)
    std::vector<SparseTerms<K>> mu0(n * n);
    {
      std::vector<std::map<std::size_t, K>> tmp(n * n);
      for (std::size_t k = 0; k < n; ++k) {
        for (const auto& [ij, c] : H.comult_terms(k)) tmp[(ij % n) * n + ij / n][k] += c;
      }
      for (std::size_t t = 0; t < n * n; ++t) {
        for (auto& [k, c] : tmp[t]) {
          if (!c.is_zero()) mu0[t].emplace_back(k, c);
        }
      }
    }
    const auto refl = braid_terms(H, R, conv_.reflection);
    mu_.assign(n * n, {});
    Accum<K> acc(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (const auto& [a, b, r] : refl) {
          for (const auto& [i2, ci] : yact_[a].cols[i]) {
            for (const auto& [j2, cj] : yact_[b].cols[j]) acc.add(mu0[i2 * n + j2], r * ci * cj);
          }
        }
        mu_[i * n + j] = acc.take();
      }
    }
    unit_ = H.counit();
    form_.assign(n, K());
    for (std::size_t k = 0; k < n; ++k) form_[k] = integral_[k];
  }

  void build_vertices() {
    const std::size_t V = graph_.vertices.size();
    vertex_legs_.assign(V, {});
    vertex_marked_.assign(V, -1);
    marked_vertex_.assign(graph_.marked.size(), 0);
    for (std::size_t v = 0; v < V; ++v) {
      const auto& cyc = graph_.vertices[v];
      std::size_t start = 0;
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        const auto s = slots_.index.at(cyc[i]);
        if (slots_.marked_index[s] >= 0) {
          vertex_marked_[v] = slots_.marked_index[s];
          marked_vertex_[static_cast<std::size_t>(slots_.marked_index[s])] = v;
          start = i + 1;
        }
      }
      for (std::size_t q = 0; q < cyc.size(); ++q) {
        const auto s = slots_.index.at(cyc[(start + q) % cyc.size()]);
        if (slots_.partner[s] >= 0) vertex_legs_[v].push_back(s);
      }
      if (vertex_marked_[v] < 0) unmarked_.push_back(v);
    }
  }

  // Invariants of the unmarked vertices, as the image of the product of
  // their integrals (the carrier is free over each vertex). Each basis
  // vector u remembers a preimage w with Lambda...Lambda w = u; the form on
  // invariants is u -> form(w).
  void build_invariants() {
    invariant_ = true;
    std::size_t expected = N_;
    for (std::size_t i = 0; i < unmarked_.size(); ++i) expected /= n_;
    struct Row {
      Vec<K> u, w;
      std::size_t pivot;
    };
    std::vector<Row> rows;
    std::map<std::size_t, std::size_t> by_pivot;
    for (std::size_t c = 0; c < N_ && rows.size() < expected; ++c) {
      SparseTerms<K> x{{c, K(1)}};
      for (auto v : unmarked_) x = vertex_apply(v, integral_, x);
      if (x.empty()) continue;
      Vec<K> u = to_dense(x, N_), w(N_);
      w[c] = K(1);
      for (const auto& [p, r] : by_pivot) {
        if (u[p].is_zero()) continue;
        const K f = u[p];
        const auto& row = rows[r];
        for (std::size_t t = 0; t < N_; ++t) {
          if (!row.u[t].is_zero()) u[t] -= f * row.u[t];
          if (!row.w[t].is_zero()) w[t] -= f * row.w[t];
        }
      }
      std::size_t p = 0;
      while (p < N_ && u[p].is_zero()) ++p;
      if (p == N_) continue;
      const K inv = K(1) / u[p];
      for (std::size_t t = 0; t < N_; ++t) {
        if (!u[t].is_zero()) u[t] *= inv;
        if (!w[t].is_zero()) w[t] *= inv;
      }
      by_pivot[p] = rows.size();
      rows.push_back({std::move(u), std::move(w), p});
    }
    if (rows.size() != expected) throw std::logic_error("invariant subspace has unexpected dimension");
    // full reduction, rows sorted by pivot
    std::vector<std::size_t> order;
    for (const auto& [p, r] : by_pivot) order.push_back(r);
    for (std::size_t a = 0; a < order.size(); ++a) {
      for (std::size_t b = 0; b < order.size(); ++b) {
        if (a == b) continue;
        auto& ra = rows[order[a]];
        const auto& rb = rows[order[b]];
        const K f = ra.u[rb.pivot];
        if (f.is_zero()) continue;
        for (std::size_t t = 0; t < N_; ++t) {
          if (!rb.u[t].is_zero()) ra.u[t] -= f * rb.u[t];
          if (!rb.w[t].is_zero()) ra.w[t] -= f * rb.w[t];
        }
      }
    }
    for (std::size_t a = 0; a < order.size(); ++a) {
      const auto& r = rows[order[a]];
      basis_.push_back(to_sparse(r.u));
      pivot_index_[r.pivot] = a;
      basis_form_.push_back(carrier_form(to_sparse(r.w)));
    }
  }

  void split_digits(std::size_t I, std::vector<std::size_t>& d) const {
    for (std::size_t p = 0; p < P_; ++p) d[p] = (I / stride_[p]) % n_;
  }
  void expand_factor_product(const std::vector<std::size_t>& dx, const std::vector<std::size_t>& dy, std::size_t p,
                             std::size_t idx, const K& c, Accum<K>& out) const {
    if (p == P_) {
      out.add(idx, c);
      return;
    }
    for (const auto& [k, v] : mu_[dx[p] * n_ + dy[p]]) {
      expand_factor_product(dx, dy, p + 1, idx + k * stride_[p], c * v, out);
    }
  }
  void drop_cache_row(std::size_t i) const {
    for (std::size_t j = 0; j < N_; ++j) mul_cache_.erase(i * N_ + j);
  }

  const HopfAlgebra<K>* H_;
  RibbonGraph graph_;
  GluingConventions conv_;
  Vec<K> integral_;
  Signature sig_;
  SlotTable slots_;
  std::size_t n_ = 0, P_ = 0, N_ = 1;
  std::vector<std::size_t> stride_;
  std::vector<SparseOp<K>> xact_, yact_;
  std::vector<SparseTerms<K>> mu_;
  Vec<K> unit_, form_;
  std::vector<std::vector<std::size_t>> vertex_legs_;
  std::vector<long> vertex_marked_;
  std::vector<std::size_t> marked_vertex_, unmarked_;
  std::vector<std::pair<std::size_t, std::size_t>> braids_;  // (slot on x, slot on y)
  BraidTerms<K> vertex_braid_;
  std::vector<GluingStep> steps_;
  bool invariant_ = false;
  std::vector<SparseTerms<K>> basis_;
  std::map<std::size_t, std::size_t> pivot_index_;
  Vec<K> basis_form_;
  mutable std::unordered_map<std::size_t, SparseTerms<K>> mul_cache_;
};

// Contracts pair k = {e, f} of G, where e sits at a vertex A and f is the
// first listed slot of a different, unmarked vertex B: A's cycle gets the
// slots of B following f in place of e.
inline RibbonGraph contract_edge(const RibbonGraph& G, std::size_t k) {
  const auto t = slot_table(G);
  if (k >= G.pairs.size()) throw InvalidGraph("no such pair");
  const auto e = t.index.at(G.pairs[k].first), f = t.index.at(G.pairs[k].second);
  const auto A = t.vertex[e], B = t.vertex[f];
  if (A == B) throw InvalidGraph("cannot contract a loop");
  if (t.position[f] != 0) throw InvalidGraph("contracted slot must be listed first at its vertex");
  for (const auto& s : G.vertices[B]) {
    if (t.marked_index[t.index.at(s)] >= 0) throw InvalidGraph("contracted vertex must be unmarked");
  }
  RibbonGraph out;
  for (std::size_t v = 0; v < G.vertices.size(); ++v) {
    if (v == B) continue;
    if (v != A) {
      out.vertices.push_back(G.vertices[v]);
      continue;
    }
    std::vector<std::string> cyc;
    for (const auto& s : G.vertices[v]) {
      if (s != G.pairs[k].first) {
        cyc.push_back(s);
        continue;
      }
      for (std::size_t q = 1; q < G.vertices[B].size(); ++q) cyc.push_back(G.vertices[B][q]);
    }
    out.vertices.push_back(std::move(cyc));
  }
  for (std::size_t q = 0; q < G.pairs.size(); ++q) {
    if (q != k) out.pairs.push_back(G.pairs[q]);
  }
  out.marked = G.marked;
  return out;
}

namespace detail {

// Slot names replaced by their order of first appearance.
struct GraphShape {
  std::vector<std::vector<std::size_t>> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::size_t> marked;
  std::vector<std::string> names;  // index -> name
  bool operator==(const GraphShape& o) const {
    return vertices == o.vertices && pairs == o.pairs && marked == o.marked;
  }
};

inline GraphShape graph_shape(const RibbonGraph& G) {
  GraphShape s;
  std::map<std::string, std::size_t> idx;
  for (const auto& cyc : G.vertices) {
    s.vertices.emplace_back();
    for (const auto& name : cyc) {
      auto [it, fresh] = idx.emplace(name, s.names.size());
      if (fresh) s.names.push_back(name);
      s.vertices.back().push_back(it->second);
    }
  }
  for (const auto& [a, b] : G.pairs) s.pairs.emplace_back(idx.at(a), idx.at(b));
  for (const auto& m : G.marked) s.marked.push_back(idx.at(m));
  return s;
}

}  // namespace detail

struct SplitMatch {
  std::size_t pair = 0;  // the pair of `split` that is contracted
  RibbonGraph split;     // renamed so that contracting it gives `merged` verbatim
};

// Finds a pair of `split` whose contraction is `merged` up to renaming of
// slots.
inline std::optional<SplitMatch> match_split(const RibbonGraph& merged, const RibbonGraph& split) {
  const auto target = detail::graph_shape(merged);
  for (std::size_t k = 0; k < split.pairs.size(); ++k) {
    RibbonGraph c;
    try {
      c = contract_edge(split, k);
    } catch (const InvalidGraph&) {
      continue;
    }
    const auto shape = detail::graph_shape(c);
    if (!(shape == target)) continue;
    std::map<std::string, std::string> rename;
    for (std::size_t i = 0; i < shape.names.size(); ++i) rename[shape.names[i]] = target.names[i];
    std::set<std::string> used(target.names.begin(), target.names.end());
    auto fresh = [&](const std::string& s) {
      std::string t = s;
      while (used.count(t)) t += "'";
      used.insert(t);
      return t;
    };
    for (const auto& s : {split.pairs[k].first, split.pairs[k].second}) rename[s] = fresh(s);
    auto r = [&](const std::string& s) { return rename.at(s); };
    SplitMatch out{k, {}};
    for (const auto& cyc : split.vertices) {
      out.split.vertices.emplace_back();
      for (const auto& s : cyc) out.split.vertices.back().push_back(r(s));
    }
    for (const auto& [a, b] : split.pairs) out.split.pairs.emplace_back(r(a), r(b));
    for (const auto& m : split.marked) out.split.marked.push_back(r(m));
    return out;
  }
  return std::nullopt;
}

// The comparison map of the two gluing models related by contracting pair
// k of split.graph() (merged is the model of the contracted graph): the
// Delta factor of the contracted pair is eliminated against the integral
// of the closed disk, c -> sum_j e^j (x) rho_T(S^{-1} b_j) c with T the
// remaining slots of the closed vertex. Returned in the algebra bases.
template <class K>
Matrix<K> contraction_map(const GluedModel<K>& split, const GluedModel<K>& merged, std::size_t k) {
  const auto& H = split.hopf();
  const auto& G = split.graph();
  const auto& st = split.slots();
  const auto& mt = merged.slots();
  const auto f = st.index.at(G.pairs[k].second);
  const auto B = st.vertex[f];
  std::vector<std::size_t> T;
  for (std::size_t q = 1; q < G.vertices[B].size(); ++q) T.push_back(mt.index.at(G.vertices[B][q]));
  // pair positions of merged inside split
  std::vector<std::size_t> pos(merged.npairs());
  for (std::size_t q = 0; q < merged.npairs(); ++q) {
    pos[q] = static_cast<std::size_t>(st.pair_of[st.index.at(merged.graph().pairs[q].first)]);
  }
  const std::size_t n = H.dim();
  Matrix<K> Phi(split.dim(), merged.dim());
  for (std::size_t i = 0; i < merged.dim(); ++i) {
    const auto c = merged.basis_vector(i);
    Accum<K> acc(split.carrier_dim());
    for (std::size_t j = 0; j < n; ++j) {
      const auto y = merged.slots_apply(T, H.Sinv(H.basis(j)), c);
      for (const auto& [I, v] : y) {
        std::size_t J = j * split.stride(k);
        for (std::size_t q = 0; q < merged.npairs(); ++q) J += ((I / merged.stride(q)) % n) * split.stride(pos[q]);
        acc.add(J, v);
      }
    }
    const auto col = split.coordinates(acc.take());
    for (std::size_t r = 0; r < split.dim(); ++r) Phi(r, i) = col[r];
  }
  return Phi;
}

}  // namespace skeintrace
