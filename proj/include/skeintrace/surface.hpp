#pragma once

#include "skeintrace/coend.hpp"
#include "skeintrace/sparse.hpp"
#include "skeintrace/trace.hpp"

#include <memory>
#include <random>
#include <vector>

namespace skeintrace {

// A surface algebra with one marked interval, prepared for module
// computations: sparse action operators and, when products are present,
// the sparse Gram matrix of the Frobenius pairing.
template <class K>
struct SurfaceAlgebra {
  const AlgebraObject<K>* A = nullptr;
  std::vector<SparseOp<K>> act;             // act[k]: b_k on the carrier
  std::vector<SparseTerms<K>> gram_rows;    // lambda(b_i b_j), by rows

  explicit SurfaceAlgebra(const AlgebraObject<K>& a) : A(&a) {
    if (a.carrier.legs.size() != 1) throw std::invalid_argument("surface traces need exactly one marked interval");
    if (!a.lambda) throw std::invalid_argument("surface algebra has no Frobenius form");
    for (const auto& m : a.carrier.legs[0]) act.push_back(sparse_op(m));
    if (a.has_products()) {
      const std::size_t d = a.dim();
      gram_rows.resize(d);
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          K s;
          for (const auto& [k, v] : a.product(i, j)) s += v * (*a.lambda)[k];
          if (!s.is_zero()) gram_rows[i].emplace_back(j, s);
        }
      }
    }
  }
  std::size_t dim() const { return A->dim(); }
  const HopfAlgebra<K>& hopf() const { return A->hopf(); }
  const Vec<K>& lambda() const { return *A->lambda; }
};

// X (x) a for a projective presentation X over H, as a free right
// a-module in H-mod. Maps out of it are determined by the images of the
// free generators of X's ambient.
template <class K>
struct SurfaceProjective {
  std::shared_ptr<const SurfaceAlgebra<K>> alg;
  ProjectivePresentation<K> X;
  FreeFrame<K> frame;
  std::vector<SparseOp<K>> amb_act;     // action on X's ambient
  SparseOp<K> e;                        // X's idempotent
  std::vector<SparseTerms<K>> decomp;   // ambient basis x -> coefficients on (copy * dim H + k)
  std::vector<SparseTerms<K>> gens;     // free generators in ambient coordinates

  std::size_t amb_dim() const { return X.ambient_dim(); }
  std::size_t copies() const { return frame.copies(); }
  std::size_t dim() const { return amb_dim() * alg->dim(); }  // coordinates (x, a) -> x * d + a
};

template <class K>
SurfaceProjective<K> surface_projective(std::shared_ptr<const SurfaceAlgebra<K>> alg, ProjectivePresentation<K> X) {
  SurfaceProjective<K> P;
  P.alg = std::move(alg);
  P.frame = free_frame(X);
  const auto& H = X.hopf();
  const std::size_t n = H.dim(), m = X.ambient_dim();
  const auto amb = ambient(X);
  for (const auto& a : amb.legs[0]) P.amb_act.push_back(sparse_op(a));
  P.e = sparse_op(X.e);
  P.decomp.resize(m);
  for (std::size_t x = 0; x < m; ++x) {
    Vec<K> ex(m);
    ex[x] = K(1);
    for (std::size_t c = 0; c < P.frame.copies(); ++c) {
      const auto comp = frame_component(P.frame, ex, c);
      for (std::size_t k = 0; k < n; ++k) {
        if (!comp[k].is_zero()) P.decomp[x].emplace_back(c * n + k, comp[k]);
      }
    }
  }
  for (std::size_t c = 0; c < P.frame.copies(); ++c) P.gens.push_back(to_sparse(frame_column(P.frame, c, H.unit())));
  P.X = std::move(X);
  return P;
}

// Right a-linear, H-linear map P -> Q: gens[c] is the image of P's c-th
// free generator in Q's coordinates.
template <class K>
struct SurfaceMap {
  std::vector<SparseTerms<K>> gens;
  bool operator==(const SurfaceMap&) const = default;
};

namespace detail {

// b_k acting diagonally on Q's ambient (x) a.
template <class K>
void surface_act(const SurfaceProjective<K>& Q, std::size_t k, const SparseTerms<K>& m, const K& scale, Accum<K>& acc) {
  const auto& H = Q.X.hopf();
  const std::size_t n = H.dim(), d = Q.alg->dim();
  for (const auto& [ij, c] : H.comult_terms(k)) {
    const auto& ay = Q.amb_act[ij / n];
    const auto& aa = Q.alg->act[ij % n];
    for (const auto& [ya, v] : m) {
      const K cv = c * v * scale;
      for (const auto& [y2, cy] : ay.cols[ya / d]) {
        const K cvy = cv * cy;
        for (const auto& [a2, ca] : aa.cols[ya % d]) acc.add(y2 * d + a2, cvy * ca);
      }
    }
  }
}

template <class K>
SparseTerms<K> apply_e(const SurfaceProjective<K>& Q, const SparseTerms<K>& m) {
  const std::size_t d = Q.alg->dim();
  Accum<K> acc(Q.dim());
  for (const auto& [ya, v] : m) {
    for (const auto& [y2, c] : Q.e.cols[ya / d]) acc.add(y2 * d + ya % d, v * c);
  }
  return acc.take();
}

}  // namespace detail

// f applied to x (x) 1 for x in P's ambient.
template <class K>
SparseTerms<K> hat_apply(const SurfaceProjective<K>& P, const SurfaceProjective<K>& Q, const SurfaceMap<K>& f,
                         const SparseTerms<K>& x) {
  const std::size_t n = P.X.hopf().dim();
  std::map<std::size_t, K> coef;
  for (const auto& [i, v] : x) {
    for (const auto& [ck, c] : P.decomp[i]) coef[ck] += v * c;
  }
  Accum<K> acc(Q.dim());
  for (const auto& [ck, c] : coef) {
    if (!c.is_zero()) detail::surface_act(Q, ck % n, f.gens[ck / n], c, acc);
  }
  return acc.take();
}

// The idempotent e_X (x) 1 of P, i.e. the identity of the summand.
template <class K>
SurfaceMap<K> surface_identity(const SurfaceProjective<K>& P) {
  const auto& u = P.alg->A->unit;
  const std::size_t d = P.alg->dim();
  SurfaceMap<K> out;
  for (const auto& g : P.gens) {
    Accum<K> acc(P.dim());
    Accum<K> ex(P.amb_dim());
    const auto eg = P.e.apply(g, ex);
    for (const auto& [x, v] : eg) {
      for (std::size_t a = 0; a < d; ++a) {
        if (!u[a].is_zero()) acc.add(x * d + a, v * u[a]);
      }
    }
    out.gens.push_back(acc.take());
  }
  return out;
}

// g o f for f: P -> Q and g: Q -> R. Needs the products of a.
template <class K>
SurfaceMap<K> compose(const SurfaceProjective<K>&, const SurfaceProjective<K>& Q, const SurfaceProjective<K>& R,
                      const SurfaceMap<K>& g, const SurfaceMap<K>& f) {
  const auto& A = *Q.alg->A;
  if (!A.has_products()) throw std::invalid_argument("composition needs the algebra products");
  const std::size_t d = A.dim();
  std::map<std::size_t, SparseTerms<K>> gy;  // g(y (x) 1), cached
  auto g_at = [&](std::size_t y) -> const SparseTerms<K>& {
    auto it = gy.find(y);
    if (it != gy.end()) return it->second;
    return gy.emplace(y, hat_apply(Q, R, g, SparseTerms<K>{{y, K(1)}})).first->second;
  };
  SurfaceMap<K> out;
  for (const auto& m : f.gens) {
    Accum<K> acc(R.dim());
    for (const auto& [ya, v] : m) {
      const std::size_t a = ya % d;
      for (const auto& [zc, w] : g_at(ya / d)) {
        const K vw = v * w;
        const std::size_t base = (zc / d) * d;
        for (const auto& [k, c] : A.product(zc % d, a)) acc.add(base + k, vw * c);
      }
    }
    out.gens.push_back(acc.take());
  }
  return out;
}

// (id (x) lambda) o f as a matrix Q-ambient x P-ambient.
template <class K>
Matrix<K> lambda_part(const SurfaceProjective<K>& P, const SurfaceProjective<K>& Q, const SurfaceMap<K>& f) {
  const auto& H = P.X.hopf();
  const auto& lam = Q.alg->lambda();
  const std::size_t n = H.dim(), d = Q.alg->dim();
  std::vector<SparseTerms<K>> reduced;
  for (const auto& m : f.gens) {
    Accum<K> acc(Q.amb_dim());
    for (const auto& [ya, v] : m) {
      if (!lam[ya % d].is_zero()) acc.add(ya / d, v * lam[ya % d]);
    }
    reduced.push_back(acc.take());
  }
  Matrix<K> L(Q.amb_dim(), P.amb_dim());
  for (std::size_t x = 0; x < P.amb_dim(); ++x) {
    for (const auto& [ck, c] : P.decomp[x]) {
      for (const auto& [y, v] : reduced[ck / n]) {
        for (const auto& [y2, w] : Q.amb_act[ck % n].cols[y]) L(y2, x) += c * v * w;
      }
    }
  }
  return L;
}

// tr(f) = t_X(e (id (x) lambda) f e) with t the modified trace over H.
template <class K>
K surface_trace(const SurfaceProjective<K>& P, const Vec<K>& mu, const SurfaceMap<K>& f) {
  const auto L = lambda_part(P, P, f);
  return modified_trace(P.X, P.frame, mu, P.X.e * L * P.X.e);
}

// E_Q o f o E_P.
template <class K>
SurfaceMap<K> compress(const SurfaceProjective<K>& P, const SurfaceProjective<K>& Q, const SurfaceMap<K>& f) {
  SurfaceMap<K> out;
  Accum<K> ex(P.amb_dim());
  for (const auto& g : P.gens) {
    const auto eg = P.e.apply(g, ex);
    out.gens.push_back(detail::apply_e(Q, hat_apply(P, Q, f, eg)));
  }
  return out;
}

template <class K>
bool is_compatible(const SurfaceProjective<K>& P, const SurfaceProjective<K>& Q, const SurfaceMap<K>& f) {
  return compress(P, Q, f) == f;
}

namespace detail {

template <class K>
SparseTerms<K> flatten(const SurfaceProjective<K>& Q, const SurfaceMap<K>& f) {
  SparseTerms<K> out;
  for (std::size_t c = 0; c < f.gens.size(); ++c) {
    for (const auto& [i, v] : f.gens[c]) out.emplace_back(c * Q.dim() + i, v);
  }
  return out;
}

template <class K>
SurfaceMap<K> unflatten(const SurfaceProjective<K>& P, const SurfaceProjective<K>& Q, const SparseTerms<K>& v) {
  SurfaceMap<K> f{std::vector<SparseTerms<K>>(P.copies())};
  for (const auto& [i, c] : v) f.gens[i / Q.dim()].emplace_back(i % Q.dim(), c);
  return f;
}

}  // namespace detail

// Basis of Hom(P, Q): the compressions of the maps sending one generator
// to one basis vector of Q, reduced to echelon form.
template <class K>
std::vector<SurfaceMap<K>> hom_basis(const SurfaceProjective<K>& P, const SurfaceProjective<K>& Q) {
  SparseEchelon<K> ech(P.copies() * Q.dim());
  SurfaceMap<K> unit{std::vector<SparseTerms<K>>(P.copies())};
  for (std::size_t c = 0; c < P.copies(); ++c) {
    for (std::size_t i = 0; i < Q.dim(); ++i) {
      unit.gens[c] = {{i, K(1)}};
      ech.add(detail::flatten(Q, compress(P, Q, unit)));
      unit.gens[c].clear();
    }
  }
  std::vector<SurfaceMap<K>> out;
  for (const auto& r : ech.rows()) out.push_back(detail::unflatten(P, Q, r));
  return out;
}

// Seeded compatible map with a few random generator images.
template <class K>
SurfaceMap<K> random_surface_map(const SurfaceProjective<K>& P, const SurfaceProjective<K>& Q, std::mt19937_64& rng,
                                 std::size_t terms = 4) {
  std::uniform_int_distribution<int> coef(-3, 3);
  SurfaceMap<K> f{std::vector<SparseTerms<K>>(P.copies())};
  for (std::size_t c = 0; c < P.copies(); ++c) {
    Accum<K> acc(Q.dim());
    for (std::size_t t = 0; t < terms; ++t) acc.add(rng() % Q.dim(), K(coef(rng)));
    f.gens[c] = acc.take();
  }
  return compress(P, Q, f);
}

// Gram matrix (f, g) -> tr_P(g o f) for f in Hom(P, Q), g in Hom(Q, P),
// evaluated through the Frobenius pairing of a.
template <class K>
Matrix<K> trace_pairing(const SurfaceProjective<K>& P, const SurfaceProjective<K>& Q, const Vec<K>& mu,
                        const std::vector<SurfaceMap<K>>& fs, const std::vector<SurfaceMap<K>>& gs) {
  const auto& alg = *P.alg;
  if (alg.gram_rows.empty() && alg.dim() > 0) throw std::invalid_argument("trace pairing needs the algebra products");
  const std::size_t n = P.X.hopf().dim(), d = alg.dim();
  // phi_c(v) = mu(component of v in copy c)
  std::vector<Vec<K>> phi(P.copies(), Vec<K>(P.amb_dim()));
  for (std::size_t x = 0; x < P.amb_dim(); ++x) {
    for (const auto& [ck, c] : P.decomp[x]) phi[ck / n][x] += c * mu[ck % n];
  }
  Matrix<K> G(fs.size(), gs.size());
  for (std::size_t j = 0; j < gs.size(); ++j) {
    // psi[c][(y, a)] = sum_{z, c2} phi_c(z) g(y)[z, c2] lambda(b_c2 b_a)
    std::vector<Vec<K>> psi(P.copies(), Vec<K>(Q.dim()));
    for (std::size_t y = 0; y < Q.amb_dim(); ++y) {
      const auto gy = hat_apply(Q, P, gs[j], SparseTerms<K>{{y, K(1)}});
      for (std::size_t c = 0; c < P.copies(); ++c) {
        std::map<std::size_t, K> s;
        for (const auto& [zc, v] : gy) {
          const K& p = phi[c][zc / d];
          if (!p.is_zero()) s[zc % d] += p * v;
        }
        for (const auto& [c2, v] : s) {
          if (v.is_zero()) continue;
          for (const auto& [a, w] : alg.gram_rows[c2]) psi[c][y * d + a] += v * w;
        }
      }
    }
    for (std::size_t i = 0; i < fs.size(); ++i) {
      K t;
      for (std::size_t c = 0; c < P.copies(); ++c) {
        for (const auto& [ya, v] : fs[i].gens[c]) t += v * psi[c][ya];
      }
      G(i, j) = t;
    }
  }
  return G;
}

// (id (x) T) o f for an algebra map T: a -> a' (d' x d); P2, Q2 are the
// same presentations over a'.
template <class K>
SurfaceMap<K> transport(const SurfaceProjective<K>& Q, const SurfaceProjective<K>& Q2, const Matrix<K>& T,
                        const SurfaceMap<K>& f) {
  const std::size_t d = Q.alg->dim(), d2 = Q2.alg->dim();
  if (T.rows() != d2 || T.cols() != d) throw std::invalid_argument("transport: shape mismatch");
  std::vector<SparseTerms<K>> cols(d);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t r = 0; r < d2; ++r) {
      if (!T(r, a).is_zero()) cols[a].emplace_back(r, T(r, a));
    }
  }
  SurfaceMap<K> out;
  for (const auto& m : f.gens) {
    Accum<K> acc(Q2.dim());
    for (const auto& [ya, v] : m) {
      for (const auto& [r, c] : cols[ya % d]) acc.add((ya / d) * d2 + r, v * c);
    }
    out.gens.push_back(acc.take());
  }
  return out;
}

// X acting on P: the presentation X (x) P_X over the same algebra.
template <class K>
SurfaceProjective<K> surface_act_on(const Module<K>& X, const SurfaceProjective<K>& P) {
  return surface_projective(P.alg, act_on(X, P.X));
}

// Closing operator cl_{X|P}: End(X . P) -> End(P), the partial trace over
// X twisted by rho_X(g^{-1}), the convention of the modified trace.
template <class K>
SurfaceMap<K> closing_operator(const Module<K>& X, const SurfaceProjective<K>& P, const SurfaceProjective<K>& XP,
                               const SurfaceMap<K>& f, const Vec<K>& g_inv) {
  const auto w = X.act(g_inv);
  const std::size_t m = P.amb_dim(), d = P.alg->dim(), blk = m * d;
  SurfaceMap<K> out;
  for (const auto& gen : P.gens) {
    Accum<K> acc(P.dim());
    for (std::size_t i = 0; i < X.dim; ++i) {
      SparseTerms<K> xi;
      for (const auto& [x, v] : gen) xi.emplace_back(i * m + x, v);
      const auto img = hat_apply(XP, XP, f, xi);
      for (const auto& [kya, v] : img) {
        const K& c = w(i, kya / blk);
        if (!c.is_zero()) acc.add(kya % blk, c * v);
      }
    }
    out.gens.push_back(acc.take());
  }
  return out;
}

}  // namespace skeintrace
