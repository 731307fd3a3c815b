#pragma once

#include "skeintrace/rep.hpp"

#include <random>
#include <string>
#include <vector>

namespace skeintrace {

// Isomorphism G: (V_eps (x) H (x) W_eps)^{(+)n} -> V (x) H^{(+)n} (x) W,
//   v (x) k (x) w  ->  k(1) v (x) k(2) (x) k(3) w,
// where the source is free (H acts on the middle factor only). Source
// coordinates: copy c = (slot*dimV + v)*dimW + w, basis k, index c*d + k.
template <class K>
struct FreeFrame {
  Matrix<K> G, Ginv;  // single-slot blocks; the full map is block diagonal
  std::size_t dv = 1, dw = 1, d = 0, rank = 1;

  std::size_t copies() const { return rank * dv * dw; }
  std::size_t ambient_index(std::size_t v, std::size_t slot, std::size_t a, std::size_t w) const {
    return ((v * rank + slot) * d + a) * dw + w;
  }
};

template <class K>
FreeFrame<K> free_frame(const ProjectivePresentation<K>& p) {
  const auto& H = p.hopf();
  FreeFrame<K> fr;
  fr.dv = p.left.dim;
  fr.dw = p.right.dim;
  fr.d = H.dim();
  fr.rank = p.rank;
  const std::size_t d = fr.d, dv = fr.dv, dw = fr.dw;
  const std::size_t B = dv * d * dw;
  Matrix<K> G(B, B);
  for (std::size_t k = 0; k < d; ++k) {
    const auto d3 = H.coproduct_leg(H.coproduct(H.basis(k)), 2, 0);
    for (std::size_t I = 0; I < d3.size(); ++I) {
      if (d3[I].is_zero()) continue;
      const std::size_t i1 = I / (d * d), i2 = (I / d) % d, i3 = I % d;
      const auto& A = p.left.legs[0][i1];
      const auto& C = p.right.legs[0][i3];
      for (std::size_t v = 0; v < dv; ++v) {
        for (std::size_t w = 0; w < dw; ++w) {
          const std::size_t src = (v * dw + w) * d + k;
          for (std::size_t v2 = 0; v2 < dv; ++v2) {
            if (A(v2, v).is_zero()) continue;
            for (std::size_t w2 = 0; w2 < dw; ++w2) {
              if (C(w2, w).is_zero()) continue;
              G((v2 * d + i2) * dw + w2, src) += d3[I] * A(v2, v) * C(w2, w);
            }
          }
        }
      }
    }
  }
  auto Gi = inverse(G);
  if (!Gi) throw std::logic_error("free frame is not invertible");
  fr.G = std::move(G);
  fr.Ginv = std::move(*Gi);
  return fr;
}

// Column of the full frame map for copy c and basis element k of H,
// written into ambient coordinates.
template <class K>
Vec<K> frame_column(const FreeFrame<K>& fr, std::size_t copy, const Vec<K>& h) {
  const std::size_t slot = copy / (fr.dv * fr.dw);
  const std::size_t v = (copy / fr.dw) % fr.dv;
  const std::size_t w = copy % fr.dw;
  Vec<K> out(fr.copies() * fr.d);
  for (std::size_t k = 0; k < fr.d; ++k) {
    if (h[k].is_zero()) continue;
    const std::size_t src = (v * fr.dw + w) * fr.d + k;
    for (std::size_t v2 = 0; v2 < fr.dv; ++v2) {
      for (std::size_t a = 0; a < fr.d; ++a) {
        for (std::size_t w2 = 0; w2 < fr.dw; ++w2) {
          const K& g = fr.G((v2 * fr.d + a) * fr.dw + w2, src);
          if (!g.is_zero()) out[fr.ambient_index(v2, slot, a, w2)] += h[k] * g;
        }
      }
    }
  }
  return out;
}

// Component of an ambient vector in a given free copy, as an element of H.
template <class K>
Vec<K> frame_component(const FreeFrame<K>& fr, const Vec<K>& x, std::size_t copy) {
  const std::size_t slot = copy / (fr.dv * fr.dw);
  const std::size_t v = (copy / fr.dw) % fr.dv;
  const std::size_t w = copy % fr.dw;
  Vec<K> out(fr.d);
  for (std::size_t v2 = 0; v2 < fr.dv; ++v2) {
    for (std::size_t a = 0; a < fr.d; ++a) {
      for (std::size_t w2 = 0; w2 < fr.dw; ++w2) {
        const K& xv = x[fr.ambient_index(v2, slot, a, w2)];
        if (xv.is_zero()) continue;
        const std::size_t blk = (v2 * fr.d + a) * fr.dw + w2;
        for (std::size_t k = 0; k < fr.d; ++k) {
          const K& gi = fr.Ginv((v * fr.dw + w) * fr.d + k, blk);
          if (!gi.is_zero()) out[k] += gi * xv;
        }
      }
    }
  }
  return out;
}

template <class K>
struct SymmetrizedCointegral {
  Vec<K> mu;
  std::string tag;  // e.g. "lambda_r(g x)"
};

template <class K>
K evaluate(const Vec<K>& f, const Vec<K>& x) {
  K s;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!f[i].is_zero() && !x[i].is_zero()) s += f[i] * x[i];
  }
  return s;
}

// Functional x -> f(a x).
template <class K>
Vec<K> precompose_left(const HopfAlgebra<K>& H, const Vec<K>& f, const Vec<K>& a) {
  Vec<K> out(H.dim());
  for (std::size_t i = 0; i < H.dim(); ++i) out[i] = evaluate(f, H.mul(a, H.basis(i)));
  return out;
}

template <class K>
bool is_cyclic(const HopfAlgebra<K>& H, const Vec<K>& mu) {
  for (std::size_t i = 0; i < H.dim(); ++i) {
    for (std::size_t j = i + 1; j < H.dim(); ++j) {
      if (evaluate(mu, H.mul(H.basis(i), H.basis(j))) != evaluate(mu, H.mul(H.basis(j), H.basis(i)))) return false;
    }
  }
  return true;
}

template <class K>
Matrix<K> gram(const HopfAlgebra<K>& H, const Vec<K>& mu) {
  Matrix<K> G(H.dim(), H.dim());
  for (std::size_t i = 0; i < H.dim(); ++i) {
    for (std::size_t j = 0; j < H.dim(); ++j) G(i, j) = evaluate(mu, H.mul(H.basis(i), H.basis(j)));
  }
  return G;
}

// Modified trace of an endomorphism f of the ambient of p (with f = e f e
// checked by the caller or by modified_trace_checked).
template <class K>
K modified_trace(const ProjectivePresentation<K>& p, const FreeFrame<K>& fr, const Vec<K>& mu, const Matrix<K>& f) {
  const auto& H = p.hopf();
  K t;
  for (std::size_t c = 0; c < fr.copies(); ++c) {
    const auto col = frame_column(fr, c, H.unit());
    const auto img = f * col;
    t += evaluate(mu, frame_component(fr, img, c));
  }
  return t;
}

template <class K>
K modified_trace(const ProjectivePresentation<K>& p, const Vec<K>& mu, const Matrix<K>& f) {
  if (p.e * f * p.e != f) throw std::invalid_argument("modified_trace: f is not compatible with e");
  return modified_trace(p, free_frame(p), mu, f);
}

// Left partial trace p_X(f) = (d_X (x) id)(theta (x) f)(b~_X (x) id) for
// f in End(X (x) A). The identification theta: ^vX -> X^v is
// phi -> phi o rho(g^{-1}), so p_X(f) = Tr_X((rho_X(g^{-1}) (x) id) f).
template <class K>
Matrix<K> partial_trace_left(const Module<K>& X, std::size_t dim_a, const Matrix<K>& f, const Vec<K>& g_inv) {
  const auto w = X.act(g_inv);
  Matrix<K> out(dim_a, dim_a);
  for (std::size_t i = 0; i < X.dim; ++i) {
    for (std::size_t k = 0; k < X.dim; ++k) {
      if (w(i, k).is_zero()) continue;
      for (std::size_t a = 0; a < dim_a; ++a) {
        for (std::size_t b = 0; b < dim_a; ++b) {
          const K& v = f(k * dim_a + a, i * dim_a + b);
          if (!v.is_zero()) out(a, b) += w(i, k) * v;
        }
      }
    }
  }
  return out;
}

// Right partial trace Tr_X((id (x) rho_X(g)) f) for f in End(A (x) X).
template <class K>
Matrix<K> partial_trace_right(const Module<K>& X, std::size_t dim_a, const Matrix<K>& f, const Vec<K>& g) {
  const auto w = X.act(g);
  Matrix<K> out(dim_a, dim_a);
  for (std::size_t i = 0; i < X.dim; ++i) {
    for (std::size_t k = 0; k < X.dim; ++k) {
      if (w(i, k).is_zero()) continue;
      for (std::size_t a = 0; a < dim_a; ++a) {
        for (std::size_t b = 0; b < dim_a; ++b) {
          const K& v = f(a * X.dim + k, b * X.dim + i);
          if (!v.is_zero()) out(a, b) += w(i, k) * v;
        }
      }
    }
  }
  return out;
}

// Random endomorphism of the ambient built from a seeded matrix of right
// multiplications in the free frame, so it is an intertwiner by
// construction.
template <class K>
Matrix<K> random_ambient_endo(const ProjectivePresentation<K>& p, const FreeFrame<K>& fr, std::mt19937_64& rng,
                              int density_percent = 30) {
  const auto& H = p.hopf();
  const std::size_t N = fr.copies();
  std::uniform_int_distribution<int> coef(-2, 2), pct(0, 99);
  // images of the free generators, in ambient coordinates
  const std::size_t dim = p.ambient_dim();
  Matrix<K> f(dim, dim);
  // F(h in copy j) = sum_i frame(h a_ij in copy i); build column by column
  std::vector<std::vector<Vec<K>>> a(N, std::vector<Vec<K>>(N, Vec<K>(H.dim())));
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      for (std::size_t k = 0; k < H.dim(); ++k) {
        if (pct(rng) < density_percent) a[i][j][k] = K(coef(rng));
      }
    }
  }
  // f = Gfull * R(a) * Gfull^{-1}
  Matrix<K> RG(dim, dim);  // R(a) in frame coordinates composed with Ginv
  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t k = 0; k < H.dim(); ++k) {
      // input: basis k in copy j (frame coords) -> sum_i (b_k a_ij) in copy i
      Vec<K> out(dim);
      for (std::size_t i = 0; i < N; ++i) {
        const auto prod = H.mul(H.basis(k), a[i][j]);
        const auto col = frame_column(fr, i, prod);
        for (std::size_t r = 0; r < dim; ++r) out[r] += col[r];
      }
      for (std::size_t r = 0; r < dim; ++r) RG(r, j * H.dim() + k) = out[r];
    }
  }
  // RG maps frame coordinates to ambient; precompose with frame inverse
  Matrix<K> Finv(dim, dim);
  for (std::size_t c = 0; c < N; ++c) {
    for (std::size_t x = 0; x < dim; ++x) {
      Vec<K> ex(dim);
      ex[x] = K(1);
      const auto comp = frame_component(fr, ex, c);
      for (std::size_t k = 0; k < H.dim(); ++k) Finv(c * H.dim() + k, x) = comp[k];
    }
  }
  f = RG * Finv;
  return f;
}

}  // namespace skeintrace
