#pragma once

#include "skeintrace/hopf.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace skeintrace {

// Finite-dimensional module over H^{(x)k}. legs[l][i] is the action of
// b_i placed on tensor leg l; actions on different legs commute.
template <class K>
struct Module {
  const HopfAlgebra<K>* H = nullptr;
  std::size_t dim = 0;
  std::vector<std::vector<Matrix<K>>> legs;

  std::size_t nlegs() const { return legs.size(); }

  Matrix<K> act(const Vec<K>& h, std::size_t leg = 0) const {
    Matrix<K> m(dim, dim);
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (!h[i].is_zero()) m = m + h[i] * legs[leg][i];
    }
    return m;
  }
  const Matrix<K>& act_basis(std::size_t i, std::size_t leg = 0) const { return legs[leg][i]; }
};

template <class K>
void check_same_parent(const Module<K>& a, const Module<K>& b) {
  if (a.H != b.H) throw std::invalid_argument("modules over different Hopf algebras");
  if (a.nlegs() != b.nlegs()) throw std::invalid_argument("modules over different tensor powers");
}

template <class K>
Module<K> regular(const HopfAlgebra<K>& H) {
  Module<K> M{&H, H.dim(), {{}}};
  for (std::size_t i = 0; i < H.dim(); ++i) M.legs[0].push_back(H.left_mult_matrix(H.basis(i)));
  return M;
}

template <class K>
Module<K> trivial(const HopfAlgebra<K>& H, std::size_t nlegs = 1) {
  Module<K> M{&H, 1, std::vector<std::vector<Matrix<K>>>(nlegs)};
  for (std::size_t l = 0; l < nlegs; ++l) {
    for (std::size_t i = 0; i < H.dim(); ++i) M.legs[l].push_back(Matrix<K>(1, 1, {H.counit()[i]}));
  }
  return M;
}

// Builds a module from per-basis action matrices, checking the algebra map
// property on every pair of basis elements.
template <class K>
Module<K> make_module(const HopfAlgebra<K>& H, std::vector<Matrix<K>> action) {
  if (action.size() != H.dim()) throw std::invalid_argument("need one action matrix per basis element");
  Module<K> M{&H, action.empty() ? 0 : action[0].rows(), {std::move(action)}};
  for (std::size_t i = 0; i < H.dim(); ++i) {
    for (std::size_t j = 0; j < H.dim(); ++j) {
      if (M.legs[0][i] * M.legs[0][j] != M.act(H.mul(H.basis(i), H.basis(j)))) {
        throw std::invalid_argument("action is not an algebra map at (" + H.labels()[i] + ", " + H.labels()[j] + ")");
      }
    }
  }
  if (M.act(H.unit()) != Matrix<K>::identity(M.dim)) throw std::invalid_argument("unit does not act as identity");
  return M;
}

template <class K>
bool is_module(const Module<K>& M) {
  const auto& H = *M.H;
  for (std::size_t l = 0; l < M.nlegs(); ++l) {
    if (M.act(H.unit(), l) != Matrix<K>::identity(M.dim)) return false;
    for (std::size_t i = 0; i < H.dim(); ++i) {
      for (std::size_t j = 0; j < H.dim(); ++j) {
        if (M.legs[l][i] * M.legs[l][j] != M.act(H.mul(H.basis(i), H.basis(j)), l)) return false;
      }
    }
  }
  return true;
}

// Tensor product in H-mod (legwise when k > 1); basis index m*dimN + n.
template <class K>
Module<K> tensor(const Module<K>& M, const Module<K>& N) {
  check_same_parent(M, N);
  const auto& H = *M.H;
  const std::size_t n = H.dim();
  Module<K> T{&H, M.dim * N.dim, std::vector<std::vector<Matrix<K>>>(M.nlegs())};
  for (std::size_t l = 0; l < M.nlegs(); ++l) {
    for (std::size_t k = 0; k < n; ++k) {
      Matrix<K> a(T.dim, T.dim);
      for (const auto& [ij, c] : H.comult_terms(k)) a = a + c * kron(M.legs[l][ij / n], N.legs[l][ij % n]);
      T.legs[l].push_back(std::move(a));
    }
  }
  return T;
}

// External product: M over H^{(x)k}, N over H^{(x)l} gives M (x) N over
// H^{(x)(k+l)}.
template <class K>
Module<K> external(const Module<K>& M, const Module<K>& N) {
  if (M.H != N.H) throw std::invalid_argument("modules over different Hopf algebras");
  Module<K> T{M.H, M.dim * N.dim, {}};
  const auto IM = Matrix<K>::identity(M.dim), IN = Matrix<K>::identity(N.dim);
  for (const auto& leg : M.legs) {
    std::vector<Matrix<K>> a;
    for (const auto& m : leg) a.push_back(kron(m, IN));
    T.legs.push_back(std::move(a));
  }
  for (const auto& leg : N.legs) {
    std::vector<Matrix<K>> a;
    for (const auto& m : leg) a.push_back(kron(IM, m));
    T.legs.push_back(std::move(a));
  }
  return T;
}

enum class Side { Left, Right };

// Left dual X^v: h acts by rho(S h)^T. Right dual ^vX: by rho(S^{-1} h)^T.
template <class K>
Module<K> dual(const Module<K>& M, Side side = Side::Left) {
  const auto& H = *M.H;
  const auto& s = side == Side::Left ? H.antipode() : H.antipode_inverse();
  Module<K> D{&H, M.dim, std::vector<std::vector<Matrix<K>>>(M.nlegs())};
  for (std::size_t l = 0; l < M.nlegs(); ++l) {
    for (std::size_t i = 0; i < H.dim(); ++i) D.legs[l].push_back(M.act(s * H.basis(i), l).transpose());
  }
  return D;
}

// d_X: X^v (x) X -> k
template <class K>
Matrix<K> evaluation(const Module<K>& X) {
  Matrix<K> d(1, X.dim * X.dim);
  for (std::size_t i = 0; i < X.dim; ++i) d(0, i * X.dim + i) = K(1);
  return d;
}
// b_X: k -> X (x) X^v
template <class K>
Matrix<K> coevaluation(const Module<K>& X) {
  return evaluation(X).transpose();
}
// d~_X: X (x) ^vX -> k and b~_X: k -> ^vX (x) X have the same matrices.
template <class K>
Matrix<K> evaluation_right(const Module<K>& X) {
  return evaluation(X);
}
template <class K>
Matrix<K> coevaluation_right(const Module<K>& X) {
  return coevaluation(X);
}

// Commutation test T rho_src(b) = rho_tgt(b) T for all legs and basis b.
template <class K>
bool is_intertwiner(const Module<K>& src, const Module<K>& tgt, const Matrix<K>& T) {
  if (T.rows() != tgt.dim || T.cols() != src.dim) return false;
  for (std::size_t l = 0; l < src.nlegs(); ++l) {
    for (std::size_t i = 0; i < src.H->dim(); ++i) {
      if (T * src.legs[l][i] != tgt.legs[l][i] * T) return false;
    }
  }
  return true;
}

// Swap map V (x) W -> W (x) V on coordinates.
template <class K>
Matrix<K> swap_matrix(std::size_t v, std::size_t w) {
  Matrix<K> P(v * w, v * w);
  for (std::size_t i = 0; i < v; ++i) {
    for (std::size_t j = 0; j < w; ++j) P(j * v + i, i * w + j) = K(1);
  }
  return P;
}

// Action of an element of H (x) H on M (x) N (single-leg modules).
template <class K>
Matrix<K> act2(const Module<K>& M, const Module<K>& N, const Vec<K>& r) {
  const std::size_t n = M.H->dim();
  Matrix<K> a(M.dim * N.dim, M.dim * N.dim);
  for (std::size_t I = 0; I < r.size(); ++I) {
    if (!r[I].is_zero()) a = a + r[I] * kron(M.legs[0][I / n], N.legs[0][I % n]);
  }
  return a;
}

// c_{M,N} = tau o (rho_M (x) rho_N)(R)
template <class K>
Matrix<K> braiding(const Module<K>& M, const Module<K>& N, const Vec<K>& R) {
  return swap_matrix<K>(M.dim, N.dim) * act2(M, N, R);
}

enum class TwistConvention { Nu, NuInverse };

inline const char* to_string(TwistConvention c) { return c == TwistConvention::Nu ? "nu" : "nu^-1"; }

template <class K>
Matrix<K> twist(const Module<K>& M, const RibbonData<K>& rd, TwistConvention c) {
  return M.act(c == TwistConvention::Nu ? rd.nu : rd.nu_inv);
}

// theta_{M(x)N} = c_{N,M} c_{M,N} (theta_M (x) theta_N)
template <class K>
bool balancing_holds(const Module<K>& M, const Module<K>& N, const RibbonData<K>& rd, TwistConvention c) {
  const auto lhs = twist(tensor(M, N), rd, c);
  const auto rhs = braiding(N, M, rd.R) * braiding(M, N, rd.R) * kron(twist(M, rd, c), twist(N, rd, c));
  return lhs == rhs;
}

// Tries theta = rho(nu) first, then rho(nu^{-1}), on the regular module.
template <class K>
std::optional<TwistConvention> select_twist_convention(const HopfAlgebra<K>& H, const RibbonData<K>& rd) {
  const auto reg = regular(H);
  for (auto c : {TwistConvention::Nu, TwistConvention::NuInverse}) {
    if (balancing_holds(reg, reg, rd, c)) return c;
  }
  return std::nullopt;
}

// Basis of Hom_H(M, N) as matrices (dimN x dimM), in the canonical order of
// the echelon nullspace.
template <class K>
std::vector<Matrix<K>> hom_space(const Module<K>& M, const Module<K>& N) {
  check_same_parent(M, N);
  const std::size_t m = M.dim, n = N.dim;
  const std::size_t nb = M.H->dim();
  // unknown T(r, c) at index r*m + c; constraint (T A - B T)(r, c') = 0
  Matrix<K> C(M.nlegs() * nb * n * m, n * m);
  std::size_t row = 0;
  for (std::size_t l = 0; l < M.nlegs(); ++l) {
    for (std::size_t b = 0; b < nb; ++b) {
      const auto& A = M.legs[l][b];
      const auto& B = N.legs[l][b];
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < m; ++c, ++row) {
          for (std::size_t k = 0; k < m; ++k) {
            if (!A(k, c).is_zero()) C(row, r * m + k) += A(k, c);
          }
          for (std::size_t k = 0; k < n; ++k) {
            if (!B(r, k).is_zero()) C(row, k * m + c) -= B(r, k);
          }
        }
      }
    }
  }
  std::vector<Matrix<K>> out;
  for (auto& v : nullspace(C)) out.emplace_back(n, m, std::move(v));
  return out;
}

// Internal hom in H-mod: linear maps M -> N (vectorized row-major,
// index r*dimM + c) with (h.phi) = sum rho_N(h(1)) phi rho_M(S h(2)).
template <class K>
struct InternalHom {
  Module<K> module;
  std::size_t src_dim = 0, tgt_dim = 0;
};

template <class K>
InternalHom<K> internal_hom(const Module<K>& M, const Module<K>& N) {
  check_same_parent(M, N);
  if (M.nlegs() != 1) throw std::invalid_argument("internal_hom: single-leg modules only");
  const auto& H = *M.H;
  const std::size_t n = H.dim();
  const std::size_t dm = M.dim, dn = N.dim;
  Module<K> I{&H, dm * dn, {{}}};
  for (std::size_t k = 0; k < n; ++k) {
    Matrix<K> a(dm * dn, dm * dn);
    for (const auto& [ij, c] : H.comult_terms(k)) {
      const auto& L = N.legs[0][ij / n];
      const auto Rm = M.act(H.S(H.basis(ij % n)));
      // vec(L phi Rm) = (L kron Rm^T) vec(phi) for row-major vec
      a = a + c * kron(L, Rm.transpose());
    }
    I.legs[0].push_back(std::move(a));
  }
  return {std::move(I), dm, dn};
}

// Currying Hom(X (x) M, N) -> Hom(X, Hom(M, N)).
template <class K>
Matrix<K> curry(const Matrix<K>& f, std::size_t dx, std::size_t dm, std::size_t dn) {
  Matrix<K> out(dn * dm, dx);
  for (std::size_t x = 0; x < dx; ++x) {
    for (std::size_t r = 0; r < dn; ++r) {
      for (std::size_t c = 0; c < dm; ++c) out(r * dm + c, x) = f(r, x * dm + c);
    }
  }
  return out;
}
template <class K>
Matrix<K> uncurry(const Matrix<K>& g, std::size_t dx, std::size_t dm, std::size_t dn) {
  Matrix<K> out(dn, dx * dm);
  for (std::size_t x = 0; x < dx; ++x) {
    for (std::size_t r = 0; r < dn; ++r) {
      for (std::size_t c = 0; c < dm; ++c) out(r, x * dm + c) = g(r * dm + c, x);
    }
  }
  return out;
}

// Composition Hom(N, L) (x) Hom(M, N) -> Hom(M, L) as a linear map.
template <class K>
Matrix<K> internal_composition(std::size_t dm, std::size_t dn, std::size_t dl) {
  Matrix<K> out(dl * dm, (dl * dn) * (dn * dm));
  for (std::size_t r = 0; r < dl; ++r) {
    for (std::size_t k = 0; k < dn; ++k) {
      for (std::size_t c = 0; c < dm; ++c) out(r * dm + c, (r * dn + k) * (dn * dm) + (k * dm + c)) = K(1);
    }
  }
  return out;
}

// Adjunction counit Hom(M, N) (x) M -> N, phi (x) m -> phi(m).
template <class K>
Matrix<K> internal_evaluation(std::size_t dm, std::size_t dn) {
  Matrix<K> out(dn, dn * dm * dm);
  for (std::size_t r = 0; r < dn; ++r) {
    for (std::size_t c = 0; c < dm; ++c) out(r, (r * dm + c) * dm + c) = K(1);
  }
  return out;
}

// Adjunction unit X -> Hom(M, X (x) M), x -> (m -> x (x) m).
template <class K>
Matrix<K> internal_unit(std::size_t dx, std::size_t dm) {
  const std::size_t dt = dx * dm;
  Matrix<K> out(dt * dm, dx);
  for (std::size_t x = 0; x < dx; ++x) {
    for (std::size_t c = 0; c < dm; ++c) out((x * dm + c) * dm + c, x) = K(1);
  }
  return out;
}

// Presentation of a projective module: ambient V (x) H^{(+)n} (x) W with
// an idempotent intertwiner e. Coordinates (v, slot, a, w) in that order.
template <class K>
struct ProjectivePresentation {
  Module<K> left;   // V, trivial by default
  std::size_t rank = 1;
  Module<K> right;  // W, trivial by default
  Matrix<K> e;

  const HopfAlgebra<K>& hopf() const { return *left.H; }
  std::size_t ambient_dim() const { return left.dim * rank * left.H->dim() * right.dim; }
};

template <class K>
Module<K> free_module(const HopfAlgebra<K>& H, std::size_t rank) {
  Module<K> F{&H, rank * H.dim(), {{}}};
  const auto I = Matrix<K>::identity(rank);
  for (std::size_t i = 0; i < H.dim(); ++i) F.legs[0].push_back(kron(I, H.left_mult_matrix(H.basis(i))));
  return F;
}

template <class K>
Module<K> ambient(const ProjectivePresentation<K>& p) {
  return tensor(tensor(p.left, free_module(p.hopf(), p.rank)), p.right);
}

template <class K>
ProjectivePresentation<K> free_presentation(const HopfAlgebra<K>& H, std::size_t rank, Matrix<K> e) {
  return {trivial(H), rank, trivial(H), std::move(e)};
}
template <class K>
ProjectivePresentation<K> free_presentation(const HopfAlgebra<K>& H, std::size_t rank) {
  return free_presentation(H, rank, Matrix<K>::identity(rank * H.dim()));
}

// Endomorphism of H^{(+)n} given by a matrix of right multiplications:
// slot j, element h  ->  sum_i (h a_{ij}) in slot i.
template <class K>
Matrix<K> right_mult_endo(const HopfAlgebra<K>& H, const std::vector<std::vector<Vec<K>>>& a) {
  const std::size_t n = a.size();
  const std::size_t d = H.dim();
  Matrix<K> f(n * d, n * d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto r = H.right_mult_matrix(a[i][j]);
      for (std::size_t x = 0; x < d; ++x) {
        for (std::size_t y = 0; y < d; ++y) f(i * d + x, j * d + y) = r(x, y);
      }
    }
  }
  return f;
}

template <class K>
bool is_idempotent(const Matrix<K>& e) {
  return e * e == e;
}

// X (x) P: merges X into the left auxiliary factor; the idempotent becomes
// id_X (x) e.
template <class K>
ProjectivePresentation<K> act_on(const Module<K>& X, const ProjectivePresentation<K>& p) {
  return {tensor(X, p.left), p.rank, p.right, kron(Matrix<K>::identity(X.dim), p.e)};
}
// P (x) X: merges X into the right auxiliary factor.
template <class K>
ProjectivePresentation<K> act_on_right(const ProjectivePresentation<K>& p, const Module<K>& X) {
  return {p.left, p.rank, tensor(p.right, X), kron(p.e, Matrix<K>::identity(X.dim))};
}

// Split data of the image of e: iota: image -> ambient, pi: ambient ->
// image with pi iota = id, plus the image module.
template <class K>
struct Split {
  Module<K> image;
  Matrix<K> iota, pi;
};

template <class K>
Split<K> realize_projective(const ProjectivePresentation<K>& p) {
  const auto A = ambient(p);
  if (!is_idempotent(p.e)) throw std::invalid_argument("presentation: e is not idempotent");
  if (!is_intertwiner(A, A, p.e)) throw std::invalid_argument("presentation: e is not an intertwiner");
  // columns of iota: echelon basis of the column space of e
  const auto E = rref(p.e.transpose());
  const std::size_t r = E.pivots.size();
  Matrix<K> iota(A.dim, r);
  for (std::size_t k = 0; k < r; ++k) {
    for (std::size_t i = 0; i < A.dim; ++i) iota(i, k) = E.rref(k, i);
  }
  // pi = (left inverse of iota on im e) o e: solve iota X = e
  auto X = solve_matrix(iota, p.e);
  if (!X) throw std::logic_error("realize_projective: image basis failure");
  Module<K> img{A.H, r, std::vector<std::vector<Matrix<K>>>(A.nlegs())};
  for (std::size_t l = 0; l < A.nlegs(); ++l) {
    for (const auto& a : A.legs[l]) img.legs[l].push_back(*X * a * iota);
  }
  return {std::move(img), std::move(iota), std::move(*X)};
}

}  // namespace skeintrace
