#pragma once

#include "skeintrace/moduli.hpp"
#include "skeintrace/rep.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace skeintrace {

enum class CurveKind { PairCore, BoundaryParallel };

struct Curve {
  CurveKind kind = CurveKind::PairCore;
  std::size_t index = 0;  // pair index, or marked leg for a boundary-parallel curve
};

// Which formula realizes the twist. Factor: the twist element acting on one
// tensor factor (or on the marked leg for a boundary curve). Handle: the
// coproduct formula on pairs crossing the curve.
enum class TwistFormula { Factor, Handle };

inline const char* to_string(TwistFormula f) { return f == TwistFormula::Factor ? "factor" : "handle"; }

template <class K>
struct TwistResult {
  Curve curve;
  TwistFormula formula = TwistFormula::Handle;
  Matrix<K> map;         // in the algebra basis
  Report report;         // automorphism checks
  bool enabled = false;  // report passed
  bool identity = false;
};

template <class K>
Vec<K> twist_element(const RibbonData<K>& rd, TwistConvention c) {
  return c == TwistConvention::Nu ? rd.nu : rd.nu_inv;
}

// Unital algebra automorphism, H^{(x)n}-linear, preserving lambda. The
// product check is exhaustive up to dimension 36 and sampled above.
template <class K>
Report check_automorphism(const AlgebraObject<K>& A, const Matrix<K>& T, std::uint64_t seed = 1,
                          std::size_t samples = 64) {
  Report rep;
  const std::size_t d = A.dim();
  rep.add("unital", T * A.unit == A.unit, "T(1) != 1");
  std::vector<Vec<K>> img(d);
  for (std::size_t i = 0; i < d; ++i) {
    img[i] = Vec<K>(d);
    for (std::size_t r = 0; r < d; ++r) img[i][r] = T(r, i);
  }
  auto hom_at = [&](std::size_t i, std::size_t j) {
    return T * to_dense(A.product(i, j), d) == A.mul(img[i], img[j]);
  };
  std::string bad;
  if (d <= 36) {
    for (std::size_t i = 0; i < d && bad.empty(); ++i) {
      for (std::size_t j = 0; j < d && bad.empty(); ++j) {
        if (!hom_at(i, j)) bad = A.labels[i] + " * " + A.labels[j];
      }
    }
  } else {
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < samples && bad.empty(); ++s) {
      const std::size_t i = rng() % d, j = rng() % d;
      if (!hom_at(i, j)) bad = A.labels[i] + " * " + A.labels[j];
    }
  }
  rep.add("multiplicative", bad.empty(), bad);
  bad.clear();
  for (std::size_t l = 0; l < A.carrier.legs.size() && bad.empty(); ++l) {
    for (std::size_t h = 0; h < A.hopf().dim() && bad.empty(); ++h) {
      if (T * A.carrier.legs[l][h] != A.carrier.legs[l][h] * T) bad = "leg " + std::to_string(l) + ", " + A.hopf().labels()[h];
    }
  }
  rep.add("equivariant", bad.empty(), bad);
  if (A.lambda) {
    bad.clear();
    for (std::size_t i = 0; i < d && bad.empty(); ++i) {
      if (A.form(img[i]) != (*A.lambda)[i]) bad = A.labels[i];
    }
    rep.add("preserves lambda", bad.empty(), bad);
  }
  rep.add("invertible", rank(T) == d, "singular");
  return rep;
}

namespace detail {

template <class K>
SparseTerms<K> factor_embed(const GluedModel<K>& M, std::size_t pair, const Vec<K>& f) {
  // f on the factor of `pair`, the unit on all other factors
  SparseTerms<K> u{{0, K(1)}};
  const std::size_t n = M.hopf().dim();
  for (std::size_t p = 0; p < M.npairs(); ++p) {
    const Vec<K>& v = p == pair ? f : M.factor_unit();
    SparseTerms<K> next;
    for (const auto& [I, c] : u) {
      for (std::size_t k = 0; k < n; ++k) {
        if (!v[k].is_zero()) next.emplace_back(I + k * M.stride(p), c * v[k]);
      }
    }
    u = std::move(next);
  }
  std::sort(u.begin(), u.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return u;
}

template <class K>
void require_one_vertex(const GluedModel<K>& M) {
  if (M.has_invariants() || M.graph().vertices.size() != 1) {
    throw std::invalid_argument("twists are implemented on one-vertex models with a single marked slot");
  }
}

template <class K>
Matrix<K> carrier_matrix(const GluedModel<K>& M, const std::vector<SparseTerms<K>>& cols) {
  Matrix<K> T(M.dim(), M.dim());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (const auto& [i, c] : cols[j]) T(i, j) += c;
  }
  return T;
}

}  // namespace detail

// Twist element acting on the H*-leg of one pair: f -> f(- theta).
template <class K>
Matrix<K> factor_twist(const GluedModel<K>& M, std::size_t pair, const Vec<K>& theta) {
  detail::require_one_vertex(M);
  const std::size_t n = M.hopf().dim(), N = M.carrier_dim(), st = M.stride(pair);
  std::vector<SparseTerms<K>> cols(N);
  Accum<K> acc(N);
  for (std::size_t I = 0; I < N; ++I) {
    const std::size_t d = (I / st) % n, base = I - d * st;
    for (std::size_t h = 0; h < n; ++h) {
      if (theta[h].is_zero()) continue;
      for (const auto& [k, v] : M.factor_action(1, h).cols[d]) acc.add(base + k * st, theta[h] * v);
    }
    cols[I] = acc.take();
  }
  return detail::carrier_matrix(M, cols);
}

// Handle twist along the core of pair P. Pairs whose slots interleave with
// P's are moved: for g in the H* factor of such a pair q,
//   T(g) = sum g_(1)(- theta)|_P * g_(2)|_q   if P comes first in the cycle,
//   T(g) = sum g_(1)|_q * g_(2)(- theta)|_P   otherwise,
// every other factor is fixed, and T is extended multiplicatively along the
// product map F_0 (x) ... (x) F_{m-1} -> a.
template <class K>
Matrix<K> handle_twist(const GluedModel<K>& M, std::size_t P, const Vec<K>& theta) {
  detail::require_one_vertex(M);
  const auto& H = M.hopf();
  const auto& t = M.slots();
  const std::size_t n = H.dim(), N = M.carrier_dim(), m = M.npairs();
  if (P >= m) throw std::invalid_argument("no such pair");
  const auto& legs = M.vertex_legs()[0];
  std::vector<std::size_t> pos(t.names.size());
  for (std::size_t i = 0; i < legs.size(); ++i) pos[legs[i]] = i;
  auto ends = [&](std::size_t q) {
    const auto a = pos[t.index.at(M.graph().pairs[q].first)], b = pos[t.index.at(M.graph().pairs[q].second)];
    return std::pair{std::min(a, b), std::max(a, b)};
  };
  const auto [p0, p1] = ends(P);
  auto inside = [&](std::size_t x) { return p0 < x && x < p1; };

  // basis functionals moved onto P: x -> e^k(x theta)
  std::vector<Vec<K>> moved(n, Vec<K>(n));
  for (std::size_t s = 0; s < n; ++s) {
    const auto bt = H.mul(H.basis(s), theta);
    for (std::size_t k = 0; k < n; ++k) moved[k][s] = bt[k];
  }
  auto dual = [&](std::size_t i) {
    Vec<K> v(n);
    v[i] = K(1);
    return v;
  };

  // images of the generators, gen[q][j] = T(e^j on q)
  std::vector<std::vector<SparseTerms<K>>> gen(m, std::vector<SparseTerms<K>>(n));
  for (std::size_t q = 0; q < m; ++q) {
    const auto [q0, q1] = ends(q);
    const bool crosses = q != P && inside(q0) != inside(q1);
    for (std::size_t j = 0; j < n; ++j) {
      if (!crosses) {
        gen[q][j] = detail::factor_embed(M, q, dual(j));
        continue;
      }
      Accum<K> acc(N);
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          K c;
          for (const auto& [kk, v] : H.mult_terms(k, l)) {
            if (kk == j) c += v;
          }
          if (c.is_zero()) continue;
          const auto prod = p0 < q0 ? M.carrier_mul(detail::factor_embed(M, P, moved[k]), detail::factor_embed(M, q, dual(l)))
                                    : M.carrier_mul(detail::factor_embed(M, q, dual(k)), detail::factor_embed(M, P, moved[l]));
          acc.add(prod, c);
        }
      }
      gen[q][j] = acc.take();
    }
  }

  // product map on tuples of factor basis elements, and its image under T
  std::vector<std::size_t> digs(m);
  std::vector<SparseTerms<K>> prod(N), image(N);
  for (std::size_t I = 0; I < N; ++I) {
    for (std::size_t p = 0; p < m; ++p) digs[p] = (I / M.stride(p)) % n;
    SparseTerms<K> a = M.carrier_unit(), b = a;
    for (std::size_t p = 0; p < m; ++p) {
      a = M.carrier_mul(a, detail::factor_embed(M, p, dual(digs[p])));
      b = M.carrier_mul(b, gen[p][digs[p]]);
    }
    prod[I] = std::move(a);
    image[I] = std::move(b);
  }
  const auto Pm = detail::carrier_matrix(M, prod);
  const auto Im = detail::carrier_matrix(M, image);
  if (Pm == Matrix<K>::identity(N)) return Im;
  const auto inv = inverse(Pm);
  if (!inv) throw std::logic_error("product map of the factors is not invertible");
  return Im * *inv;
}

// All implemented twists for the curve, each with its automorphism report.
// A failing formula is reported and marked disabled.
template <class K>
std::vector<TwistResult<K>> dehn_twists(const GluedModel<K>& M, const AlgebraObject<K>& A, const RibbonData<K>& rd,
                                        TwistConvention conv, const Curve& curve, std::uint64_t seed = 1) {
  const auto theta = twist_element(rd, conv);
  std::vector<TwistResult<K>> out;
  auto push = [&](TwistFormula f, Matrix<K> T) {
    TwistResult<K> r;
    r.curve = curve;
    r.formula = f;
    r.report = check_automorphism(A, T, seed);
    r.enabled = r.report.all_pass();
    r.identity = T == Matrix<K>::identity(A.dim());
    r.map = std::move(T);
    out.push_back(std::move(r));
  };
  if (curve.kind == CurveKind::BoundaryParallel) {
    if (curve.index >= A.carrier.legs.size()) throw std::invalid_argument("no such marked leg");
    push(TwistFormula::Factor, A.carrier.act(theta, curve.index));
    return out;
  }
  push(TwistFormula::Factor, factor_twist(M, curve.index, theta));
  push(TwistFormula::Handle, handle_twist(M, curve.index, theta));
  return out;
}

}  // namespace skeintrace
