#pragma once

#include "skeintrace/trace.hpp"

#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace skeintrace {

// Linear map H^{(+)cols} -> H^{(+)rows} with entries acting by right
// multiplication: h in slot j -> sum_i h a[i][j] in slot i.
template <class K>
Matrix<K> right_mult_map(const HopfAlgebra<K>& H, const std::vector<std::vector<Vec<K>>>& a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  const std::size_t d = H.dim();
  Matrix<K> f(rows * d, cols * d);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (is_zero_vec(a[i][j])) continue;
      const auto r = H.right_mult_matrix(a[i][j]);
      for (std::size_t x = 0; x < d; ++x) {
        for (std::size_t y = 0; y < d; ++y) f(i * d + x, j * d + y) = r(x, y);
      }
    }
  }
  return f;
}

template <class K>
bool proportional(const std::vector<Vec<K>>& vs) {
  if (vs.size() <= 1) return true;
  Matrix<K> m(vs.size(), vs[0].size());
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = 0; j < vs[i].size(); ++j) m(i, j) = vs[i][j];
  }
  return rank(m) <= 1;
}

template <class K>
struct CointegralCandidates {
  std::vector<SymmetrizedCointegral<K>> all;      // the four candidates
  std::vector<SymmetrizedCointegral<K>> passing;  // cyclic and non-degenerate
};

template <class K>
CointegralCandidates<K> cointegral_candidates(const HopfAlgebra<K>& H, const IntegralData<K>& I, const RibbonData<K>& rd) {
  CointegralCandidates<K> out;
  const std::pair<const Vec<K>*, const char*> sides[] = {{&I.left_co, "lambda_l"}, {&I.right_co, "lambda_r"}};
  const std::pair<const Vec<K>*, const char*> pows[] = {{&rd.g, "g"}, {&rd.g_inv, "g^-1"}};
  for (const auto& [lam, ln] : sides) {
    for (const auto& [gp, gn] : pows) {
      SymmetrizedCointegral<K> c{precompose_left(H, *lam, *gp), std::string(ln) + "(" + gn + " x)"};
      out.all.push_back(c);
      if (is_cyclic(H, c.mu) && has_full_rank(gram(H, c.mu))) out.passing.push_back(c);
    }
  }
  return out;
}

// Left partial trace property on one instance: t_{X(x)P}(f) = t_P(p_X(f)).
template <class K>
bool left_partial_trace_instance(const ProjectivePresentation<K>& p, const Module<K>& X, const Vec<K>& mu,
                                 const RibbonData<K>& rd, std::mt19937_64& rng, std::string* witness = nullptr) {
  const auto xp = act_on(X, p);
  const auto fr = free_frame(xp);
  auto f = random_ambient_endo(xp, fr, rng);
  f = xp.e * f * xp.e;
  const K lhs = modified_trace(xp, fr, mu, f);
  const auto pf = partial_trace_left(X, p.ambient_dim(), f, rd.g_inv);
  if (p.e * pf * p.e != pf) {
    if (witness) *witness = "partial trace not compatible with e";
    return false;
  }
  const K rhs = modified_trace(p, mu, pf);
  if (lhs != rhs && witness) *witness = "t_{X.P}(f) = " + lhs.str() + " but t_P(p_X f) = " + rhs.str();
  return lhs == rhs;
}

template <class K>
bool right_partial_trace_instance(const ProjectivePresentation<K>& p, const Module<K>& X, const Vec<K>& mu,
                                  const RibbonData<K>& rd, std::mt19937_64& rng, std::string* witness = nullptr) {
  const auto px = act_on_right(p, X);
  const auto fr = free_frame(px);
  auto f = random_ambient_endo(px, fr, rng);
  f = px.e * f * px.e;
  const K lhs = modified_trace(px, fr, mu, f);
  const auto pf = partial_trace_right(X, p.ambient_dim(), f, rd.g);
  if (p.e * pf * p.e != pf) {
    if (witness) *witness = "partial trace not compatible with e";
    return false;
  }
  const K rhs = modified_trace(p, mu, pf);
  if (lhs != rhs && witness) *witness = "t_{P.X}(f) = " + lhs.str() + " but t_P(p_X f) = " + rhs.str();
  return lhs == rhs;
}

// Chooses the symmetrized cointegral: candidates that are cyclic and
// non-degenerate, narrowed by the left partial trace property if they
// disagree. Throws if nothing passes.
template <class K>
SymmetrizedCointegral<K> symmetrized_cointegral(const HopfAlgebra<K>& H, const IntegralData<K>& I,
                                                const RibbonData<K>& rd, std::uint64_t seed = 1) {
  auto cands = cointegral_candidates(H, I, rd);
  if (cands.passing.empty()) throw std::logic_error("no symmetrized cointegral candidate is cyclic and non-degenerate");
  std::vector<Vec<K>> mus;
  for (const auto& c : cands.passing) mus.push_back(c.mu);
  if (proportional(mus)) return cands.passing.front();
  const auto p = free_presentation(H, 1);
  const auto X = regular(H);
  for (const auto& c : cands.passing) {
    std::mt19937_64 rng(seed);
    bool ok = true;
    for (int i = 0; i < 3 && ok; ++i) ok = left_partial_trace_instance(p, X, c.mu, rd, rng);
    if (ok) return c;
  }
  throw std::logic_error("no symmetrized cointegral candidate has the partial trace property");
}

// -- sample presentations

template <class K>
std::vector<Vec<K>> order_two_grouplikes(const HopfAlgebra<K>& H) {
  std::vector<Vec<K>> out;
  for (const auto& l : grouplike_closure(H)) {
    if (!is_grouplike(H, l) || l == H.unit()) continue;
    if (H.mul(l, l) == H.unit()) out.push_back(l);
  }
  return out;
}

// Explicit presentations: free of rank 1 and 2, rank-2 with diag(1, 0),
// right multiplication by (1 +- l)/2 for order-two grouplikes l, and a
// unipotent conjugate of diag(1, (1 + l)/2).
template <class K>
std::vector<ProjectivePresentation<K>> sample_presentations(const HopfAlgebra<K>& H) {
  std::vector<ProjectivePresentation<K>> out;
  const std::size_t d = H.dim();
  const Vec<K> zero(d);
  out.push_back(free_presentation(H, 1));
  out.push_back(free_presentation(H, 2));
  out.push_back(free_presentation(H, 2, right_mult_map(H, {{H.unit(), zero}, {zero, zero}})));
  const K half = K(1) / K(2);
  for (const auto& l : order_two_grouplikes(H)) {
    for (int s : {1, -1}) {
      Vec<K> idem(d);
      for (std::size_t i = 0; i < d; ++i) idem[i] = half * (H.unit()[i] + K(s) * l[i]);
      out.push_back(free_presentation(H, 1, right_mult_map(H, {{idem}})));
    }
    Vec<K> idem(d), c(d);
    for (std::size_t i = 0; i < d; ++i) {
      idem[i] = half * (H.unit()[i] + l[i]);
      c[i] = K(3) * H.unit()[i];
    }
    const auto e = right_mult_map(H, {{H.unit(), zero}, {zero, idem}});
    Vec<K> mc(d);
    for (std::size_t i = 0; i < d; ++i) mc[i] = -c[i];
    const auto U = right_mult_map(H, {{H.unit(), c}, {zero, H.unit()}});
    const auto Ui = right_mult_map(H, {{H.unit(), mc}, {zero, H.unit()}});
    out.push_back(free_presentation(H, 2, U * e * Ui));
    break;
  }
  return out;
}

// Basis of e_Q Hom(free_P, free_Q) e_P as matrices.
template <class K>
std::vector<Matrix<K>> presentation_homs(const ProjectivePresentation<K>& P, const ProjectivePresentation<K>& Q) {
  const auto& H = P.hopf();
  const std::size_t d = H.dim();
  std::vector<Matrix<K>> spanning;
  for (std::size_t i = 0; i < Q.rank; ++i) {
    for (std::size_t j = 0; j < P.rank; ++j) {
      for (std::size_t k = 0; k < d; ++k) {
        std::vector<std::vector<Vec<K>>> a(Q.rank, std::vector<Vec<K>>(P.rank, Vec<K>(d)));
        a[i][j] = H.basis(k);
        spanning.push_back(Q.e * right_mult_map(H, a) * P.e);
      }
    }
  }
  const std::size_t rows = Q.ambient_dim(), cols = P.ambient_dim();
  Matrix<K> m(spanning.size(), rows * cols);
  for (std::size_t s = 0; s < spanning.size(); ++s) {
    for (std::size_t x = 0; x < rows * cols; ++x) m(s, x) = spanning[s].data()[x];
  }
  const auto E = rref(std::move(m));
  std::vector<Matrix<K>> out;
  for (std::size_t r = 0; r < E.pivots.size(); ++r) out.emplace_back(rows, cols, E.rref.row(r));
  return out;
}

template <class K>
Matrix<K> random_presentation_hom(const ProjectivePresentation<K>& P, const ProjectivePresentation<K>& Q,
                                  std::mt19937_64& rng) {
  const auto& H = P.hopf();
  std::uniform_int_distribution<int> coef(-3, 3);
  std::vector<std::vector<Vec<K>>> a(Q.rank, std::vector<Vec<K>>(P.rank, Vec<K>(H.dim())));
  for (auto& row : a) {
    for (auto& v : row) {
      for (auto& c : v) c = K(coef(rng));
    }
  }
  return Q.e * right_mult_map(H, a) * P.e;
}

struct TraceAxiomCounts {
  std::size_t cyclic_pairs = 0, gram_pairs = 0, left_instances = 0, right_instances = 0;
};

// The modified trace axiom suite. Counts are recorded so callers can
// assert the minimum numbers of instances.
template <class K>
Report verify_trace_axioms(const HopfAlgebra<K>& H, const RibbonData<K>& rd, const SymmetrizedCointegral<K>& mu,
                           std::uint64_t seed, TraceAxiomCounts* counts = nullptr, std::size_t cyclic_target = 50,
                           std::size_t partial_target = 20) {
  Report rep;
  TraceAxiomCounts cnt;
  std::mt19937_64 rng(seed);
  const auto pres = sample_presentations(H);
  std::vector<FreeFrame<K>> frames;
  for (const auto& p : pres) frames.push_back(free_frame(p));

  {  // cyclicity
    std::string w;
    for (std::size_t k = 0; k < cyclic_target; ++k) {
      const std::size_t a = k % pres.size(), b = (k / pres.size() + k) % pres.size();
      const auto f = random_presentation_hom(pres[a], pres[b], rng);
      const auto g = random_presentation_hom(pres[b], pres[a], rng);
      const K t1 = modified_trace(pres[a], frames[a], mu.mu, g * f);
      const K t2 = modified_trace(pres[b], frames[b], mu.mu, f * g);
      ++cnt.cyclic_pairs;
      if (t1 != t2 && w.empty()) w = "pair " + std::to_string(k) + ": " + t1.str() + " vs " + t2.str();
    }
    rep.add("cyclicity", w.empty(), w);
  }
  {  // non-degeneracy
    std::string w;
    for (std::size_t a = 0; a < pres.size(); ++a) {
      for (std::size_t b = a; b < pres.size() && b <= a + 1; ++b) {
        const auto fs = presentation_homs(pres[a], pres[b]);
        const auto gs = presentation_homs(pres[b], pres[a]);
        Matrix<K> G(fs.size(), gs.size());
        for (std::size_t s = 0; s < fs.size(); ++s) {
          for (std::size_t t = 0; t < gs.size(); ++t) G(s, t) = modified_trace(pres[a], frames[a], mu.mu, gs[t] * fs[s]);
        }
        ++cnt.gram_pairs;
        if ((fs.size() != gs.size() || !has_full_rank(G)) && w.empty()) {
          w = "presentations " + std::to_string(a) + ", " + std::to_string(b) + ": Gram " + std::to_string(fs.size()) +
              "x" + std::to_string(gs.size()) + " rank " + std::to_string(rank(G));
        }
      }
    }
    rep.add("non-degeneracy", w.empty(), w);
  }
  {  // partial traces
    std::vector<Module<K>> xs{trivial(H), regular(H)};
    std::string wl, wr;
    for (std::size_t k = 0; k < partial_target; ++k) {
      const auto& X = xs[k % xs.size()];
      const auto& p = pres[(k / xs.size()) % std::min<std::size_t>(pres.size(), 3)];
      std::string w;
      if (!left_partial_trace_instance(p, X, mu.mu, rd, rng, &w) && wl.empty()) wl = "instance " + std::to_string(k) + ": " + w;
      ++cnt.left_instances;
      if (!right_partial_trace_instance(p, X, mu.mu, rd, rng, &w) && wr.empty()) wr = "instance " + std::to_string(k) + ": " + w;
      ++cnt.right_instances;
    }
    rep.add("left partial trace", wl.empty(), wl);
    rep.add("right partial trace", wr.empty(), wr);
  }
  if (counts) *counts = cnt;
  return rep;
}

// Dimension of the space of covectors mu that are cyclic and satisfy the
// left partial trace property t_{X(x)H}(f) = t_H(p_X f) for X regular and
// sampled f. Each constraint is linear in mu.
template <class K>
std::size_t trace_uniqueness_dimension(const HopfAlgebra<K>& H, const RibbonData<K>& rd, std::uint64_t seed,
                                       std::size_t samples = 24) {
  const std::size_t d = H.dim();
  std::vector<Vec<K>> rows;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      auto r = H.mul(H.basis(i), H.basis(j));
      const auto s = H.mul(H.basis(j), H.basis(i));
      for (std::size_t k = 0; k < d; ++k) r[k] -= s[k];
      if (!is_zero_vec(r)) rows.push_back(std::move(r));
    }
  }
  const auto p = free_presentation(H, 1);
  const auto X = regular(H);
  const auto xp = act_on(X, p);
  const auto fr = free_frame(xp);
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const auto f = random_ambient_endo(xp, fr, rng, 10);
    // sum_c mu(a_cc) - mu(y) where p_X(f) = right multiplication by y
    Vec<K> r(d);
    for (std::size_t c = 0; c < fr.copies(); ++c) {
      const auto comp = frame_component(fr, f * frame_column(fr, c, H.unit()), c);
      for (std::size_t k = 0; k < d; ++k) r[k] += comp[k];
    }
    const auto pf = partial_trace_left(X, d, f, rd.g_inv);
    const auto y = pf * H.unit();
    for (std::size_t k = 0; k < d; ++k) r[k] -= y[k];
    if (!is_zero_vec(r)) rows.push_back(std::move(r));
  }
  Matrix<K> C(rows.size(), d);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t k = 0; k < d; ++k) C(i, k) = rows[i][k];
  }
  return d - rank(C);
}

}  // namespace skeintrace
