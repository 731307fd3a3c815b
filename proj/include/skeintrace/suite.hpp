#pragma once

#include "skeintrace/coend.hpp"
#include "skeintrace/surface.hpp"
#include "skeintrace/trace_axioms.hpp"
#include "skeintrace/twist.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace skeintrace {

// Idempotents prod_i (1 +- l_i)/2 over a maximal set of commuting
// order-two grouplikes, one per sign pattern; just 1 if there are none.
template <class K>
std::vector<Vec<K>> grouplike_idempotents(const HopfAlgebra<K>& H) {
  const K half = K(1) / K(2);
  auto halfsum = [&](const Vec<K>& l, int s) {
    Vec<K> v(H.dim());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = half * (H.unit()[i] + K(s) * l[i]);
    return v;
  };
  std::vector<Vec<K>> gens;
  Vec<K> eps = H.unit();
  for (const auto& l : order_two_grouplikes(H)) {
    bool commutes = true;
    for (const auto& g : gens) commutes = commutes && H.mul(g, l) == H.mul(l, g);
    if (!commutes) continue;
    auto cand = H.mul(eps, halfsum(l, 1));
    if (cand == eps) continue;
    gens.push_back(l);
    eps = std::move(cand);
  }
  std::vector<Vec<K>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << gens.size()); ++mask) {
    Vec<K> e = H.unit();
    for (std::size_t i = 0; i < gens.size(); ++i) e = H.mul(e, halfsum(gens[i], (mask >> i) & 1 ? -1 : 1));
    out.push_back(std::move(e));
  }
  return out;
}

// The presentations H e for the first two grouplike idempotents (or H
// itself): small enough for hom bases over the torus.
template <class K>
std::vector<ProjectivePresentation<K>> surface_presentations(const HopfAlgebra<K>& H) {
  std::vector<ProjectivePresentation<K>> out;
  const auto idem = grouplike_idempotents(H);
  for (std::size_t i = 0; i < idem.size() && i < 2; ++i) {
    out.push_back(free_presentation(H, 1, right_mult_map(H, {{idem[i]}})));
  }
  return out;
}

struct SuiteOptions {
  std::uint64_t seed = 1;
  std::size_t closing_instances = 20;
  std::size_t trace_samples = 6;      // random maps per comparison in (L) and (M)
  std::size_t lazy_dim = 64;          // above this the comparison model is not materialized
  std::size_t product_samples = 64;   // sampled products for lazy comparison maps
};

struct TraceReport {
  Signature signature;
  Report report;
  std::vector<std::string> notes;
  std::vector<std::string> gram;  // "PxQ: rank r of n"
  std::size_t closing_instances = 0;
  std::size_t trace_comparisons = 0;
  std::size_t twists_checked = 0;
  std::size_t nonidentity_twists = 0;
};

// tr^disk against the modified trace on the sampled presentations: the
// disk algebra is k, so maps of X (x) k are ambient endomorphisms of X.
template <class K>
Report disk_restriction(const HopfAlgebra<K>& H, const Vec<K>& mu, std::uint64_t seed, std::size_t samples = 12) {
  Report rep;
  auto M = moduli_algebra(H, surfaces::disk());
  auto alg = std::make_shared<const SurfaceAlgebra<K>>(M.algebra);
  const auto pres = sample_presentations(H);
  std::mt19937_64 rng(seed);
  std::string bad;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto& X = pres[s % pres.size()];
    const auto P = surface_projective(alg, X);
    const auto F = random_presentation_hom(X, X, rng);
    SurfaceMap<K> f;
    for (const auto& g : P.gens) f.gens.push_back(to_sparse(F * to_dense(g, X.ambient_dim())));
    const K a = surface_trace(P, mu, f), b = modified_trace(X, mu, F);
    if (a != b && bad.empty()) bad = "instance " + std::to_string(s) + ": " + a.str() + " vs " + b.str();
  }
  rep.add("disk restriction", bad.empty(), bad);
  return rep;
}

// The trace suite on the model of G: (N) Gram ranks, cyclicity, (P)
// closing operators, (M) Dehn twists on one-vertex models, and (L)
// against `alt` when given. Twists and (L) use the one-vertex model of
// the two; `alt` must split one vertex of G (or the other way round).
template <class K>
TraceReport invariance_suite(const HopfAlgebra<K>& H, const RibbonGraph& G,
                             const std::optional<RibbonGraph>& alt = std::nullopt, SuiteOptions opt = {}) {
  TraceReport out;
  const auto sig = graph_signature(G);
  out.signature = sig;
  std::optional<SplitMatch> match;
  RibbonGraph primary = G;
  if (alt) {
    const auto sig2 = graph_signature(*alt);
    if (!(sig2 == sig)) throw InvalidGraph("signature mismatch: " + to_string(sig) + " vs " + to_string(sig2));
    if (alt->vertices.size() == G.vertices.size() + 1) {
      match = match_split(G, *alt);
    } else if (G.vertices.size() == alt->vertices.size() + 1) {
      match = match_split(*alt, G);
      primary = *alt;
    }
    if (!match) throw InvalidGraph("the two models are not related by splitting one vertex");
  }
  const auto I = integrals(H);
  if (!I.unimodular) throw HypothesisViolation("not unimodular");
  const auto rd = select_structure(H);
  const auto conv = select_twist_convention(H, rd);
  if (!conv) throw HypothesisViolation("no twist convention satisfies the balancing identity");
  const auto mu = symmetrized_cointegral(H, I, rd).mu;
  const auto M = moduli_algebra(H, primary);
  auto alg = std::make_shared<const SurfaceAlgebra<K>>(M.algebra);
  const auto pres = surface_presentations(H);
  std::vector<SurfaceProjective<K>> ps;
  for (const auto& p : pres) ps.push_back(surface_projective(alg, p));
  std::mt19937_64 rng(opt.seed);
  auto& rep = out.report;

  {  // (N)
    std::string bad;
    for (std::size_t a = 0; a < ps.size(); ++a) {
      for (std::size_t b = a; b < ps.size(); ++b) {
        const auto fs = hom_basis(ps[a], ps[b]);
        const auto gs = a == b ? fs : hom_basis(ps[b], ps[a]);
        const auto Gm = trace_pairing(ps[a], ps[b], mu, fs, gs);
        const auto r = rank(Gm);
        out.gram.push_back("P" + std::to_string(a) + "xP" + std::to_string(b) + ": rank " + std::to_string(r) +
                           " of " + std::to_string(fs.size()) + "x" + std::to_string(gs.size()));
        if ((fs.size() != gs.size() || r != fs.size()) && bad.empty()) bad = out.gram.back();
      }
    }
    rep.add("(N) non-degenerate", bad.empty(), bad);
  }
  {  // cyclicity
    std::string bad;
    for (std::size_t s = 0; s < 4; ++s) {
      const auto& P = ps[s % ps.size()];
      const auto& Q = ps[(s / 2) % ps.size()];
      const auto f = random_surface_map(P, Q, rng, 6);
      const auto g = random_surface_map(Q, P, rng, 6);
      const K t1 = surface_trace(P, mu, compose(P, Q, P, g, f));
      const K t2 = surface_trace(Q, mu, compose(Q, P, Q, f, g));
      if (t1 != t2 && bad.empty()) bad = "sample " + std::to_string(s) + ": " + t1.str() + " vs " + t2.str();
    }
    rep.add("cyclicity", bad.empty(), bad);
  }
  {  // (P)
    const std::vector<Module<K>> xs{regular(H), trivial(H)};
    std::string bad;
    for (std::size_t s = 0; s < opt.closing_instances; ++s) {
      const auto& X = xs[s % xs.size()];
      const auto& P = ps[(s / xs.size()) % ps.size()];
      const auto XP = surface_act_on(X, P);
      const auto f = random_surface_map(XP, XP, rng, 6);
      const auto cl = closing_operator(X, P, XP, f, rd.g_inv);
      ++out.closing_instances;
      if (!is_compatible(P, P, cl)) {
        if (bad.empty()) bad = "instance " + std::to_string(s) + ": closed map not compatible";
        continue;
      }
      const K a = surface_trace(XP, mu, f), b = surface_trace(P, mu, cl);
      if (a != b && bad.empty()) bad = "instance " + std::to_string(s) + ": " + a.str() + " vs " + b.str();
    }
    rep.add("(P) closing operator", bad.empty(), bad);
  }

  // random maps of the first projective, reused by (M) and (L)
  std::vector<SurfaceMap<K>> fs;
  for (std::size_t s = 0; s < opt.trace_samples; ++s) fs.push_back(random_surface_map(ps[0], ps[0], rng, 6));

  {  // (M)
    const auto& model = *M.model;
    if (model.graph().vertices.size() != 1 || model.has_invariants()) {
      out.notes.push_back("twists need a one-vertex model; (M) not run");
    } else {
      std::vector<Curve> curves;
      for (std::size_t l = 0; l < M.algebra.carrier.legs.size(); ++l) curves.push_back({CurveKind::BoundaryParallel, l});
      for (std::size_t p = 0; p < model.npairs(); ++p) curves.push_back({CurveKind::PairCore, p});
      std::string bad;
      for (const auto& c : curves) {
        for (const auto& t : dehn_twists(model, M.algebra, rd, *conv, c, opt.seed)) {
          const std::string tag = std::string(c.kind == CurveKind::PairCore ? "pair " : "boundary ") +
                                  std::to_string(c.index) + " " + to_string(t.formula);
          if (!t.enabled) {
            out.notes.push_back(tag + " twist disabled (not an automorphism)");
            continue;
          }
          ++out.twists_checked;
          if (!t.identity) ++out.nonidentity_twists;
          for (std::size_t s = 0; s < fs.size() && bad.empty(); ++s) {
            const auto tf = transport(ps[0], ps[0], t.map, fs[s]);
            if (surface_trace(ps[0], mu, tf) != surface_trace(ps[0], mu, fs[s])) bad = tag + ", sample " + std::to_string(s);
          }
        }
      }
      rep.add("(M) twist invariant", bad.empty(), bad);
    }
  }

  if (match) {  // (L)
    const auto split = std::make_shared<const GluedModel<K>>(H, *H.rmatrix(), I.left, match->split);
    const bool full = split->dim() <= opt.lazy_dim;
    const auto A2 = split->materialize("a'", full);
    const auto Phi = contraction_map(*split, *M.model, match->pair);
    const auto& A = M.algebra;
    const std::size_t d = A.dim();
    std::string bad;
    auto fail = [&](const std::string& w) {
      if (bad.empty()) bad = w;
    };
    if (A2.dim() != d || !has_full_rank(Phi)) fail("comparison map not invertible");
    if (bad.empty()) {
      if (Phi * A.unit != A2.unit) fail("unit not preserved");
      for (std::size_t i = 0; i < d && bad.empty(); ++i) {
        K s;
        for (std::size_t r = 0; r < d; ++r) s += (*A2.lambda)[r] * Phi(r, i);
        if (s != (*A.lambda)[i]) fail("form not preserved at " + A.labels[i]);
      }
      for (std::size_t h = 0; h < H.dim() && bad.empty(); ++h) {
        if (Phi * A.carrier.legs[0][h] != A2.carrier.legs[0][h] * Phi) fail("not equivariant at " + H.labels()[h]);
      }
      auto col = [&](std::size_t i) {
        Vec<K> v(d);
        for (std::size_t r = 0; r < d; ++r) v[r] = Phi(r, i);
        return v;
      };
      auto hom_at = [&](std::size_t i, std::size_t j) {
        const auto lhs = Phi * to_dense(A.product(i, j), d);
        if (full) return lhs == A2.mul(col(i), col(j));
        return lhs == split->coordinates(split->carrier_mul(split->embed(col(i)), split->embed(col(j))));
      };
      if (full && d <= 36) {
        for (std::size_t i = 0; i < d && bad.empty(); ++i) {
          for (std::size_t j = 0; j < d && bad.empty(); ++j) {
            if (!hom_at(i, j)) fail("not multiplicative at " + A.labels[i] + " * " + A.labels[j]);
          }
        }
      } else {
        std::mt19937_64 prng(opt.seed ^ 0x5bd1e995ULL);
        for (std::size_t s = 0; s < opt.product_samples && bad.empty(); ++s) {
          const std::size_t i = prng() % d, j = prng() % d;
          if (!hom_at(i, j)) fail("not multiplicative at " + A.labels[i] + " * " + A.labels[j]);
        }
        out.notes.push_back("(L) products of the comparison map sampled (" + std::to_string(opt.product_samples) + ")");
      }
    }
    if (bad.empty()) {
      auto alg2 = std::make_shared<const SurfaceAlgebra<K>>(A2);
      const auto P2 = surface_projective(alg2, pres[0]);
      for (std::size_t s = 0; s < fs.size() && bad.empty(); ++s) {
        const auto f2 = transport(ps[0], P2, Phi, fs[s]);
        ++out.trace_comparisons;
        const K a = surface_trace(ps[0], mu, fs[s]), b = surface_trace(P2, mu, f2);
        if (a != b) fail("sample " + std::to_string(s) + ": " + a.str() + " vs " + b.str());
      }
    }
    rep.add("(L) local", bad.empty(), bad);
  }

  if (sig.genus == 0 && sig.boundaries == 1) {
    for (const auto& c : disk_restriction(H, mu, opt.seed).checks) rep.add(c.name, c.pass, c.witness);
  }
  return out;
}

}  // namespace skeintrace
