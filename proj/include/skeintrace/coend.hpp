#pragma once

#include "skeintrace/moduli.hpp"
#include "skeintrace/rep.hpp"

#include <cstdint>
#include <memory>
#include <random>
#include <string>

namespace skeintrace {

template <class K>
struct Moduli {
  std::shared_ptr<const GluedModel<K>> model;
  AlgebraObject<K> algebra;
};

// Requires an R-matrix and a unimodular H; a ribbon element is not needed
// to build the algebra, only for traces and twists.
template <class K>
Moduli<K> moduli_algebra(const HopfAlgebra<K>& H, const RibbonGraph& G, GluingConventions conv = {},
                         const std::string& name = "a") {
  if (!H.rmatrix()) throw HypothesisViolation("no R-matrix");
  const auto I = integrals(H);
  if (!I.unimodular) throw HypothesisViolation("not unimodular");
  auto M = std::make_shared<const GluedModel<K>>(H, *H.rmatrix(), I.left, G, conv);
  return {M, M->materialize(name)};
}

// F = H* with the coadjoint action, from the one-vertex annulus.
template <class K>
Moduli<K> canonical_coend(const HopfAlgebra<K>& H, GluingConventions conv = {}) {
  return moduli_algebra(H, surfaces::annulus(), conv, "F");
}

// Expected dimension (dim H)^{2g+r-1} for a connected surface with one
// marked interval; nullopt otherwise.
inline std::optional<std::size_t> expected_dimension(std::size_t n, const Signature& s) {
  if (s.components != 1 || s.marked != 1) return std::nullopt;
  std::size_t d = 1;
  for (int i = 0; i < 2 * s.genus + s.boundaries - 1; ++i) d *= n;
  return d;
}

// x acting on every marked leg.
template <class K>
Matrix<K> act_all_legs(const AlgebraObject<K>& A, const Vec<K>& x) {
  auto m = Matrix<K>::identity(A.dim());
  for (std::size_t l = 0; l < A.carrier.legs.size(); ++l) m = A.carrier.act(x, l) * m;
  return m;
}

// Gram matrix of the Frobenius pairing, G(i, j) = lambda(b_i b_j).
template <class K>
Matrix<K> gram_matrix(const AlgebraObject<K>& A) {
  const std::size_t d = A.dim();
  Matrix<K> G(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      for (const auto& [k, v] : A.product(i, j)) G(i, j) += v * (*A.lambda)[k];
    }
  }
  return G;
}

struct AlgebraReport {
  Report report;
  std::string pivotal;  // "g", "g^-1", or empty when neither works
  std::size_t gram_rank = 0;
};

// Associativity is exhaustive up to dimension `full_limit`, sampled above.
template <class K>
AlgebraReport verify_algebra(const AlgebraObject<K>& A, const RibbonData<K>& rd, std::uint64_t seed = 1,
                             std::size_t full_limit = 36, std::size_t samples = 200) {
  AlgebraReport out;
  auto& rep = out.report;
  const auto& H = A.hopf();
  const std::size_t d = A.dim(), n = H.dim();
  std::mt19937_64 rng(seed);
  const bool full = d <= full_limit;
  auto triples = [&](auto&& f) {
    if (full) {
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          for (std::size_t k = 0; k < d; ++k)
            if (!f(i, j, k)) return false;
      return true;
    }
    for (std::size_t s = 0; s < samples; ++s) {
      if (!f(rng() % d, rng() % d, rng() % d)) return false;
    }
    return true;
  };
  std::string bad;
  auto b = [&](std::size_t i) { return A.basis(i); };
  auto bb = [&](std::size_t i, std::size_t j) { return to_dense(A.product(i, j), d); };
  rep.add("associative", triples([&](std::size_t i, std::size_t j, std::size_t k) {
            if (A.mul(bb(i, j), b(k)) == A.mul(b(i), bb(j, k))) return true;
            bad = A.labels[i] + ", " + A.labels[j] + ", " + A.labels[k];
            return false;
          }),
          bad);
  bad.clear();
  for (std::size_t i = 0; i < d && bad.empty(); ++i) {
    if (A.mul(A.unit, b(i)) != b(i) || A.mul(b(i), A.unit) != b(i)) bad = A.labels[i];
  }
  rep.add("unital", bad.empty(), bad);

  // h.(ab) = (h_(1).a)(h_(2).b) on each leg
  bad.clear();
  const std::size_t pair_samples = full ? d * d : samples;
  for (std::size_t l = 0; l < A.carrier.legs.size() && bad.empty(); ++l) {
    const auto& act = A.carrier.legs[l];
    for (std::size_t h = 0; h < n && bad.empty(); ++h) {
      for (std::size_t s = 0; s < pair_samples && bad.empty(); ++s) {
        const std::size_t i = full ? s / d : rng() % d, j = full ? s % d : rng() % d;
        Vec<K> rhs(d);
        for (const auto& [xy, c] : H.comult_terms(h)) {
          const auto p = A.mul(act[xy / n] * b(i), act[xy % n] * b(j));
          for (std::size_t t = 0; t < d; ++t) rhs[t] += c * p[t];
        }
        if (act[h] * bb(i, j) != rhs) bad = "leg " + std::to_string(l) + ", " + H.labels()[h] + " on " + A.labels[i] + " * " + A.labels[j];
      }
    }
  }
  rep.add("product is an intertwiner", bad.empty(), bad);
  bad.clear();
  for (std::size_t l = 0; l < A.carrier.legs.size() && bad.empty(); ++l) {
    for (std::size_t h = 0; h < n && bad.empty(); ++h) {
      Vec<K> e = A.unit;
      for (auto& c : e) c *= H.eps(H.basis(h));
      if (A.carrier.legs[l][h] * A.unit != e) bad = H.labels()[h];
    }
  }
  rep.add("unit is an intertwiner", bad.empty(), bad);
  if (!A.lambda) return out;

  bad.clear();
  for (std::size_t l = 0; l < A.carrier.legs.size() && bad.empty(); ++l) {
    for (std::size_t h = 0; h < n && bad.empty(); ++h) {
      const K e = H.eps(H.basis(h));
      for (std::size_t i = 0; i < d && bad.empty(); ++i) {
        Vec<K> col(d);
        for (std::size_t r = 0; r < d; ++r) col[r] = A.carrier.legs[l][h](r, i);
        if (A.form(col) != e * (*A.lambda)[i]) bad = H.labels()[h] + " on " + A.labels[i];
      }
    }
  }
  rep.add("form is an intertwiner", bad.empty(), bad);

  const auto gram = gram_matrix(A);
  out.gram_rank = rank(gram);
  rep.add("frobenius", out.gram_rank == d, "gram rank " + std::to_string(out.gram_rank) + " < " + std::to_string(d));

  // lambda(ab) = lambda(b (x.a)) with x = g or g^-1 on every leg
  for (const auto& [tag, x] : {std::pair<std::string, const Vec<K>*>{"g", &rd.g}, {"g^-1", &rd.g_inv}}) {
    if ((gram * act_all_legs(A, *x)).transpose() == gram) {
      out.pivotal = tag;
      break;
    }
  }
  rep.add("pivotally symmetric", !out.pivotal.empty(), "neither g nor g^-1");
  return out;
}

// A right module over an algebra, by the matrices of its basis elements.
template <class K>
struct RightModule {
  const AlgebraObject<K>* algebra = nullptr;
  std::size_t dim = 0;
  std::vector<Matrix<K>> action;  // action[i]: m -> m b_i
};

// The structure sheaf: the algebra as a free right module of rank one.
template <class K>
RightModule<K> structure_sheaf(const AlgebraObject<K>& A) {
  RightModule<K> O{&A, A.dim(), {}};
  for (std::size_t i = 0; i < A.dim(); ++i) O.action.push_back(A.right_mult_matrix(A.basis(i)));
  return O;
}

}  // namespace skeintrace
