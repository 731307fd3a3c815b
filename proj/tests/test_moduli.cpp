#include "skeintrace/builtins.hpp"
#include "skeintrace/coend.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <map>
#include <sstream>

using namespace skeintrace;
using Q = Rational;

namespace {

struct Case {
  std::string name;
  RibbonGraph G;
};

std::vector<Case> small_surfaces() {
  return {{"disk", surfaces::disk()},
          {"annulus", surfaces::annulus()},
          {"annulus_2v", surfaces::annulus_two_vertex()},
          {"torus", surfaces::torus()},
          {"torus_2v", surfaces::torus_two_vertex()}};
}

// Group law read off the structure constants of a group algebra.
struct Group {
  std::size_t n = 0;
  std::vector<std::size_t> mul;  // mul[a*n+b]
  std::vector<std::size_t> inv;
  std::vector<std::string> labels;
};

Group group_of(const HopfAlgebra<Q>& H) {
  Group G{H.dim(), {}, {}, H.labels()};
  for (std::size_t a = 0; a < G.n; ++a) {
    for (std::size_t b = 0; b < G.n; ++b) {
      const auto t = H.mult_terms(a, b);
      EXPECT_EQ(t.size(), 1u);
      G.mul.push_back(t.at(0).first);
    }
  }
  G.inv.resize(G.n);
  for (std::size_t a = 0; a < G.n; ++a)
    for (std::size_t b = 0; b < G.n; ++b)
      if (G.mul[a * G.n + b] == 0) G.inv[a] = b;
  return G;
}

std::vector<std::string> split_bar(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string p; std::getline(ss, p, '|');) out.push_back(p);
  return out;
}

// For a trivial R-matrix the algebra is functions on G^k: delta basis,
// pointwise product, lambda = 1 on every delta, and h acting by
// simultaneous conjugation.
void expect_function_algebra(const AlgebraObject<Q>& A, const Group& G, std::size_t k) {
  std::map<std::string, std::size_t> by_label;
  for (std::size_t x = 0; x < G.n; ++x) by_label["d" + G.labels[x]] = x;
  std::vector<std::vector<std::size_t>> pt(A.dim());
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < A.dim(); ++i) {
    for (const auto& part : split_bar(A.labels[i])) pt[i].push_back(by_label.at(part));
    ASSERT_EQ(pt[i].size(), k) << A.labels[i];
    index[pt[i]] = i;
  }
  ASSERT_EQ(index.size(), A.dim());
  for (std::size_t i = 0; i < A.dim(); ++i) {
    EXPECT_EQ(A.unit[i], Q(1));
    EXPECT_EQ((*A.lambda)[i], Q(1));
    for (std::size_t j = 0; j < A.dim(); ++j) {
      Vec<Q> want(A.dim());
      if (i == j) want[i] = Q(1);
      EXPECT_EQ(to_dense(A.product(i, j), A.dim()), want) << A.labels[i] << " * " << A.labels[j];
    }
  }
  for (std::size_t h = 0; h < G.n; ++h) {
    Matrix<Q> want(A.dim(), A.dim());
    for (std::size_t i = 0; i < A.dim(); ++i) {
      auto p = pt[i];
      for (auto& x : p) x = G.mul[G.mul[h * G.n + x] * G.n + G.inv[h]];
      want(index.at(p), i) = Q(1);
    }
    EXPECT_EQ(A.carrier.legs.at(0)[h], want) << G.labels[h];
  }
}

RibbonGraph rename(const RibbonGraph& G, const std::string& suffix) {
  RibbonGraph out;
  for (const auto& cyc : G.vertices) {
    out.vertices.emplace_back();
    for (const auto& s : cyc) out.vertices.back().push_back("x" + s + suffix);
  }
  for (const auto& [a, b] : G.pairs) out.pairs.emplace_back("x" + a + suffix, "x" + b + suffix);
  for (const auto& m : G.marked) out.marked.push_back("x" + m + suffix);
  return out;
}

}  // namespace

TEST(Graphs, Signatures) {
  EXPECT_EQ(graph_signature(surfaces::disk()), (Signature{0, 1, 1, 1}));
  EXPECT_EQ(graph_signature(surfaces::annulus()), (Signature{0, 2, 1, 1}));
  EXPECT_EQ(graph_signature(surfaces::annulus_two_vertex()), (Signature{0, 2, 1, 1}));
  EXPECT_EQ(graph_signature(surfaces::torus()), (Signature{1, 1, 1, 1}));
  EXPECT_EQ(graph_signature(surfaces::torus_two_vertex()), (Signature{1, 1, 1, 1}));
  const RibbonGraph pants{{{"a", "b", "c", "d", "m"}}, {{"a", "b"}, {"c", "d"}}, {"m"}};
  EXPECT_EQ(graph_signature(pants), (Signature{0, 3, 1, 1}));
  const RibbonGraph genus2{{{"a", "b", "a'", "b'", "c", "d", "c'", "d'", "m"}},
                           {{"a", "a'"}, {"b", "b'"}, {"c", "c'"}, {"d", "d'"}},
                           {"m"}};
  EXPECT_EQ(graph_signature(genus2), (Signature{2, 1, 1, 1}));
}

TEST(Graphs, MalformedGraphsAreRejected) {
  EXPECT_THROW(graph_signature(RibbonGraph{{{"a", "a", "m"}}, {}, {"m"}}), InvalidGraph);
  EXPECT_THROW(graph_signature(RibbonGraph{{{"a", "m"}}, {{"a", "z"}}, {"m"}}), InvalidGraph);
  EXPECT_THROW(graph_signature(RibbonGraph{{{"a", "m"}}, {}, {"m"}}), InvalidGraph);
  EXPECT_THROW(graph_signature(RibbonGraph{{{"a", "b"}}, {{"a", "b"}}, {}}), InvalidGraph);
  EXPECT_THROW(graph_signature(RibbonGraph{{{"m"}}, {}, {"m", "m"}}), InvalidGraph);
  EXPECT_THROW(graph_signature(RibbonGraph{}), InvalidGraph);
}

TEST(Dimension, ExpectedDimensionLaw) {
  EXPECT_EQ(expected_dimension(4, Signature{0, 1, 1, 1}), 1u);
  EXPECT_EQ(expected_dimension(4, Signature{0, 2, 1, 1}), 4u);
  EXPECT_EQ(expected_dimension(4, Signature{1, 1, 1, 1}), 16u);
  EXPECT_EQ(expected_dimension(3, Signature{2, 3, 1, 1}), 729u);
  EXPECT_FALSE(expected_dimension(4, Signature{0, 1, 2, 2}).has_value());
  EXPECT_FALSE(expected_dimension(4, Signature{0, 1, 1, 2}).has_value());
}

TEST(Dimension, ModuliAlgebrasHaveTheExpectedDimension) {
  for (const auto& name : {"z2", "s3", "double_z2"}) {
    const auto H = builtin<Q>(name);
    for (const auto& S : small_surfaces()) {
      const auto M = moduli_algebra(H, S.G);
      EXPECT_EQ(M.algebra.dim(), *expected_dimension(H.dim(), graph_signature(S.G))) << name << " " << S.name;
    }
  }
  const auto D = builtin<Q>("double_sweedler");
  EXPECT_EQ(moduli_algebra(D, surfaces::disk()).algebra.dim(), 1u);
  EXPECT_EQ(canonical_coend(D).algebra.dim(), 16u);
  EXPECT_EQ(moduli_algebra(D, surfaces::annulus_two_vertex()).algebra.dim(), 16u);
}

TEST(Dimension, HypothesesAreChecked) {
  EXPECT_THROW(canonical_coend(builtin<Q>("sweedler")), HypothesisViolation);
}

TEST(Frobenius, SymmetricFrobeniusOnSmallSurfaces) {
  for (const auto& name : {"z2", "s3", "double_z2", "double_sweedler"}) {
    const auto H = builtin<Q>(name);
    const auto rd = select_structure(H);
    for (const auto& S : small_surfaces()) {
      if (H.dim() > 6 && S.name.rfind("torus", 0) == 0) continue;
      const auto M = moduli_algebra(H, S.G);
      const auto r = verify_algebra(M.algebra, rd, 3);
      EXPECT_TRUE(r.report.all_pass()) << name << " " << S.name;
      EXPECT_EQ(r.gram_rank, M.algebra.dim()) << name << " " << S.name;
      EXPECT_FALSE(r.pivotal.empty()) << name << " " << S.name;
    }
  }
}

TEST(Frobenius, BrokenProductIsDetected) {
  const auto H = builtin<Q>("s3");
  auto A = canonical_coend(H).algebra;
  A.mult[1 * A.dim() + 1] = {{2, Q(1)}};
  EXPECT_FALSE(verify_algebra(A, select_structure(H), 3).report.all_pass());
}

TEST(GroupOracle, CoendIsFunctionsWithConjugation) {
  for (const auto& name : {"z2", "s3"}) {
    const auto H = builtin<Q>(name);
    const auto G = group_of(H);
    SCOPED_TRACE(name);
    expect_function_algebra(canonical_coend(H).algebra, G, 1);
  }
}

TEST(GroupOracle, TorusIsFunctionsOnPairs) {
  for (const auto& name : {"z2", "s3"}) {
    const auto H = builtin<Q>(name);
    SCOPED_TRACE(name);
    expect_function_algebra(moduli_algebra(H, surfaces::torus()).algebra, group_of(H), 2);
  }
}

TEST(GroupOracle, NonTrivialBraidingIsNotCommutative) {
  const auto H = builtin<Q>("double_sweedler");
  const auto A = canonical_coend(H).algebra;
  bool commutative = true;
  for (std::size_t i = 0; i < A.dim() && commutative; ++i)
    for (std::size_t j = 0; j < A.dim() && commutative; ++j)
      commutative = to_dense(A.product(i, j), A.dim()) == to_dense(A.product(j, i), A.dim());
  EXPECT_FALSE(commutative);
}

TEST(Relabel, SlotNamesDoNotMatter) {
  for (const auto& name : {"z2", "double_z2"}) {
    const auto H = builtin<Q>(name);
    for (const auto& S : small_surfaces()) {
      const auto a = moduli_algebra(H, S.G).algebra;
      const auto b = moduli_algebra(H, rename(S.G, "_r")).algebra;
      ASSERT_EQ(a.dim(), b.dim());
      EXPECT_EQ(a.mult, b.mult) << name << " " << S.name;
      EXPECT_EQ(a.unit, b.unit) << name << " " << S.name;
      EXPECT_EQ(*a.lambda, *b.lambda) << name << " " << S.name;
    }
  }
}

TEST(StructureSheaf, RightRegularModule) {
  const auto H = builtin<Q>("double_z2");
  const auto A = moduli_algebra(H, surfaces::torus()).algebra;
  const auto O = structure_sheaf(A);
  ASSERT_EQ(O.dim, A.dim());
  EXPECT_EQ(O.action.size(), A.dim());
  for (std::size_t i = 0; i < A.dim(); ++i) {
    for (std::size_t j = 0; j < A.dim(); ++j) {
      Matrix<Q> prod(A.dim(), A.dim());
      for (const auto& [k, c] : A.product(i, j)) prod = prod + c * O.action[k];
      EXPECT_EQ(O.action[j] * O.action[i], prod);
    }
  }
  EXPECT_EQ(O.action[0] * A.unit, A.basis(0));
}

TEST(Surgery, ContractEdgeAndMatchSplit) {
  const auto c = contract_edge(surfaces::torus_two_vertex(), 2);
  EXPECT_EQ(c.vertices.size(), 1u);
  EXPECT_EQ(graph_signature(c), graph_signature(surfaces::torus()));
  const auto m = match_split(surfaces::torus(), surfaces::torus_two_vertex());
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->pair, 2u);
  const auto back = contract_edge(m->split, m->pair);
  EXPECT_EQ(back.vertices, surfaces::torus().vertices);
  EXPECT_EQ(back.pairs, surfaces::torus().pairs);
  EXPECT_TRUE(match_split(surfaces::annulus(), surfaces::annulus_two_vertex()).has_value());
  EXPECT_FALSE(match_split(surfaces::torus(), surfaces::annulus_two_vertex()).has_value());

  EXPECT_THROW(contract_edge(surfaces::torus(), 0), InvalidGraph);              // loop
  EXPECT_THROW(contract_edge(surfaces::torus_two_vertex(), 0), InvalidGraph);   // a' is not listed first
  EXPECT_THROW(contract_edge(surfaces::torus_two_vertex(), 7), InvalidGraph);
  const RibbonGraph marked_both{{{"a", "m"}, {"b", "n"}}, {{"a", "b"}}, {"m", "n"}};
  EXPECT_THROW(contract_edge(marked_both, 0), InvalidGraph);
}

TEST(Surgery, ContractionMapIsAnAlgebraIsomorphism) {
  for (const auto& name : {"z2", "s3", "double_z2", "double_sweedler"}) {
    const auto H = builtin<Q>(name);
    const auto merged = canonical_coend(H);
    const auto match = match_split(surfaces::annulus(), surfaces::annulus_two_vertex());
    ASSERT_TRUE(match.has_value());
    const auto split = moduli_algebra(H, match->split);
    const auto Phi = contraction_map(*split.model, *merged.model, match->pair);
    const auto& A = merged.algebra;
    const auto& B = split.algebra;
    const std::size_t d = A.dim();
    ASSERT_EQ(B.dim(), d);
    EXPECT_TRUE(has_full_rank(Phi)) << name;
    EXPECT_EQ(Phi * A.unit, B.unit) << name;
    auto col = [&](std::size_t i) {
      Vec<Q> v(d);
      for (std::size_t r = 0; r < d; ++r) v[r] = Phi(r, i);
      return v;
    };
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        EXPECT_EQ(Phi * to_dense(A.product(i, j), d), B.mul(col(i), col(j))) << name;
      }
    }
  }
}
