#include "skeintrace/builtins.hpp"
#include "skeintrace/io.hpp"
#include "skeintrace/rep.hpp"
#include "skeintrace/suite.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace skeintrace;
using skeintrace::test_support::Gen;
using Q = Rational;

namespace {

template <class K>
Matrix<K> id(std::size_t n) {
  return Matrix<K>::identity(n);
}

// Small modules for each algebra: the regular module plus images of the
// grouplike idempotents.
template <class K>
std::vector<Module<K>> small_modules(const HopfAlgebra<K>& H) {
  std::vector<Module<K>> out{trivial(H)};
  if (H.dim() <= 6) out.push_back(regular(H));
  for (const auto& p : surface_presentations(H)) out.push_back(realize_projective(p).image);
  return out;
}

}  // namespace

TEST(Modules, RegularTrivialAndFileModules) {
  for (const auto& name : builtin_names()) {
    const auto H = builtin<Q>(name);
    EXPECT_TRUE(is_module(regular(H))) << name;
    EXPECT_TRUE(is_module(trivial(H))) << name;
    EXPECT_TRUE(is_module(free_module(H, 2))) << name;
  }
  const auto S3 = builtin<Q>("s3");
  const auto P = load_module(parse_json(read_text_file(test_support::data_file("s3_permutation.json"))), S3);
  EXPECT_EQ(P.dim, 3u);
  // permutation module = trivial + standard, so End has dimension
  // #orbits on pairs = 2 and Hom(trivial, P) is one-dimensional
  EXPECT_EQ(hom_space(P, P).size(), 2u);
  EXPECT_EQ(hom_space(trivial(S3), P).size(), 1u);
  EXPECT_EQ(hom_space(regular(S3), P).size(), 3u);
}

TEST(Modules, MakeModuleRejectsNonRepresentations) {
  const auto H = builtin<Q>("z2");
  EXPECT_THROW(make_module(H, {id<Q>(2), id<Q>(2) + id<Q>(2)}), std::invalid_argument);
  EXPECT_THROW(make_module(H, {id<Q>(1)}), std::invalid_argument);
  Matrix<Q> swap{{0, 1}, {1, 0}};
  EXPECT_NO_THROW(make_module(H, {id<Q>(2), swap}));
}

TEST(Modules, TensorAndDualAreModules) {
  for (const auto& name : builtin_names()) {
    const auto H = builtin<Q>(name);
    for (const auto& M : small_modules(H)) {
      if (M.dim > 8) continue;
      EXPECT_TRUE(is_module(tensor(M, M))) << name;
      EXPECT_TRUE(is_module(dual(M, Side::Left))) << name;
      EXPECT_TRUE(is_module(dual(M, Side::Right))) << name;
    }
  }
}

TEST(Rigidity, EvaluationsAreIntertwinersAndZigZag) {
  for (const auto& name : builtin_names()) {
    const auto H = builtin<Q>(name);
    for (const auto& X : small_modules(H)) {
      if (X.dim > 8) continue;
      const auto XvL = dual(X, Side::Left), XvR = dual(X, Side::Right);
      const auto one = trivial(H);
      EXPECT_TRUE(is_intertwiner(tensor(XvL, X), one, evaluation(X))) << name;
      EXPECT_TRUE(is_intertwiner(one, tensor(X, XvL), coevaluation(X))) << name;
      EXPECT_TRUE(is_intertwiner(tensor(X, XvR), one, evaluation_right(X))) << name;
      EXPECT_TRUE(is_intertwiner(one, tensor(XvR, X), coevaluation_right(X))) << name;
      // (id_X (x) d)(b (x) id_X) = id_X
      const std::size_t n = X.dim;
      EXPECT_EQ(kron(id<Q>(n), evaluation(X)) * kron(coevaluation(X), id<Q>(n)), id<Q>(n)) << name;
    }
  }
}

TEST(Braiding, NaturalHexagonAndBalancing) {
  for (const auto& name : {"z2", "s3", "double_z2", "double_sweedler"}) {
    const auto H = builtin<Q>(name);
    const auto rd = select_structure(H);
    const auto conv = select_twist_convention(H, rd);
    ASSERT_TRUE(conv.has_value()) << name;
    auto mods = small_modules(H);
    std::erase_if(mods, [](const Module<Q>& m) { return m.dim > 8; });
    for (const auto& M : mods) {
      for (const auto& N : mods) {
        const auto c = braiding(M, N, rd.R);
        EXPECT_TRUE(is_intertwiner(tensor(M, N), tensor(N, M), c)) << name;
        EXPECT_TRUE(balancing_holds(M, N, rd, *conv)) << name;
        EXPECT_TRUE(inverse(c).has_value());
        if (M.dim * N.dim > 16) continue;
        for (const auto& L : mods) {
          if (M.dim * N.dim * L.dim > 64) continue;
          // c_{M, N(x)L} = (id_N (x) c_{M,L})(c_{M,N} (x) id_L)
          const auto lhs = braiding(M, tensor(N, L), rd.R);
          const auto rhs = kron(id<Q>(N.dim), braiding(M, L, rd.R)) * kron(c, id<Q>(L.dim));
          EXPECT_EQ(lhs, rhs) << name;
        }
      }
    }
  }
}

TEST(Braiding, SymmetricOnlyForTrivialR) {
  const auto H = builtin<Q>("s3");
  const auto M = regular(H);
  const auto rd = select_structure(H);
  EXPECT_EQ(braiding(M, M, rd.R) * braiding(M, M, rd.R), id<Q>(M.dim * M.dim));
  const auto D = builtin<Q>("double_z2");
  const auto X = regular(D);
  const auto rdd = select_structure(D);
  EXPECT_NE(braiding(X, X, rdd.R) * braiding(X, X, rdd.R), id<Q>(X.dim * X.dim));
}

TEST(InternalHom, AdjunctionDimensionsAndCurrying) {
  Gen g(41);
  for (const auto& name : {"z2", "s3", "double_z2"}) {
    const auto H = builtin<Q>(name);
    auto mods = small_modules(H);
    for (const auto& X : mods) {
      for (const auto& M : mods) {
        for (const auto& N : mods) {
          if (X.dim * M.dim * N.dim > 48) continue;
          const auto I = internal_hom(M, N);
          EXPECT_TRUE(is_module(I.module));
          const auto lhs = hom_space(tensor(X, M), N);
          const auto rhs = hom_space(X, I.module);
          EXPECT_EQ(lhs.size(), rhs.size()) << name;
          for (const auto& f : lhs) {
            const auto c = curry(f, X.dim, M.dim, N.dim);
            EXPECT_TRUE(is_intertwiner(X, I.module, c)) << name;
            EXPECT_EQ(uncurry(c, X.dim, M.dim, N.dim), f);
          }
        }
      }
    }
  }
}

TEST(InternalHom, EvaluationAndUnitAreIntertwiners) {
  const auto H = builtin<Q>("double_z2");
  const auto M = regular(H), X = trivial(H);
  const auto I = internal_hom(M, M);
  EXPECT_TRUE(is_intertwiner(tensor(I.module, M), M, internal_evaluation<Q>(M.dim, M.dim)));
  const auto U = internal_hom(M, tensor(X, M));
  EXPECT_TRUE(is_intertwiner(X, U.module, internal_unit<Q>(X.dim, M.dim)));
}

TEST(Projectives, RealizedImagesSplitTheIdempotent) {
  for (const auto& name : builtin_names()) {
    const auto H = builtin<Q>(name);
    for (const auto& p : surface_presentations(H)) {
      const auto s = realize_projective(p);
      EXPECT_EQ(s.pi * s.iota, id<Q>(s.image.dim)) << name;
      EXPECT_EQ(s.iota * s.pi, p.e) << name;
      EXPECT_TRUE(is_intertwiner(s.image, ambient(p), s.iota)) << name;
      EXPECT_TRUE(is_module(s.image)) << name;
    }
    Matrix<Q> bad = id<Q>(H.dim());
    bad(0, 0) = Q(2);
    EXPECT_THROW(realize_projective(free_presentation(H, 1, bad)), std::invalid_argument) << name;
  }
}
