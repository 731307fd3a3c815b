#include "skeintrace/builtins.hpp"
#include "skeintrace/correlator.hpp"
#include "skeintrace/suite.hpp"

#include <gtest/gtest.h>

using namespace skeintrace;
using Q = Rational;

namespace {

const std::vector<std::string> kRibbon{"z2", "s3", "double_z2", "double_sweedler"};

struct Setup {
  HopfAlgebra<Q> H;
  RibbonData<Q> rd;
  TwistConvention conv;
  Vec<Q> mu;
};

Setup load(const std::string& name) {
  Setup s{builtin<Q>(name), {}, TwistConvention::Nu, {}};
  s.rd = select_structure(s.H);
  s.conv = *select_twist_convention(s.H, s.rd);
  s.mu = symmetrized_cointegral(s.H, integrals(s.H), s.rd).mu;
  return s;
}

}  // namespace

TEST(DiskRestriction, AgreesWithTheModifiedTrace) {
  for (const auto& name : kRibbon) {
    const auto s = load(name);
    const auto r = disk_restriction(s.H, s.mu, 5);
    EXPECT_TRUE(r.all_pass()) << name;
  }
}

TEST(SurfaceTrace, CyclicOnTheAnnulus) {
  for (const auto& name : {"z2", "double_z2"}) {
    const auto s = load(name);
    const auto M = canonical_coend(s.H);
    auto alg = std::make_shared<const SurfaceAlgebra<Q>>(M.algebra);
    const auto ps = surface_presentations(s.H);
    ASSERT_GE(ps.size(), 2u);
    std::mt19937_64 rng(61);
    for (std::size_t a = 0; a < ps.size(); ++a) {
      for (std::size_t b = 0; b < ps.size(); ++b) {
        const auto P = surface_projective(alg, ps[a]), R = surface_projective(alg, ps[b]);
        for (int i = 0; i < 3; ++i) {
          const auto f = random_surface_map(P, R, rng), g = random_surface_map(R, P, rng);
          EXPECT_EQ(surface_trace(P, s.mu, compose(P, R, P, g, f)), surface_trace(R, s.mu, compose(R, P, R, f, g)))
              << name;
        }
      }
    }
  }
}

TEST(Suite, AnnulusWithLocality) {
  for (const auto& name : kRibbon) {
    const auto s = load(name);
    SuiteOptions opt;
    opt.seed = 9;
    const auto r = invariance_suite(s.H, surfaces::annulus(), surfaces::annulus_two_vertex(), opt);
    EXPECT_TRUE(r.report.all_pass()) << name;
    EXPECT_NE(r.report.find("(L) local"), nullptr) << name;
    EXPECT_NE(r.report.find("(N) non-degenerate"), nullptr) << name;
    EXPECT_GE(r.closing_instances, 20u) << name;
    EXPECT_GT(r.twists_checked, 0u) << name;
  }
}

TEST(Suite, SmallTori) {
  for (const auto& name : {"z2", "double_z2"}) {
    const auto s = load(name);
    const auto r = invariance_suite(s.H, surfaces::torus(), surfaces::torus_two_vertex());
    EXPECT_TRUE(r.report.all_pass()) << name;
    EXPECT_EQ(r.signature, (Signature{1, 1, 1, 1}));
    EXPECT_GT(r.twists_checked, 0u) << name;
  }
}

TEST(Suite, RejectsBadInput) {
  const auto H = builtin<Q>("z2");
  EXPECT_THROW(invariance_suite(H, surfaces::torus(), surfaces::annulus_two_vertex()), InvalidGraph);
  const RibbonGraph other{{{"a", "b", "m"}, {"c", "d"}}, {{"a", "b"}, {"c", "d"}}, {"m"}};
  EXPECT_THROW(graph_signature(other), InvalidGraph);  // unmarked component
  EXPECT_THROW(invariance_suite(builtin<Q>("sweedler"), surfaces::annulus()), HypothesisViolation);
}

TEST(Twists, EnabledTwistsAreAutomorphisms) {
  for (const auto& name : {"z2", "double_z2", "double_sweedler"}) {
    const auto s = load(name);
    const auto F = canonical_coend(s.H);
    std::size_t enabled = 0;
    for (const auto& c : {Curve{CurveKind::BoundaryParallel, 0}, Curve{CurveKind::PairCore, 0}}) {
      for (const auto& t : dehn_twists(*F.model, F.algebra, s.rd, s.conv, c, 3)) {
        EXPECT_EQ(t.enabled, t.report.all_pass());
        EXPECT_TRUE(has_full_rank(t.map)) << name;
        enabled += t.enabled;
      }
    }
    EXPECT_GT(enabled, 0u) << name;
  }
  // trivial braiding and trivial twist: the boundary twist is the identity
  const auto s = load("s3");
  const auto F = canonical_coend(s.H);
  const auto t = dehn_twists(*F.model, F.algebra, s.rd, s.conv, Curve{CurveKind::BoundaryParallel, 0});
  ASSERT_EQ(t.size(), 1u);
  EXPECT_TRUE(t[0].identity);
  EXPECT_THROW(dehn_twists(*F.model, F.algebra, s.rd, s.conv, Curve{CurveKind::BoundaryParallel, 1}),
               std::invalid_argument);
}

// On the annulus the factor formula is not an algebra map for
// double_sweedler; the handle formula is, and is the identity there.
TEST(Twists, DoubleSweedlerAnnulusCore) {
  const auto s = load("double_sweedler");
  const auto F = canonical_coend(s.H);
  const auto t = dehn_twists(*F.model, F.algebra, s.rd, s.conv, Curve{CurveKind::PairCore, 0});
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0].formula, TwistFormula::Factor);
  EXPECT_FALSE(t[0].enabled);
  EXPECT_FALSE(t[0].identity);
  EXPECT_TRUE(t[1].enabled);
  EXPECT_TRUE(t[1].identity);
}

TEST(Correlator, DiskGivesTheUnitOfF) {
  for (const auto& name : kRibbon) {
    const auto s = load(name);
    const auto F = canonical_coend(s.H);
    const auto D = moduli_algebra(s.H, surfaces::disk());
    const auto C = annulus_correlator(D.algebra, s.rd.g);
    ASSERT_EQ(C.cols(), 1u);
    for (std::size_t k = 0; k < C.rows(); ++k) EXPECT_EQ(C(k, 0), F.algebra.unit[k]) << name;
  }
}

TEST(Correlator, AnnulusIsATwistInvariantIntertwiner) {
  for (const auto& name : kRibbon) {
    const auto s = load(name);
    const auto F = canonical_coend(s.H);
    const auto C = annulus_correlator(F.algebra, s.rd.g);
    const auto r = verify_correlator(F.algebra, C, F, s.rd, s.conv, 4);
    EXPECT_TRUE(r.report.all_pass()) << name;
    EXPECT_GT(r.twists_checked, 0u) << name;
  }
}

// For k[G] the correlator sends delta_x to the indicator of the
// centralizer of x: the only delta_y with delta_y delta_x != 0 is y = x,
// and h fixes it exactly when h commutes with x.
TEST(Correlator, GroupAlgebraOracle) {
  const auto s = load("s3");
  const auto& H = s.H;
  const auto F = canonical_coend(H);
  const auto C = annulus_correlator(F.algebra, s.rd.g);
  ASSERT_EQ(F.algebra.labels[1], "d" + H.labels()[1]);
  for (std::size_t h = 0; h < H.dim(); ++h) {
    for (std::size_t x = 0; x < H.dim(); ++x) {
      const bool commute = H.mult_terms(h, x) == H.mult_terms(x, h);
      EXPECT_EQ(C(h, x), Q(commute ? 1 : 0)) << H.labels()[h] << " " << H.labels()[x];
    }
  }
}

TEST(Correlator, RejectsSeveralMarkedIntervals) {
  const auto H = builtin<Q>("z2");
  const RibbonGraph two{{{"a", "b", "m", "n"}}, {{"a", "b"}}, {"m", "n"}};
  const auto M = moduli_algebra(H, two);
  EXPECT_THROW(annulus_correlator(M.algebra, select_structure(H).g), std::invalid_argument);
}
