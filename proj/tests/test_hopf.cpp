#include "skeintrace/builtins.hpp"
#include "skeintrace/io.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace skeintrace;
using skeintrace::test_support::Gen;
using Q = Rational;

namespace {

// Products straight from the structure constants, independent of the
// library's tensor helpers.
template <class K>
Vec<K> omul(const HopfAlgebra<K>& H, const Vec<K>& a, const Vec<K>& b) {
  Vec<K> out(H.dim());
  for (std::size_t i = 0; i < H.dim(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < H.dim(); ++j) {
      if (b[j].is_zero()) continue;
      for (const auto& [k, c] : H.mult_terms(i, j)) out[k] += a[i] * b[j] * c;
    }
  }
  return out;
}

// (a (x) b)(c (x) d) on H (x) H, stored with index i*n + j
template <class K>
Vec<K> omul2(const HopfAlgebra<K>& H, const Vec<K>& x, const Vec<K>& y) {
  const std::size_t n = H.dim();
  Vec<K> out(n * n);
  for (std::size_t I = 0; I < n * n; ++I) {
    if (x[I].is_zero()) continue;
    for (std::size_t J = 0; J < n * n; ++J) {
      if (y[J].is_zero()) continue;
      for (const auto& [p, c] : H.mult_terms(I / n, J / n))
        for (const auto& [q, d] : H.mult_terms(I % n, J % n)) out[p * n + q] += x[I] * y[J] * c * d;
    }
  }
  return out;
}

template <class K>
Vec<K> ocop(const HopfAlgebra<K>& H, const Vec<K>& a) {
  Vec<K> out(H.dim() * H.dim());
  for (std::size_t k = 0; k < H.dim(); ++k) {
    if (a[k].is_zero()) continue;
    for (const auto& [ij, c] : H.comult_terms(k)) out[ij] += a[k] * c;
  }
  return out;
}

template <class K>
Vec<K> random_element(const HopfAlgebra<K>& H, Gen& g) {
  Vec<K> v(H.dim());
  for (auto& c : v) c = g.coin() ? K(g.rational(3)) : K(0);
  return v;
}

std::vector<std::string> ribbon_names() { return {"z2", "s3", "double_z2", "double_sweedler"}; }

}  // namespace

TEST(Builtins, SatisfyHopfAxioms) {
  for (const auto& name : builtin_names()) {
    const auto H = builtin<Q>(name);
    const auto r = verify_hopf_axioms(H);
    EXPECT_TRUE(r.all_pass()) << name;
  }
}

TEST(Builtins, DimensionsAndNames) {
  EXPECT_EQ(builtin<Q>("z2").dim(), 2u);
  EXPECT_EQ(builtin<Q>("s3").dim(), 6u);
  EXPECT_EQ(builtin<Q>("sweedler").dim(), 4u);
  EXPECT_EQ(builtin<Q>("double_z2").dim(), 4u);
  EXPECT_EQ(builtin<Q>("double_sweedler").dim(), 16u);
  EXPECT_EQ(builtin<Q>("s3").name(), "group_algebra(S3)");
  EXPECT_THROW(builtin<Q>("nope"), std::invalid_argument);
}

TEST(Builtins, BialgebraPropertiesOnRandomElements) {
  Gen g(31);
  for (const auto& name : builtin_names()) {
    const auto H = builtin<Q>(name);
    for (int i = 0; i < 30; ++i) {
      const auto a = random_element(H, g), b = random_element(H, g);
      EXPECT_EQ(ocop(H, omul(H, a, b)), omul2(H, ocop(H, a), ocop(H, b))) << name;
      EXPECT_EQ(H.S(omul(H, a, b)), omul(H, H.S(b), H.S(a))) << name;
      EXPECT_EQ(H.eps(omul(H, a, b)), H.eps(a) * H.eps(b)) << name;
      EXPECT_EQ(H.mul(a, b), omul(H, a, b)) << name;
      EXPECT_EQ(H.coproduct(a), ocop(H, a)) << name;
    }
  }
}

TEST(Builtins, BrokenStructureIsDetected) {
  // x^2 = 1 instead of 0 breaks Sweedler's algebra
  auto H = sweedler<Q>();
  H.add_mult(2, 2, 0, Q(1));
  EXPECT_FALSE(verify_hopf_axioms(H).all_pass());

  auto G = z2_group_algebra<Q>();
  Matrix<Q> S = Matrix<Q>::identity(2);
  S(1, 1) = Q(-1);
  G.set_antipode(S);
  const auto r = verify_hopf_axioms(G);
  ASSERT_NE(r.find("antipode"), nullptr);
  EXPECT_FALSE(r.find("antipode")->pass);
}

TEST(Integrals, DefiningPropertiesAndUnimodularity) {
  for (const auto& name : builtin_names()) {
    const auto H = builtin<Q>(name);
    const auto I = integrals(H);
    for (std::size_t h = 0; h < H.dim(); ++h) {
      const auto b = H.basis(h);
      Vec<Q> le = I.left, re = I.right;
      for (auto& c : le) c *= H.eps(b);
      for (auto& c : re) c *= H.eps(b);
      EXPECT_EQ(omul(H, b, I.left), le) << name;
      EXPECT_EQ(omul(H, I.right, b), re) << name;
    }
    EXPECT_FALSE(is_zero_vec(I.left));
    EXPECT_EQ(I.unimodular, name != "sweedler") << name;
  }
  const auto I = integrals(sweedler<Q>());
  EXPECT_NE(I.left, I.right);
}

TEST(Integrals, CointegralsAreDualIntegrals) {
  for (const auto& name : builtin_names()) {
    const auto H = builtin<Q>(name);
    const auto I = integrals(H);
    const std::size_t n = H.dim();
    for (std::size_t x = 0; x < n; ++x) {
      const auto d = ocop(H, H.basis(x));
      Vec<Q> l(n), r(n);  // (id (x) lambda_l) Delta(x) and (lambda_r (x) id) Delta(x)
      for (std::size_t I2 = 0; I2 < n * n; ++I2) {
        l[I2 / n] += d[I2] * I.left_co[I2 % n];
        r[I2 % n] += d[I2] * I.right_co[I2 / n];
      }
      Vec<Q> want_l = H.unit(), want_r = H.unit();
      for (auto& c : want_l) c *= I.left_co[x];
      for (auto& c : want_r) c *= I.right_co[x];
      EXPECT_EQ(l, want_l) << name << " " << x;
      EXPECT_EQ(r, want_r) << name << " " << x;
    }
  }
}

TEST(Double, StructureOfDoubles) {
  const auto D = builtin<Q>("double_z2");
  Gen g(32);
  for (int i = 0; i < 20; ++i) {
    const auto a = random_element(D, g), b = random_element(D, g);
    EXPECT_EQ(omul(D, a, b), omul(D, b, a));  // D(k[Z/2]) is commutative
  }
  for (const auto& name : {"double_z2", "double_sweedler"}) {
    const auto H = builtin<Q>(name);
    EXPECT_TRUE(verify_quasitriangular(H).all_pass()) << name;
  }
}

TEST(Ribbon, BalancingAndPivotalIdentities) {
  for (const auto& name : ribbon_names()) {
    const auto H = builtin<Q>(name);
    const auto rd = select_structure(H);
    const std::size_t n = H.dim();
    EXPECT_EQ(omul(H, rd.nu, rd.nu_inv), H.unit()) << name;
    EXPECT_EQ(omul(H, rd.g, rd.g_inv), H.unit()) << name;
    EXPECT_EQ(omul(H, rd.u, rd.nu_inv), rd.g) << name;
    // Delta(nu) R21 R = nu (x) nu
    Vec<Q> R21(n * n);
    for (std::size_t I = 0; I < n * n; ++I) R21[(I % n) * n + I / n] = rd.R[I];
    Vec<Q> nunu(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) nunu[i * n + j] = rd.nu[i] * rd.nu[j];
    EXPECT_EQ(omul2(H, ocop(H, rd.nu), omul2(H, R21, rd.R)), nunu) << name;
    for (std::size_t i = 0; i < n; ++i) {
      const auto b = H.basis(i);
      EXPECT_EQ(omul(H, rd.nu, b), omul(H, b, rd.nu)) << name;
      EXPECT_EQ(H.S(H.S(b)), omul(H, omul(H, rd.g, b), rd.g_inv)) << name;
    }
    Vec<Q> gg(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) gg[i * n + j] = rd.g[i] * rd.g[j];
    EXPECT_EQ(ocop(H, rd.g), gg) << name;
    EXPECT_EQ(rd.ribbon, name != std::string("double_sweedler")) << name;
    if (rd.ribbon) {
      EXPECT_EQ(H.S(rd.nu), rd.nu) << name;
    }
  }
}

TEST(Ribbon, DoubleSweedlerHasNoRibbonElement) {
  const auto H = builtin<Q>("double_sweedler");
  EXPECT_TRUE(derive_ribbon_elements(H, *H.rmatrix()).empty());
  const auto balanced = derive_balanced_elements(H, *H.rmatrix());
  ASSERT_FALSE(balanced.empty());
  for (const auto& b : balanced) EXPECT_NE(H.S(b.nu), b.nu);
}

TEST(Ribbon, CyclotomicBraidedGroupAlgebra) {
  const auto H = load_hopf<Cyclotomic>(parse_json(read_text_file(test_support::data_file("braided_z3.json"))));
  EXPECT_EQ(H.field_order(), 3);
  EXPECT_TRUE(verify_hopf_axioms(H).all_pass());
  EXPECT_TRUE(verify_quasitriangular(H).all_pass());
  const auto rd = select_structure(H);
  EXPECT_TRUE(rd.ribbon);
  // the braiding is not symmetric: R21 R != 1 (x) 1
  const std::size_t n = H.dim();
  Vec<Cyclotomic> R21(n * n), one(n * n);
  for (std::size_t I = 0; I < n * n; ++I) R21[(I % n) * n + I / n] = rd.R[I];
  one[0] = Cyclotomic(1);
  EXPECT_NE(omul2(H, R21, rd.R), one);
}
