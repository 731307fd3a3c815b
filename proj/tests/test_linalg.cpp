#include "skeintrace/cyclotomic.hpp"
#include "skeintrace/matrix.hpp"
#include "skeintrace/rational.hpp"
#include "skeintrace/sparse.hpp"
#include "support.hpp"

#include <gmpxx.h>
#include <gtest/gtest.h>

#include <cmath>
#include <complex>

using namespace skeintrace;
using skeintrace::test_support::Gen;

namespace {

mpq_class mpq(const Rational& r) { return r.to_mpq(); }

// rank by plain mpq elimination
std::size_t oracle_rank(const Matrix<Rational>& m) {
  std::vector<std::vector<mpq_class>> a(m.rows(), std::vector<mpq_class>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = mpq(m(i, j));
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && a[p][c] == 0) ++p;
    if (p == m.rows()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const mpq_class f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < m.cols(); ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

std::complex<double> evaluate(const Cyclotomic& x) {
  const double pi = std::acos(-1.0);
  const std::complex<double> z = std::polar(1.0, 2 * pi / x.order());
  std::complex<double> s = 0, p = 1;
  for (const auto& c : x.coeffs()) {
    s += mpq(c).get_d() * p;
    p *= z;
  }
  return s;
}

}  // namespace

TEST(Rational, ArithmeticAgreesWithGmp) {
  Gen g(11);
  for (int i = 0; i < 2000; ++i) {
    const Rational a = i % 2 ? g.wide() : g.rational(1000), b = i % 3 ? g.wide() : g.rational(1000);
    EXPECT_EQ(mpq(a + b), mpq(a) + mpq(b));
    EXPECT_EQ(mpq(a - b), mpq(a) - mpq(b));
    EXPECT_EQ(mpq(a * b), mpq(a) * mpq(b));
    if (!b.is_zero()) {
      EXPECT_EQ(mpq(a / b), mpq(a) / mpq(b));
    }
    EXPECT_EQ(a < b, mpq(a) < mpq(b));
  }
}

TEST(Rational, NormalFormAndParse) {
  EXPECT_EQ(Rational(6, -4).str(), "-3/2");
  EXPECT_EQ(Rational::parse("-3/2"), Rational(-3, 2));
  EXPECT_EQ(Rational::parse("4/2").str(), "2");
  EXPECT_TRUE(Rational(0, 5).is_zero());
  Gen g(12);
  for (int i = 0; i < 500; ++i) {
    const Rational a = g.coin() ? g.wide() * g.wide() : g.rational(50);
    EXPECT_EQ(Rational::parse(a.str()), a);
  }
  EXPECT_THROW(Rational(1, 0), DivisionByZero);
  EXPECT_THROW(Rational(3).inverse() * Rational(0).inverse(), DivisionByZero);
}

TEST(Rational, SmallResultsLeaveTheBignumPath) {
  const Rational big = Rational(std::int64_t{1} << 62) * Rational(8);
  EXPECT_FALSE(big.is_small());
  EXPECT_TRUE((big / big).is_small());
  EXPECT_EQ(big / big, Rational(1));
}

TEST(Cyclotomic, RootsOfUnity) {
  for (int m : {1, 2, 3, 4, 5, 6, 8, 12}) {
    const Cyclotomic z = Cyclotomic::root_of_unity(m);
    Cyclotomic p(1), sum(0);
    for (int k = 0; k < m; ++k) {
      sum += p;
      p *= z;
    }
    EXPECT_EQ(p, Cyclotomic(1)) << m;
    if (m > 1) {
      EXPECT_TRUE(sum.is_zero()) << m;
    }
  }
  const auto w = Cyclotomic::root_of_unity(3);
  EXPECT_TRUE((w * w + w + Cyclotomic(1)).is_zero());
}

TEST(Cyclotomic, FieldOperationsAgreeWithComplexEvaluation) {
  Gen g(13);
  for (int m : {3, 4, 5, 8, 12}) {
    for (int i = 0; i < 100; ++i) {
      const auto a = g.cyclotomic(m), b = g.cyclotomic(m);
      EXPECT_LT(std::abs(evaluate(a * b) - evaluate(a) * evaluate(b)), 1e-6);
      EXPECT_LT(std::abs(evaluate(a + b) - evaluate(a) - evaluate(b)), 1e-9);
      if (!a.is_zero()) {
        EXPECT_EQ(a * a.inverse(), Cyclotomic(1));
        EXPECT_EQ((b / a) * a, b);
      }
      EXPECT_EQ(Cyclotomic::parse(a.str(), m), a);
    }
  }
}

TEST(Cyclotomic, MixedOrdersAreRejected) {
  const auto a = Cyclotomic::root_of_unity(3), b = Cyclotomic::root_of_unity(4);
  EXPECT_THROW(a + b, FieldMismatch);
  EXPECT_EQ(a + Cyclotomic(2), Cyclotomic(2) + a);
}

TEST(Matrix, RankAgreesWithOracle) {
  Gen g(21);
  for (int i = 0; i < 200; ++i) {
    const std::size_t r = 1 + g.index(7), c = 1 + g.index(7), k = 1 + g.index(5);
    const auto m = g.coin() ? g.matrix(r, c) : g.low_rank(r, c, k);
    const auto want = oracle_rank(m);
    EXPECT_EQ(rank(m), want);
    EXPECT_EQ(rank_mod_p(m).value_or(want), want);  // no bad primes at these sizes
    EXPECT_EQ(has_full_rank(m), want == std::min(r, c));
  }
}

TEST(Matrix, NullspaceNormalForm) {
  const Matrix<Rational> a{{1, 2}, {2, 4}};
  const auto n = nullspace(a);
  ASSERT_EQ(n.size(), 1u);
  EXPECT_EQ(n[0], (Vec<Rational>{Rational(1), Rational(-1, 2)}));
  const Matrix<Rational> b{{1, 1}};
  EXPECT_EQ(nullspace(b)[0], (Vec<Rational>{Rational(1), Rational(-1)}));
}

TEST(Matrix, NullspaceAndSolveProperties) {
  Gen g(22);
  for (int i = 0; i < 150; ++i) {
    const std::size_t r = 1 + g.index(6), c = 1 + g.index(6);
    const auto m = g.low_rank(r, c, 1 + g.index(4));
    const auto n = nullspace(m);
    EXPECT_EQ(n.size(), c - oracle_rank(m));
    for (const auto& v : n) EXPECT_TRUE(is_zero_vec(m * v));
    Vec<Rational> x(c);
    for (auto& e : x) e = g.rational();
    const auto b = m * x;
    const auto y = solve(m, b);
    ASSERT_TRUE(y.has_value());
    EXPECT_EQ(m * *y, b);
  }
  const Matrix<Rational> m{{1, 1}};
  EXPECT_EQ(*solve(m, Vec<Rational>{Rational(3)}), (Vec<Rational>{Rational(3), Rational(0)}));
  const Matrix<Rational> z{{0, 0}};
  EXPECT_FALSE(solve(z, Vec<Rational>{Rational(1)}).has_value());
}

TEST(Matrix, InverseAndKron) {
  Gen g(23);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + g.index(6);
    const auto m = g.matrix(n, n);
    const auto inv = inverse(m);
    EXPECT_EQ(inv.has_value(), oracle_rank(m) == n);
    if (inv) {
      EXPECT_EQ(m * *inv, Matrix<Rational>::identity(n));
    }
  }
  const auto a = g.matrix(2, 3), b = g.matrix(3, 2), c = g.matrix(3, 2), d = g.matrix(2, 3);
  EXPECT_EQ(kron(a, b) * kron(c, d), kron(a * c, b * d));
}

TEST(Matrix, CyclotomicEntries) {
  const auto w = Cyclotomic::root_of_unity(3);
  const Matrix<Cyclotomic> m{{Cyclotomic(1), w}, {w * w, Cyclotomic(1)}};
  // det = 1 - w^3 = 0
  EXPECT_EQ(rank(m), 1u);
  const Matrix<Cyclotomic> f{{Cyclotomic(1), w}, {w, Cyclotomic(1)}};
  const auto inv = inverse(f);
  ASSERT_TRUE(inv.has_value());
  EXPECT_EQ(f * *inv, Matrix<Cyclotomic>::identity(2));
}

TEST(Sparse, EchelonRankMatchesDense) {
  Gen g(24);
  for (int i = 0; i < 100; ++i) {
    const std::size_t r = 1 + g.index(8), c = 1 + g.index(8);
    const auto m = g.low_rank(r, c, 1 + g.index(5));
    SparseEchelon<Rational> e(c);
    for (std::size_t k = 0; k < r; ++k) e.add(to_sparse(m.row(k)));
    EXPECT_EQ(e.rank(), oracle_rank(m));
    if (r != c) {
      EXPECT_THROW(sparse_op(m), std::invalid_argument);
      continue;
    }
    const auto op = sparse_op(m);
    EXPECT_EQ(op.dense(), m);
    Vec<Rational> x(c);
    for (auto& v : x) v = g.rational();
    EXPECT_EQ(op.apply(x), m * x);
  }
}
