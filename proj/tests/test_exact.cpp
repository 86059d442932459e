#include <gtest/gtest.h>

#include <random>

#include "isoparam/exact/matrix.hpp"
#include "isoparam/exact/serialize.hpp"
#include "oracles.hpp"

using namespace isoparam;
using namespace isoparam::exact;

namespace {

BigRational R(const char * s) { return BigRational::parse(s); }

ExactMatrix<BigRational> random_int_matrix(std::size_t r, std::size_t c, std::mt19937 & rng)
{
  std::uniform_int_distribution<int> d(-5, 5);
  ExactMatrix<BigRational> m(r, c, BigRational(0));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) { m(i, j) = BigRational(d(rng)); }
  }
  return m;
}

}  // namespace

TEST(Rational, Arithmetic)
{
  EXPECT_EQ(rat_arith(R("1/2"), R("1/3"), RatOp::add), R("5/6"));
  EXPECT_EQ(rat_arith(R("3/4"), R("3/4"), RatOp::sub).to_string(), "0/1");
  EXPECT_EQ(rat_arith(R("2/3"), R("4/9"), RatOp::div), R("3/2"));
  EXPECT_THROW(rat_arith(R("1"), R("0"), RatOp::div), ArithmeticError);
}

TEST(Rational, CanonicalForm)
{
  EXPECT_EQ(BigRational(6, -4).to_string(), "-3/2");
  EXPECT_EQ(BigRational(0, 5).to_string(), "0/1");
}

TEST(Rational, ParseRejectsGarbage)
{
  EXPECT_THROW(R("1/"), StructuralError);
  EXPECT_THROW(R("x"), StructuralError);
  EXPECT_THROW(R("1/0"), ArithmeticError);
  EXPECT_EQ(R(" -4/6 ").to_string(), "-2/3");
  EXPECT_EQ(BigRational(std::size_t{7}), BigRational(7));
}

TEST(MPoly, DeriveEvalMul)
{
  const MPoly::VarNames v{"X"};
  const MPoly x = MPoly::variable(v, "X");
  EXPECT_EQ(x.pow(2).derive("X"), x.scaled(2));
  const MPoly p = x.scaled(-2);
  EXPECT_EQ(p.eval("X", R("-1/4")).constant_value(), R("1/2"));
  EXPECT_EQ(p.eval("X", R("-1/4")).nvars(), 0u);
  EXPECT_EQ((x + 1) * (x - 1), x.pow(2) - 1);
  EXPECT_EQ((x.scaled(-2) + 1).to_string(), "-2*X + 1");
}

TEST(MPoly, MismatchedListsThrow)
{
  const MPoly x = MPoly::variable({"X"}, "X");
  const MPoly y = MPoly::variable({"Y"}, "Y");
  EXPECT_THROW((void)(x + y), StructuralError);
  EXPECT_THROW((void)x.derive("Y"), StructuralError);
}

TEST(MPoly, GradedLexPrinting)
{
  const MPoly::VarNames v{"a", "b"};
  const MPoly a = MPoly::variable(v, "a");
  const MPoly b = MPoly::variable(v, "b");
  const MPoly p = b * b + a * b.scaled(R("1/2")) - a + b.pow(3) + 7;
  EXPECT_EQ(p.to_string(), "b^3 + 1/2*a*b + b^2 - a + 7");
}

TEST(MPoly, ExactDivision)
{
  const MPoly::VarNames v{"x", "y"};
  const MPoly x = MPoly::variable(v, "x");
  const MPoly y = MPoly::variable(v, "y");
  const MPoly f = (x + y.scaled(2)) * (x.pow(2) - y + 3);
  EXPECT_EQ(exact_div(f, x + y.scaled(2)), x.pow(2) - y + 3);
  EXPECT_THROW((void)exact_div(f + 1, x + y.scaled(2)), StructuralError);
  EXPECT_THROW((void)exact_div(f, MPoly::constant(v, 0)), ArithmeticError);
}

TEST(MPoly, SubstituteAndReduce)
{
  const MPoly::VarNames v{"c", "s"};
  const MPoly c = MPoly::variable(v, "c");
  const MPoly s = MPoly::variable(v, "s");
  const MPoly one = MPoly::constant(v, 1);
  const MPoly p = (c.pow(2) + s.pow(2)).pow(2);
  EXPECT_EQ(p.reduce_power("c", 2, one - s.pow(2)), one);
  EXPECT_EQ(c.pow(2).substitute("c", s + 1), (s + 1).pow(2));
}

TEST(Lagrange, Recovery)
{
  EXPECT_EQ(lagrange_interpolate({{R("0"), R("1")}, {R("1"), R("1")}}).to_string(), "1");
  EXPECT_EQ(lagrange_interpolate({{R("1"), R("1")}, {R("2"), R("4")}, {R("3"), R("9")}}).to_string(), "n^2");
  EXPECT_EQ(lagrange_interpolate({{R("3"), R("-2")}, {R("4"), R("-3")}, {R("5"), R("-4")}}).to_string(), "-n + 1");
  EXPECT_THROW(lagrange_interpolate({{R("1"), R("1")}, {R("1"), R("2")}}), StructuralError);
  EXPECT_THROW(lagrange_interpolate({}), StructuralError);
}

TEST(Lagrange, ReproducesSamples)
{
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-20, 20);
  std::vector<std::pair<BigRational, BigRational>> samples;
  for (int i = 0; i < 6; ++i) { samples.emplace_back(BigRational(i * 3 - 4, 2), BigRational(d(rng), 7)); }
  const MPoly p = lagrange_interpolate(samples);
  EXPECT_LT(p.degree("n"), samples.size());
  for (const auto & [x, y] : samples) { EXPECT_EQ(p.eval("n", x).constant_value(), y); }
}

TEST(QuadExt, NormIdentity)
{
  for (int c : {-1, 1}) {
    const BigRational tau = R("1/3");
    const BigRational d = BigRational(-c) * tau * tau;
    const QuadExt<BigRational> z(R("2/5"), R("-7/3"), d);
    const auto prod = z * z.conj();
    EXPECT_TRUE(prod.b().is_zero());
    EXPECT_EQ(prod.a(), z.a() * z.a() + BigRational(c) * tau * tau * z.b() * z.b());
  }
}

TEST(QuadExt, FieldInverse)
{
  const BigRational d = R("-1/4");
  const QuadExt<BigRational> z(R("3"), R("5/2"), d);
  EXPECT_EQ(z * z.inverse(), QuadExt<BigRational>::embed(BigRational(1), d));
  const QuadExt<BigRational> zd(R("1/2"), R("1"), R("1/4"));
  EXPECT_THROW((void)zd.inverse(), ArithmeticError);
}

TEST(Bareiss, SmallCases)
{
  const auto id = ExactMatrix<BigRational>::identity(3, BigRational(0), BigRational(1));
  EXPECT_EQ(bareiss_det(id), BigRational(1));
  const MPoly::VarNames v{"X"};
  const MPoly x = MPoly::variable(v, "X");
  const auto m = ExactMatrix<MPoly>::from_rows({{MPoly::constant(v, 0), MPoly::constant(v, 1)}, {-x, MPoly::constant(v, 0)}});
  EXPECT_EQ(bareiss_det(m), x);
  EXPECT_THROW((void)bareiss_det(ExactMatrix<BigRational>(2, 3, BigRational(0))), StructuralError);
}

TEST(Bareiss, AgreesWithCofactorOracle)
{
  std::mt19937 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 6;
    auto a = random_int_matrix(n, n, rng);
    if (trial % 5 == 0 && n > 1) {
      for (std::size_t j = 0; j < n; ++j) { a(n - 1, j) = a(0, j) * BigRational(2); }
    }
    EXPECT_EQ(bareiss_det(a), oracle::cofactor_det(a));
  }
}

TEST(Bareiss, PolynomialEntriesAgreeWithOracle)
{
  const MPoly::VarNames v{"X", "Y"};
  const MPoly x = MPoly::variable(v, "X");
  const MPoly y = MPoly::variable(v, "Y");
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t n = 2 + trial % 4;
    ExactMatrix<MPoly> a(n, n, MPoly::constant(v, 0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) { a(i, j) = x.scaled(d(rng)) + y.scaled(d(rng)) * x + d(rng); }
    }
    EXPECT_EQ(bareiss_det(a), oracle::cofactor_det(a));
  }
}

TEST(Bareiss, PermutationSign)
{
  std::mt19937 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const auto a = random_int_matrix(n, n, rng);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) { inversions += perm[i] > perm[j]; }
    }
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    const auto p = a.select(perm, all);
    const BigRational sign(inversions % 2 ? -1 : 1);
    EXPECT_EQ(bareiss_det(p), sign * bareiss_det(a));
  }
}

TEST(Rank, Basics)
{
  EXPECT_EQ(exact_rank(ExactMatrix<BigRational>(3, 4, BigRational(0))), 0u);
  for (std::size_t k = 1; k < 6; ++k) {
    EXPECT_EQ(exact_rank(ExactMatrix<BigRational>::identity(k, BigRational(0), BigRational(1))), k);
  }
  const MPoly x = MPoly::variable({"X"}, "X");
  const auto m = ExactMatrix<MPoly>::from_rows({{x, x.pow(2)}, {MPoly(1), x}});
  EXPECT_EQ(exact_rank(m, {{"X", R("2")}}), 1u);
  EXPECT_THROW((void)exact_rank(m, {}), StructuralError);
}

TEST(Rank, InvariantUnderShuffleAndScaling)
{
  std::mt19937 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t r = 2 + trial % 5, c = 2 + (trial / 5) % 5;
    auto a = random_int_matrix(r, c, rng);
    if (trial % 3 == 0) {
      for (std::size_t j = 0; j < c; ++j) { a(r - 1, j) = a(0, j) - a(1 % r, j); }
    }
    const std::size_t rank = exact_rank(a);
    for (unsigned s = 0; s < 3; ++s) { EXPECT_EQ(oracle::shuffled_rank(a, 100 * trial + s), rank); }
  }
}

TEST(Nullspace, Basic)
{
  const auto a = ExactMatrix<BigRational>::from_rows({{BigRational(1), BigRational(2), BigRational(3)},
                                                     {BigRational(2), BigRational(4), BigRational(6)}});
  const auto ns = nullspace(a, BigRational(1));
  ASSERT_EQ(ns.size(), 2u);
  for (const auto & v : ns) {
    BigRational acc(0);
    for (std::size_t j = 0; j < 3; ++j) { acc += a(0, j) * v[j]; }
    EXPECT_TRUE(acc.is_zero());
  }
}

TEST(Serialize, Shapes)
{
  const MPoly x = MPoly::variable({"X"}, "X");
  const auto m = ExactMatrix<MPoly>::from_rows({{x, MPoly(1)}, {MPoly(BigRational(1, 2)), x.scaled(-2) + 1}});
  EXPECT_EQ(to_json(m).dump(), R"([["X","1"],["1/2","-2*X + 1"]])");
  EXPECT_EQ(to_json(R("3")).get<std::string>(), "3/1");
}
