#include <gtest/gtest.h>

#include "isoparam/coeff/det_structure.hpp"
#include "isoparam/coeff/vandermonde.hpp"
#include "oracles.hpp"

using namespace isoparam;
using namespace isoparam::coeff;

namespace {

BigRational R(const char * s) { return BigRational::parse(s); }
SpaceFormParams P(int n, int m, int c, const char * tau) { return SpaceFormParams{n, m, c, R(tau)}; }
MPoly X() { return MPoly::variable(x_vars(), "X"); }

}  // namespace

TEST(PTable, FirstLevels)
{
  const PTable t(3, 2, 4);
  for (int q = 0; q <= 2; ++q) {
    for (int l = 0; l < 3; ++l) {
      const bool one = (l == 0 && q == 1) || (l == 1 && q == 0);
      EXPECT_EQ(t.at(1, l, q), MPoly(one ? 1 : 0));
      const MPoly expected = (l == 0 && q == 0) ? X().scaled(-2)
                             : ((l == 0 && q == 2) || (l == 1 && q == 1) || (l == 2 && q == 0)) ? MPoly(2)
                                                                                                : MPoly(0);
      EXPECT_EQ(t.at(2, l, q), expected) << l << "," << q;
    }
  }
}

TEST(PTable, Invariants)
{
  for (int n = 2; n <= 6; ++n) {
    for (int m = 1; m <= 3; ++m) {
      const PTable t(n, m, (m + 1) * n + 2);
      EXPECT_EQ(t.check_invariants(), "");
    }
  }
}

TEST(PTable, DiagonalFactorial)
{
  const PTable t(6, 3, 8);
  for (int k = 0; k <= 8; ++k) {
    for (int q = 0; q <= std::min(k, 3); ++q) {
      if (k - q < 6) { EXPECT_EQ(t.at(k, k - q, q), MPoly(exact::factorial(k))); }
    }
  }
}

TEST(PTable, RowsMatchQPowers)
{
  for (auto p : {P(2, 1, -1, "1/2"), P(3, 2, 1, "1/3"), P(2, 2, 1, "2/3"), P(5, 1, -1, "1/2")}) {
    const int top = p.size() + 2;
    const auto t = p_table(p, top);
    for (int k = 0; k <= top; ++k) {
      EXPECT_TRUE(row_matches_qpower(t, p, k));
      // second oracle: first row of the closed-form power
      EXPECT_EQ(t.row_at(k, p.x_value()), kac::q_power_closed(p, k).row(0));
    }
  }
}

TEST(PTable, CorruptionDetected)
{
  const auto p = P(3, 1, -1, "1/2");
  auto t = p_table(p, 3);
  EXPECT_TRUE(row_matches_qpower(t, p, 3));
  t.set(3, 1, 0, t.at(3, 1, 0) + 1);
  EXPECT_FALSE(row_matches_qpower(t, p, 3));
  EXPECT_THROW(require_row_matches_qpower(t, p, 3), VerificationError);
}

TEST(Sigma, Examples)
{
  const auto s200 = sigma_interpolate(0, 0, 2, -1);
  EXPECT_EQ(s200.poly.to_string(), "-n + 1");
  const auto s400 = sigma_interpolate(0, 0, 4, 1);
  EXPECT_GE(s400.poly.degree("n"), 2u);
  EXPECT_GT(s400.poly.leading_term().second.sign(), 0);
  const auto diag = sigma_interpolate(2, 1, 3);
  EXPECT_EQ(diag.poly, MPoly(6));
  EXPECT_THROW(sigma_interpolate(1, 0, 2), ParameterError);
}

TEST(Sigma, SelfTruncation)
{
  // the interpolated polynomial reproduces concrete tables beyond the sample nodes
  const auto sp = sigma_interpolate(1, 1, 6);
  for (int n = 2; n <= 9; ++n) {
    const PTable t(n, 1, 6);
    EXPECT_EQ(sp.poly.eval("n", BigRational(n)).constant_value(), t.sigma_value(6, 1, 1)) << n;
  }
}

TEST(System, ShapesAndRows)
{
  const auto p = P(2, 1, -1, "1/2");
  const auto sys = build_system(p);
  ASSERT_EQ(sys.M.rows(), 3u);
  ASSERT_EQ(sys.M.cols(), 3u);
  const auto t = p_table(p, 4);
  for (int k = 2; k <= 4; ++k) {
    const auto row = t.row_at(k, p.x_value());
    EXPECT_EQ(sys.M(k - 2, 0), row[1]);
    EXPECT_EQ(sys.M(k - 2, 1), row[2]);
    EXPECT_EQ(sys.M(k - 2, 2), row[3]);
  }
  EXPECT_EQ(sys.nu_tau[0], BigRational(p.n - 1) * p.x_value());
  for (std::size_t r = 0; r < sys.Mtilde.rows(); ++r) {
    EXPECT_EQ(sys.Mtilde.row(r), kac::q_power_closed(p, static_cast<int>(r) + 2).row(0));
  }
}

TEST(System, OddAssembly)
{
  const auto p = P(3, 1, -1, "1/2");
  EXPECT_THROW(build_system_odd(p, 5), ParameterError);
  EXPECT_THROW(build_system_odd(P(2, 1, -1, "1/2"), 8), ParameterError);
  const auto odd = build_system_odd(p, 8);
  EXPECT_EQ(odd.Ms.rows(), 5u);
  EXPECT_EQ(odd.Ms.cols(), 5u);
  EXPECT_EQ(odd.Mtilde_s.cols(), 6u);
  for (std::size_t r = 0; r + 1 < odd.Mtilde_s.rows(); ++r) {
    EXPECT_EQ(odd.Mtilde_s.row(r), kac::q_power_closed(p, static_cast<int>(r) + 2).row(0));
  }
  EXPECT_EQ(odd.Mtilde_s.row(4), kac::q_power_closed(p, 8).row(0));
}

TEST(Rank, EvenExamples)
{
  EXPECT_EQ(verify_rank_M(P(2, 1, -1, "1/2")), 2u);
  EXPECT_EQ(verify_rank_M(P(2, 2, 1, "1/3")), 4u);
  EXPECT_EQ(verify_rank_M(P(4, 1, -1, "2/3")), 6u);
  const auto m = build_system(P(4, 2, 1, "1/2")).M;
  for (unsigned seed = 0; seed < 3; ++seed) { EXPECT_EQ(oracle::shuffled_rank(m, seed), 10u); }
}

TEST(Rank, OddExamples)
{
  EXPECT_EQ(verify_rank_Ms(P(3, 1, -1, "1/2"), 8), 4u);
  EXPECT_EQ(verify_rank_Ms(P(3, 2, 1, "1/2"), 9), 7u);
  EXPECT_EQ(verify_rank_Ms(P(5, 1, 1, "1/3"), 10), 8u);
  const auto ms = build_system_odd(P(5, 2, -1, "2/3"), 18).Ms;
  EXPECT_EQ(oracle::shuffled_rank(ms, 4), 13u);
}

TEST(Independence, Examples)
{
  const auto even = verify_independence(P(2, 1, -1, "1/2"), 2);
  EXPECT_EQ(even.rank, 4u);
  const auto odd = verify_independence(P(3, 1, -1, "1/2"), 8);
  EXPECT_EQ(odd.rows, 4u);
  EXPECT_EQ(odd.width, 6u);
  EXPECT_EQ(odd.rank, 4u);
  EXPECT_EQ(odd.rank_with_extra, 4u);
}

TEST(ColumnSpan, Examples)
{
  auto r = verify_column_span(P(3, 1, -1, "1/2"), 0);
  EXPECT_EQ(r.target, 1u);
  EXPECT_EQ(r.span_set, std::vector<std::size_t>{3});
  r = verify_column_span(P(3, 1, -1, "1/2"), 1);
  EXPECT_EQ(r.target, 4u);
  EXPECT_EQ(r.span_set, std::vector<std::size_t>{6});
  r = verify_column_span(P(5, 1, 1, "1/3"), 0);
  EXPECT_EQ(r.span_set, (std::vector<std::size_t>{3, 5}));
}

TEST(Vandermonde, EvenSmall)
{
  const auto r = vandermonde_xi(P(2, 1, -1, "1/2"), 0, XiMode::even_full);
  EXPECT_EQ(r.xi.rows(), 4u);
  EXPECT_EQ(r.det_extension, kac::QE::embed(BigRational(1), R("1/4")));
  EXPECT_EQ(r.det_reduced, r.det_extension);
  EXPECT_EQ(oracle::cofactor_det(r.xi), r.det);
}

TEST(Vandermonde, EvenWindowAndOdd)
{
  for (int c : {-1, 1}) {
    EXPECT_NO_THROW(vandermonde_xi(P(4, 1, c, "1/3"), 0, XiMode::even_full));
    EXPECT_NO_THROW(vandermonde_xi(P(2, 2, c, "1/3"), 3, XiMode::even_full));
    const auto odd = vandermonde_xi(P(3, 1, c, "1/2"), 0, XiMode::odd_reduced);
    EXPECT_EQ(odd.xi.rows(), odd.xi.cols());
    EXPECT_FALSE(odd.det_extension.is_zero());
  }
  EXPECT_NO_THROW(vandermonde_xi(P(3, 2, 1, "1/2"), 0, XiMode::odd_reduced));
  EXPECT_THROW(vandermonde_xi(P(3, 1, 1, "1/2"), 0, XiMode::even_full), ParameterError);
}

TEST(DetStructure, EvenSmall)
{
  const auto r = det_structure_M_iota(P(2, 1, -1, "1/2"));
  EXPECT_EQ(r.iota, 1u);
  EXPECT_EQ(r.term0.value, X().pow(3).scaled(6));
  EXPECT_EQ(*r.term0.gamma, 6);
  ASSERT_EQ(r.terms.size(), 3u);
  EXPECT_TRUE(r.terms[1].beta.is_zero());
  EXPECT_EQ(*r.terms[2].gamma, 2);
  EXPECT_FALSE(r.quoted_lower_bound_holds);
  EXPECT_TRUE(r.sign_pattern_ok);
}

TEST(DetStructure, CofactorOracle)
{
  // M_iota^phi cofactors agree with the Laplace oracle on the n=2, m=2 system
  const auto sys = build_system_symbolic(2, 2);
  const auto r = det_structure_M_iota(P(2, 2, 1, "1/2"));
  const auto mi = sys.M.with_column(r.iota - 1, sys.nu_tau);
  EXPECT_EQ(oracle::cofactor_det(mi), r.term0.value);
}

TEST(DetStructure, OddSmall)
{
  const auto r = det_structure_Ms(P(3, 1, -1, "1/2"), 8);
  EXPECT_TRUE(r.det_tau.is_zero());
  EXPECT_FALSE(r.beta_s_minor.is_zero());
  ASSERT_TRUE(r.term_s.gamma.has_value());
  for (const auto & t : r.terms) {
    if (t.gamma) { EXPECT_GT(*t.gamma, *r.term_s.gamma); }
  }
}
