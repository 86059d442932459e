#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "isoparam/geometry/isometry.hpp"
#include "isoparam/geometry/param.hpp"
#include "isoparam/jacobi/parallel.hpp"

using namespace isoparam;
using namespace isoparam::geometry;

namespace {

Vec vec(std::initializer_list<double> xs)
{
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) { v(i++) = x; }
  return v;
}

ExampleS1 s1(int m, double kappa) { return ExampleS1::make(m, kappa, Vec::Unit(m, 0)); }

}  // namespace

TEST(Model, Geodesics)
{
  ProductPoint p{Factor::circle, vec({1, 0}), vec({0.5})};
  const TangentVec w{vec({0, 1}), vec({2})};
  const auto q0 = factor_exp(p, w, 0);
  EXPECT_EQ(point_distance(q0, p), 0.0);
  const auto q = factor_exp(p, w, std::numbers::pi / 2);
  EXPECT_NEAR(q.h(0), 0, 1e-15);
  EXPECT_NEAR(q.h(1), 1, 1e-15);
  EXPECT_NEAR(q.v(0), 0.5 + std::numbers::pi, 1e-14);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const auto hp = random_point(Factor::hyperbolic, 3, 2, rng);
    const auto fr = tangent_frame(hp);
    ASSERT_EQ(fr.size(), 5u);
    for (std::size_t a = 0; a < fr.size(); ++a) {
      for (std::size_t b = 0; b < fr.size(); ++b) { EXPECT_NEAR(inner(Factor::hyperbolic, fr[a], fr[b]), a == b ? 1 : 0, 1e-12); }
    }
    const auto e = factor_exp(hp, fr[0] * 0.7 + fr[1] * 1.3, 1.9);
    EXPECT_LE(e.model_residual(), 1e-12 * e.h.squaredNorm());
  }
  EXPECT_THROW(factor_exp(p, TangentVec{vec({1, 0}), vec({0})}, 1), InputError);
}

TEST(Examples, GradientIdentities)
{
  EXPECT_TRUE(s1_gradient_identity_defect().is_zero());
  EXPECT_TRUE(hn_gradient_identity_defect().is_zero());
  std::mt19937_64 rng(11);
  const auto es = s1(3, 1.5);
  const auto eh = ExampleHn::standard(3, 2, 0.5);
  for (int i = 0; i < 100; ++i) {
    const auto p = random_point(Factor::circle, 1, 3, rng);
    const double g2 = inner(Factor::circle, es.grad(p), es.grad(p));
    EXPECT_NEAR(g2, es.b_of(es.value(p)), 1e-12);
    const auto q = random_point(Factor::hyperbolic, 3, 2, rng, 0.5);
    const double h2 = inner(Factor::hyperbolic, eh.grad(q), eh.grad(q));
    EXPECT_NEAR(h2, eh.b_of(eh.value(q)), 1e-10 * std::max(1.0, h2));
  }
}

TEST(Examples, Laplacian)
{
  std::mt19937_64 rng(5);
  const auto k0 = s1(2, 0.0);
  const auto k = s1(2, 1.5);
  const auto a0 = ExampleHn::standard(3, 2, 0.0);
  const auto a1 = ExampleHn::standard(3, 2, 1.0);
  for (int i = 0; i < 100; ++i) {
    const auto p = random_point(Factor::circle, 1, 2, rng);
    EXPECT_NEAR(k0.laplace(p), -k0.value(p), 1e-15);
    EXPECT_NEAR(laplace_fd(k, p), -(1 + 2.25) * k.value(p), 1e-6);
    const auto q = random_point(Factor::hyperbolic, 3, 2, rng, 0.5);
    EXPECT_NEAR(a0.laplace(q), 3 * a0.value(q), 1e-12 * std::abs(a0.value(q)));
    EXPECT_NEAR(laplace_fd(a1, q), a1.laplace(q), 1e-6 * std::max(1.0, std::abs(a1.value(q))));
  }
}

TEST(Examples, AngleAndFrame)
{
  std::mt19937_64 rng(9);
  const auto k1 = s1(2, 1.0);
  const auto h1 = ExampleHn::standard(3, 2, 1.0);
  for (int i = 0; i < 10; ++i) {
    const auto p = random_point(Factor::circle, 1, 2, rng);
    if (std::abs(std::cos(k1.phase(p))) < 1e-3) { continue; }
    const auto f = level_set_frame(k1, p);
    EXPECT_NEAR(f.C, 0, 1e-12);
    EXPECT_LE(f.v_identity_residual, 1e-12);
    const auto q = random_point(Factor::hyperbolic, 3, 2, rng);
    const auto g = level_set_frame(h1, q);
    EXPECT_NEAR(g.C, 0, 1e-12);
    EXPECT_LE(g.v_identity_residual, 1e-12);
    const auto h = level_set_frame(ExampleHn::standard(2, 3, 0.5), random_point(Factor::hyperbolic, 2, 3, rng));
    EXPECT_NEAR(h.C, 0.75 / 1.25, 1e-12);
  }
  EXPECT_THROW(level_set_frame(k1, ProductPoint{Factor::circle, vec({0, 1}), vec({0, 0})}), NumericalError);
}

TEST(Examples, Hessian)
{
  std::mt19937_64 rng(21);
  const auto k = s1(3, 2.0);
  const auto h = ExampleHn::standard(3, 2, 1.0);
  for (int i = 0; i < 10; ++i) {
    const auto p = random_point(Factor::circle, 1, 3, rng);
    const auto fr = adapted_frame(p, level_set_frame(k, p).N).all();
    for (const auto & x : fr) {
      for (const auto & y : fr) { EXPECT_NEAR(k.hessian(p, x, y), 0, 1e-10); }
    }
    const auto tp = tangent_frame(p);
    EXPECT_NEAR(hessian_fd(k, p, tp[0], tp[1]), k.hessian(p, tp[0], tp[1]), 1e-7);

    const auto q = random_point(Factor::hyperbolic, 3, 2, rng, 0.5);
    const double t = h.value(q);
    const auto af = adapted_frame(q, level_set_frame(h, q).N);
    ASSERT_EQ(af.horizontal.size(), 2u);
    ASSERT_EQ(af.vertical.size(), 1u);
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t b = 0; b < 2; ++b) { EXPECT_NEAR(h.hessian(q, af.horizontal[a], af.horizontal[b]), a == b ? t : 0, 1e-10 * std::max(1.0, std::abs(t))); }
      EXPECT_NEAR(h.hessian(q, af.horizontal[a], af.vertical[0]), 0, 1e-10 * std::max(1.0, std::abs(t)));
      EXPECT_NEAR(h.hessian(q, af.horizontal[a], af.vhat), 0, 1e-10 * std::max(1.0, std::abs(t)));
    }
    const auto tq = tangent_frame(q);
    EXPECT_NEAR(hessian_fd(h, q, tq[0], tq[3]), h.hessian(q, tq[0], tq[3]), 1e-6 * std::max(1.0, std::abs(t)));
  }
}

TEST(Examples, CurvatureTables)
{
  std::mt19937_64 rng(2);
  const auto p = random_point(Factor::hyperbolic, 3, 2, rng);
  const auto t1 = curvature_tables(ExampleHn::standard(3, 2, 1.0), p);
  EXPECT_NEAR(t1.H, std::sqrt(2.0), 1e-10);
  EXPECT_NEAR(t1.scalar, -3, 1e-10);
  const auto t0 = curvature_tables(ExampleHn::standard(3, 2, 0.0), p);
  for (const auto & row : t0.sectional) {
    for (const auto & e : row) {
      if (e) { EXPECT_NEAR(*e, 0, 1e-10); }
    }
  }
  EXPECT_NEAR(t0.scalar, 0, 1e-10);
  for (double a : {0.5, 1.0, 2.0}) {
    for (int n : {2, 3, 4}) {
      const auto q = random_point(Factor::hyperbolic, n, 2, rng);
      const auto t = curvature_tables(ExampleHn::standard(n, 2, a), q);
      const double k = -a * a / (1 + a * a);
      ASSERT_TRUE(t.sectional[0][2]);
      EXPECT_NEAR(*t.sectional[0][2], k, 1e-8);
      EXPECT_NEAR(*t.sectional[0][1], 0, 1e-8);
      EXPECT_NEAR(*t.sectional[1][2], 0, 1e-8);
      if (n > 2) { EXPECT_NEAR(*t.sectional[0][0], k, 1e-8); }
      EXPECT_FALSE(t.sectional[2][2]);
      EXPECT_NEAR(t.scalar, n * (n - 1) * k, 1e-8);
      EXPECT_NEAR(t.H, (n - 1) / std::sqrt(1 + a * a), 1e-8);
      int big = 0, zero = 0;
      for (double l : t.principal) {
        if (std::abs(l - 1 / std::sqrt(1 + a * a)) < 1e-8) { ++big; }
        if (std::abs(l) < 1e-8) { ++zero; }
      }
      EXPECT_EQ(big, n - 1);
      EXPECT_EQ(zero, 2);
    }
  }
}

TEST(Examples, PrincipalFrame)
{
  std::mt19937_64 rng(4);
  const auto k = s1(3, 2.0);
  auto p = random_point(Factor::circle, 1, 3, rng);
  EXPECT_TRUE(check_principal_frame(k, p).ok);
  const auto h = ExampleHn::standard(3, 2, 1.0);
  const auto q = random_point(Factor::hyperbolic, 3, 2, rng);
  const auto c = check_principal_frame(h, q);
  EXPECT_TRUE(c.ok);
  EXPECT_NEAR(c.shape(0, 0), 1 / std::sqrt(2.0), 1e-10);
  EXPECT_NEAR(c.shape(1, 1), 1 / std::sqrt(2.0), 1e-10);
  EXPECT_NEAR(c.shape(2, 2), 0, 1e-10);

  p.h << std::cos(0.3), std::sin(0.3);
  p.v << 0, 0, 0;
  auto n = level_set_frame(k, p).N;
  n.v(1) += 0.2;
  EXPECT_FALSE(check_principal_frame(k, p, n).ok);
  auto nh = level_set_frame(h, q).N;
  nh.v(1) += 0.2;
  EXPECT_FALSE(check_principal_frame(h, q, nh).ok);
}

TEST(Param, Phi)
{
  const Vec x0 = vec({0.3, -1.2, 0.4});
  const auto p0 = param_phi(Vec::Zero(3), x0);
  EXPECT_EQ(p0.h(0), 1.0);
  EXPECT_EQ(p0.h(1), 0.0);
  const auto ex = phi_example(x0);
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g(0, 2);
  for (int i = 0; i < 50; ++i) {
    const Vec x = vec({g(rng), g(rng), g(rng)});
    const auto p = param_phi(x, x0);
    EXPECT_NEAR(ex.value(p), 0, 1e-12);
    EXPECT_NEAR(p.h.norm(), 1, 1e-15);
  }
  EXPECT_THROW(param_phi(Vec::Zero(3), Vec::Zero(3)), ParameterError);
}

TEST(Param, Psi)
{
  for (double a : {0.5, 1.0, 2.0}) {
    const double eps = eps_from_a(a);
    const auto hc = HorosphereChart::standard(3);
    const auto vc = HyperplaneChart::standard(2, vec({0.6, 0.8}), vec({0.1, -0.2}));
    const auto ex = psi_example(eps, hc, vc);
    EXPECT_NEAR(ex.a, a, 1e-12);
    const auto base = param_psi(0, Vec::Zero(2), Vec::Zero(1), eps, hc, vc);
    EXPECT_NEAR((base.h - hc.w).norm(), 0, 1e-15);
    const double f0 = ex.value(base);
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        for (int l = 0; l < 5; ++l) {
          const double t = -1 + 0.5 * i;
          const auto p = param_psi(t, vec({-1 + 0.5 * j, 0.3}), vec({-1 + 0.5 * l}), eps, hc, vc);
          EXPECT_NEAR(lorentz(p.h, p.h), -1, 1e-12 * p.h.squaredNorm());
          EXPECT_NEAR(ex.value(p), f0, 1e-9);
        }
      }
    }
  }
  EXPECT_THROW(param_psi(0, Vec::Zero(2), Vec::Zero(1), 1.0, HorosphereChart::standard(3),
                         HyperplaneChart::standard(2, vec({1, 0}), vec({0, 0}))),
               ParameterError);
}

TEST(Param, IntrinsicCurvatureMatchesGauss)
{
  for (double a : {0.5, 1.0, 2.0}) {
    const double eps = eps_from_a(a);
    const auto hc = HorosphereChart::standard(3);
    const auto vc = HyperplaneChart::standard(2, vec({1, 0}), vec({0, 0}));
    const Vec s0 = vec({0.2, 0.1, -0.3, 0.4});
    const CoordinateCurvature cc([&](const Vec & s) { return psi_metric(s, eps, hc, vc); }, s0);
    const auto ex = psi_example(eps, hc, vc);
    const auto p = param_psi(s0(0), s0.segment(1, 2), s0.segment(3, 1), eps, hc, vc);
    const auto t = curvature_tables(ex, p);
    // coordinates: 0 = t (V3), 1,2 = x (V1), 3 = y (V2)
    EXPECT_NEAR(cc.sectional(1, 2), *t.sectional[0][0], 1e-6);
    EXPECT_NEAR(cc.sectional(1, 3), *t.sectional[0][1], 1e-6);
    EXPECT_NEAR(cc.sectional(0, 1), *t.sectional[0][2], 1e-6);
    EXPECT_NEAR(cc.sectional(0, 3), *t.sectional[1][2], 1e-6);
  }
}

TEST(Isometry, S1)
{
  const auto ex = s1(3, 1.0);
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g(0, 1);
  const auto p = random_point(Factor::circle, 1, 3, rng);
  const auto id = transitive_isometry(ex, p, p);
  EXPECT_NEAR((id.factor_block - Mat::Identity(2, 2)).norm(), 0, 1e-15);
  EXPECT_NEAR((id.affine - Mat::Identity(4, 4)).norm(), 0, 1e-15);
  for (int i = 0; i < 20; ++i) {
    const auto a = random_point(Factor::circle, 1, 3, rng);
    const auto b = same_level_point(ex, a, vec({g(rng), g(rng), g(rng)}));
    const auto el = transitive_isometry(ex, a, b);
    EXPECT_LE(point_distance(el.apply(a), b), 1e-10);
    EXPECT_LE(el.metric_residual(), 1e-12);
    for (int j = 0; j < 20; ++j) {
      const auto r = random_point(Factor::circle, 1, 3, rng);
      EXPECT_NEAR(ex.value(el.apply(r)), ex.value(r), 1e-10);
    }
  }
  const auto a = random_point(Factor::circle, 1, 3, rng);
  auto b = same_level_point(ex, a, vec({0.1, 0.2, 0.3}));
  const double x = std::atan2(b.h(1), b.h(0)) + 1.0;
  b.h << std::cos(x), std::sin(x);
  EXPECT_THROW(transitive_isometry(ex, a, b), ConstructionError);
}

TEST(Isometry, Hn)
{
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g(0, 0.7);
  for (int n : {2, 3}) {
    const auto ex = ExampleHn::standard(n, 2, 1.0);
    const auto p = random_point(Factor::hyperbolic, n, 2, rng);
    const auto id = transitive_isometry(ex, p, p);
    EXPECT_NEAR((id.factor_block - Mat::Identity(n + 1, n + 1)).norm(), 0, 1e-12);
    for (int i = 0; i < 20; ++i) {
      const auto a = random_point(Factor::hyperbolic, n, 2, rng, 0.7);
      Vec z(n - 1);
      for (int k = 0; k < n - 1; ++k) { z(k) = g(rng); }
      const auto b = same_level_point(ex, a, z, vec({g(rng), g(rng)}));
      const auto el = transitive_isometry(ex, a, b);
      EXPECT_LE(point_distance(el.apply(a), b) / std::max(1.0, b.h.norm()), 1e-10);
      EXPECT_LE(u_scaling_residual(ex, el, a, b), 1e-9);
      EXPECT_LE(el.metric_residual(), 1e-9);
      for (int j = 0; j < 20; ++j) {
        const auto r = random_point(Factor::hyperbolic, n, 2, rng, 0.5);
        EXPECT_NEAR(ex.value(el.apply(r)), ex.value(r), 1e-10 * std::max(1.0, std::abs(ex.value(r))));
      }
    }
  }
  const auto ex = ExampleHn::standard(2, 2, 1.0);
  const auto a = random_point(Factor::hyperbolic, 2, 2, rng);
  auto b = a;
  b.v(0) += 0.5;
  EXPECT_THROW(transitive_isometry(ex, a, b), ConstructionError);
}

TEST(Parallel, HorosphereFlowIsConstant)
{
  for (int n : {2, 3, 4}) {
    for (double a : {0.5, 1.0, 2.0}) {
      const auto ex = ExampleHn::standard(n, 2, a);
      std::vector<double> hs;
      for (double t : {-1.0, 0.0, 1.0}) {
        const double h = (n - 1) * jacobi::parallel_principal_branch(ex.c1(), {-1, ex.c1()}, t) +
                         (ex.m - 1) * jacobi::parallel_principal_branch(0.0, {0, ex.c2()}, t);
        hs.push_back(h);
      }
      EXPECT_LE(*std::max_element(hs.begin(), hs.end()) - *std::min_element(hs.begin(), hs.end()), 1e-10);
      EXPECT_NEAR(hs[1], (n - 1) / std::sqrt(1 + a * a), 1e-12);
    }
  }
}
