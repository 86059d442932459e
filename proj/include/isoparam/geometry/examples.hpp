#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "isoparam/exact/mpoly.hpp"
#include "isoparam/geometry/model.hpp"

namespace isoparam::geometry {

/// F(e^{ix}, y) = sin(x - kappa <y, y0>) on S^1 x R^m.
struct ExampleS1
{
  int m = 1;
  double kappa = 0;
  Vec y0;

  static ExampleS1 make(int m, double kappa, Vec y0)
  {
    ExampleS1 e{m, kappa, std::move(y0)};
    e.validate();
    return e;
  }
  void validate() const
  {
    if (m < 1) { throw ParameterError("ExampleS1: m must be at least 1"); }
    if (y0.size() != m) { throw ParameterError("ExampleS1: y0 must lie in R^m"); }
    if (std::abs(y0.norm() - 1) > 1e-12) { throw ParameterError("ExampleS1: y0 must be a unit vector"); }
  }

  Factor factor() const { return Factor::circle; }
  int factor_dim() const { return 1; }
  int dim() const { return 1 + m; }

  double phase(const ProductPoint & p) const { return std::atan2(p.h(1), p.h(0)) - kappa * p.v.dot(y0); }
  double value(const ProductPoint & p) const { return std::sin(phase(p)); }

  TangentVec grad(const ProductPoint & p) const
  {
    const double c = std::cos(phase(p));
    Vec j(2);
    j << -p.h(1), p.h(0);
    return {c * j, -kappa * c * y0};
  }
  /// b(F) with |grad F|^2 = b(F).
  double b_of(double f) const { return (1 + kappa * kappa) * (1 - f * f); }
  double laplace(const ProductPoint & p) const { return -(1 + kappa * kappa) * value(p); }

  double hessian(const ProductPoint & p, const TangentVec & x, const TangentVec & y) const
  {
    Vec j(2);
    j << -p.h(1), p.h(0);
    const double dx = x.h.dot(j) - kappa * x.v.dot(y0);
    const double dy = y.h.dot(j) - kappa * y.v.dot(y0);
    return -std::sin(phase(p)) * dx * dy;
  }

  double angle() const { return (1 - kappa * kappa) / (1 + kappa * kappa); }
};

/// F(x, y) = <x, u>_L exp(a <y - y0, v0>) on H^n x R^m.
struct ExampleHn
{
  int n = 2, m = 1;
  Vec u;
  Vec v0;
  Vec y0;
  double a = 0;

  static ExampleHn make(int n, int m, Vec u, Vec v0, Vec y0, double a)
  {
    ExampleHn e{n, m, std::move(u), std::move(v0), std::move(y0), a};
    e.validate();
    return e;
  }
  /// u = (1, 1, 0, ..., 0), v0 = e_1, y0 = 0.
  static ExampleHn standard(int n, int m, double a)
  {
    Vec u = Vec::Zero(n + 1);
    u(0) = 1;
    u(1) = 1;
    return make(n, m, u, Vec::Unit(m, 0), Vec::Zero(m), a);
  }
  void validate() const
  {
    if (n < 2 || m < 1) { throw ParameterError("ExampleHn: need n >= 2 and m >= 1"); }
    if (u.size() != n + 1 || v0.size() != m || y0.size() != m) { throw ParameterError("ExampleHn: dimension mismatch"); }
    if (std::abs(lorentz(u, u)) > 1e-12 * u.squaredNorm() || !(u(0) > 0)) { throw ParameterError("ExampleHn: u must be lightlike with u0 > 0"); }
    if (std::abs(v0.norm() - 1) > 1e-12) { throw ParameterError("ExampleHn: v0 must be a unit vector"); }
  }

  Factor factor() const { return Factor::hyperbolic; }
  int factor_dim() const { return n; }
  int dim() const { return n + m; }

  double expo(const ProductPoint & p) const { return std::exp(a * (p.v - y0).dot(v0)); }
  double value(const ProductPoint & p) const { return lorentz(p.h, u) * expo(p); }

  /// u + <x, u> x, the projection of u to T_x H^n.
  Vec u_top(const ProductPoint & p) const { return u + lorentz(p.h, u) * p.h; }

  TangentVec grad(const ProductPoint & p) const
  {
    const double e = expo(p), l = lorentz(p.h, u);
    return {u_top(p) * e, a * l * e * v0};
  }
  double b_of(double f) const { return (1 + a * a) * f * f; }
  double laplace(const ProductPoint & p) const { return (n + a * a) * value(p); }

  double hessian(const ProductPoint & p, const TangentVec & x, const TangentVec & y) const
  {
    const double f = value(p), e = expo(p);
    const Vec ut = u_top(p);
    return lorentz(x.h, y.h) * f + a * a * x.v.dot(v0) * y.v.dot(v0) * f +
           a * e * (lorentz(x.h, ut) * y.v.dot(v0) + lorentz(y.h, ut) * x.v.dot(v0));
  }

  double angle() const { return (1 - a * a) / (1 + a * a); }
  double c1() const { return 1 / std::sqrt(1 + a * a); }
  double c2() const { return std::abs(a) / std::sqrt(1 + a * a); }
};

/// |grad F|^2 - b(F) for ExampleS1 as a polynomial in (s, c, k) = (sin, cos, kappa), reduced by c^2 = 1 - s^2.
inline exact::MPoly s1_gradient_identity_defect()
{
  using exact::MPoly;
  const MPoly::VarNames v{"s", "c", "k"};
  const MPoly s = MPoly::variable(v, "s"), c = MPoly::variable(v, "c"), k = MPoly::variable(v, "k");
  const MPoly one = MPoly::constant(v, 1);
  // horizontal part c * J h with |J h| = 1; vertical part -k c y0 with |y0| = 1
  const MPoly grad2 = c * c + k * k * c * c;
  const MPoly b = (one + k * k) * (one - s * s);
  return (grad2 - b).reduce_power("c", 2, one - s * s);
}

/// |grad F|^2 - b(F) for ExampleHn in (L, E, a, uu, xx) = (<x,u>, exp(...), a, <u,u>, <x,x>), at uu = 0, xx = -1.
inline exact::MPoly hn_gradient_identity_defect()
{
  using exact::MPoly;
  const MPoly::VarNames v{"L", "E", "a", "uu", "xx"};
  const MPoly L = MPoly::variable(v, "L"), E = MPoly::variable(v, "E"), a = MPoly::variable(v, "a");
  const MPoly uu = MPoly::variable(v, "uu"), xx = MPoly::variable(v, "xx");
  const MPoly one = MPoly::constant(v, 1);
  // |u + L x|^2 = uu + 2 L^2 + L^2 xx, vertical part a L E v0
  const MPoly grad2 = E * E * (uu + (L * L).scaled(exact::BigRational(2)) + L * L * xx) + a * a * L * L * E * E;
  const MPoly f = L * E;
  const MPoly b = (one + a * a) * f * f;
  return (grad2 - b).substitute("uu", MPoly::constant(v, 0)).substitute("xx", MPoly::constant(v, -1));
}

/// Laplacian by sum_i d^2/dt^2 F(exp_p(t e_i)) over an orthonormal tangent frame.
template<class Ex>
double laplace_fd(const Ex & ex, const ProductPoint & p, double h = 1e-3)
{
  double acc = 0;
  for (const auto & e : tangent_frame(p)) {
    acc += second_derivative([&](double t) { return ex.value(factor_exp(p, e, t)); }, h);
  }
  return acc;
}

/// Hessian by polarization of second derivatives along geodesics.
template<class Ex>
double hessian_fd(const Ex & ex, const ProductPoint & p, const TangentVec & x, const TangentVec & y, double h = 1e-3)
{
  auto along = [&](const TangentVec & w) {
    return second_derivative([&](double t) { return ex.value(factor_exp(p, w, t)); }, h);
  };
  return (along(x + y) - along(x - y)) / 4;
}

struct LevelSetFrame
{
  TangentVec N;
  double C = 0;
  TangentVec V;
  double grad_norm = 0;
  double v_identity_residual = 0;  // | |V|^2 - (1 - C^2) |
};

template<class Ex>
LevelSetFrame level_set_frame(const Ex & ex, const ProductPoint & p)
{
  const TangentVec g = ex.grad(p);
  const double gn = norm(ex.factor(), g);
  if (!(gn > 1e-12)) { throw NumericalError("level_set_frame: critical point of F"); }
  LevelSetFrame out;
  out.grad_norm = gn;
  out.N = g * (1 / gn);
  const TangentVec pn = out.N.product_structure();
  out.C = inner(ex.factor(), pn, out.N);
  out.V = pn - out.N * out.C;
  out.v_identity_residual = std::abs(inner(ex.factor(), out.V, out.V) - (1 - out.C * out.C));
  return out;
}

/// Orthonormal frame of the level set adapted to the product: horizontal vectors (X, 0),
/// vertical vectors (0, Y), then V/|V|.
struct AdaptedFrame
{
  std::vector<TangentVec> horizontal, vertical;
  TangentVec vhat;

  std::vector<TangentVec> all() const
  {
    std::vector<TangentVec> out = horizontal;
    out.insert(out.end(), vertical.begin(), vertical.end());
    out.push_back(vhat);
    return out;
  }
};

inline AdaptedFrame adapted_frame(const ProductPoint & p, const TangentVec & n)
{
  const Factor f = p.factor;
  AdaptedFrame out;
  const TangentVec pn = n.product_structure();
  const double C = inner(f, pn, n);
  const TangentVec V = pn - n * C;
  const double vn = norm(f, V);

  const double hn = std::sqrt(std::max(0.0, factor_inner(f, n.h, n.h)));
  std::vector<Vec> hb;
  if (hn > 1e-14) { hb.push_back(n.h / hn); }
  for (const auto & e : tangent_frame(p)) {
    if (e.h.norm() == 0) { continue; }
    Vec x = e.h;
    for (const auto & b : hb) { x -= factor_inner(f, x, b) * b; }
    const double l = std::sqrt(std::max(0.0, factor_inner(f, x, x)));
    if (l > 1e-8) { hb.push_back(x / l); }
  }
  for (std::size_t i = hn > 1e-14 ? 1 : 0; i < hb.size(); ++i) { out.horizontal.push_back({hb[i], Vec::Zero(p.v.size())}); }

  const double vnn = n.v.norm();
  std::vector<Vec> vb;
  if (vnn > 1e-14) { vb.push_back(n.v / vnn); }
  for (Eigen::Index i = 0; i < p.v.size(); ++i) {
    Vec y = Vec::Unit(p.v.size(), i);
    for (const auto & b : vb) { y -= y.dot(b) * b; }
    if (y.norm() > 1e-8) { vb.push_back(y / y.norm()); }
  }
  for (std::size_t i = vnn > 1e-14 ? 1 : 0; i < vb.size(); ++i) { out.vertical.push_back({Vec::Zero(p.h.size()), vb[i]}); }
  if (vn > 1e-12) {
    out.vhat = V * (1 / vn);
  } else {
    // |C| = 1: N lies in one factor and the V slot is filled from the other factor
    auto & pool = hn > 1e-14 ? out.vertical : out.horizontal;
    if (pool.empty()) { throw NumericalError("adapted_frame: no direction left for V"); }
    out.vhat = pool.back();
    pool.pop_back();
  }
  return out;
}

/// II(e_i, e_j) = -Hess F(e_i, e_j) / |grad F| in the given frame.
template<class Ex>
Mat second_fundamental_form(const Ex & ex, const ProductPoint & p, const std::vector<TangentVec> & frame, double grad_norm)
{
  const auto d = static_cast<Eigen::Index>(frame.size());
  Mat ii(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      ii(i, j) = -ex.hessian(p, frame[static_cast<std::size_t>(i)], frame[static_cast<std::size_t>(j)]) / grad_norm;
    }
  }
  return ii;
}

struct PrincipalFrameCheck
{
  bool ok = false;
  double av_residual = 0;
  double block_residual = 0;
  Mat shape;  // A in the adapted frame
};

/// A V = 0 and A block-diagonal over {horizontal}, {vertical}, {V}; tolerance 1e-9.
/// The normal can be overridden (for sensitivity checks); by default N = grad F / |grad F|.
template<class Ex>
PrincipalFrameCheck check_principal_frame(const Ex & ex, const ProductPoint & p, const std::optional<TangentVec> & n_override = std::nullopt)
{
  const auto lf = level_set_frame(ex, p);
  TangentVec n = n_override ? *n_override : lf.N;
  n = n * (1 / norm(ex.factor(), n));
  const AdaptedFrame fr = adapted_frame(p, n);
  const auto all = fr.all();
  PrincipalFrameCheck out;
  out.shape = second_fundamental_form(ex, p, all, lf.grad_norm);
  const auto nh = static_cast<Eigen::Index>(fr.horizontal.size());
  const auto nv = static_cast<Eigen::Index>(fr.vertical.size());
  const Eigen::Index iv = nh + nv;
  out.av_residual = out.shape.col(iv).norm();
  for (Eigen::Index i = 0; i < nh; ++i) {
    for (Eigen::Index j = nh; j < nh + nv; ++j) { out.block_residual = std::max(out.block_residual, std::abs(out.shape(i, j))); }
  }
  out.ok = out.av_residual <= 1e-9 && out.block_residual <= 1e-9;
  return out;
}

/// Ambient curvature tensor R(X, Y, Z, W) of the product with factor curvature c.
inline double ambient_curvature(Factor f, const TangentVec & x, const TangentVec & y, const TangentVec & z, const TangentVec & w)
{
  const double c = f == Factor::hyperbolic ? -1.0 : 0.0;  // the circle factor is flat
  auto g = [&](const Vec & a, const Vec & b) { return factor_inner(f, a, b); };
  return c * (g(x.h, w.h) * g(y.h, z.h) - g(x.h, z.h) * g(y.h, w.h));
}

struct CurvatureTables
{
  std::vector<double> principal;                            // eigenvalues of A, ascending
  double H = 0;
  std::array<std::array<std::optional<double>, 3>, 3> sectional{};  // distributions V1, V2, V3
  std::vector<double> ricci;                                // eigenvalues, ascending
  double scalar = 0;
  Mat shape;
};

/// Principal, sectional (Gauss equation), Ricci and scalar curvatures of the level set through p.
inline CurvatureTables curvature_tables(const ExampleHn & ex, const ProductPoint & p)
{
  const auto lf = level_set_frame(ex, p);
  const AdaptedFrame fr = adapted_frame(p, lf.N);
  const auto e = fr.all();
  const Mat ii = second_fundamental_form(ex, p, e, lf.grad_norm);
  CurvatureTables out;
  out.shape = ii;
  Eigen::SelfAdjointEigenSolver<Mat> es(ii);
  if (es.info() != Eigen::Success) { throw NumericalError("curvature_tables: eigen-decomposition failed"); }
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) { out.principal.push_back(es.eigenvalues()(i)); }
  out.H = ii.trace();

  const auto d = static_cast<Eigen::Index>(e.size());
  auto rs = [&](Eigen::Index i, Eigen::Index j, Eigen::Index k, Eigen::Index l) {
    const auto & x = e[static_cast<std::size_t>(i)];
    const auto & y = e[static_cast<std::size_t>(j)];
    const auto & z = e[static_cast<std::size_t>(k)];
    const auto & w = e[static_cast<std::size_t>(l)];
    return ambient_curvature(ex.factor(), x, y, z, w) + ii(i, l) * ii(j, k) - ii(i, k) * ii(j, l);
  };
  const auto nh = static_cast<Eigen::Index>(fr.horizontal.size());
  const auto nv = static_cast<Eigen::Index>(fr.vertical.size());
  const std::array<std::vector<Eigen::Index>, 3> groups = [&] {
    std::array<std::vector<Eigen::Index>, 3> g;
    for (Eigen::Index i = 0; i < nh; ++i) { g[0].push_back(i); }
    for (Eigen::Index i = nh; i < nh + nv; ++i) { g[1].push_back(i); }
    g[2].push_back(nh + nv);
    return g;
  }();
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      const auto & ga = groups[static_cast<std::size_t>(a)];
      const auto & gb = groups[static_cast<std::size_t>(b)];
      if (ga.empty() || gb.empty()) { continue; }
      const Eigen::Index i = ga.front();
      const Eigen::Index j = a == b ? (ga.size() > 1 ? ga[1] : -1) : gb.front();
      if (j < 0) { continue; }
      out.sectional[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = rs(i, j, j, i);
    }
  }
  Mat ric = Mat::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      for (Eigen::Index k = 0; k < d; ++k) { ric(i, j) += rs(i, k, k, j); }
    }
  }
  Eigen::SelfAdjointEigenSolver<Mat> er(ric);
  for (Eigen::Index i = 0; i < er.eigenvalues().size(); ++i) { out.ricci.push_back(er.eigenvalues()(i)); }
  out.scalar = ric.trace();
  return out;
}

/// Seeded random point: hyperbolic factor from a Gaussian spatial part, circle from a uniform angle.
inline ProductPoint random_point(Factor f, int n, int m, std::mt19937_64 & rng, double scale = 1.0)
{
  std::normal_distribution<double> gauss(0.0, scale);
  ProductPoint p;
  p.factor = f;
  if (f == Factor::circle) {
    std::uniform_real_distribution<double> ang(-3.14159265358979, 3.14159265358979);
    const double x = ang(rng);
    p.h = Vec(2);
    p.h << std::cos(x), std::sin(x);
  } else {
    Vec z(n);
    for (int i = 0; i < n; ++i) { z(i) = gauss(rng); }
    p.h = Vec(n + 1);
    p.h(0) = std::sqrt(1 + z.squaredNorm());
    p.h.tail(n) = z;
  }
  p.v = Vec(m);
  for (int i = 0; i < m; ++i) { p.v(i) = gauss(rng); }
  return p;
}

}  // namespace isoparam::geometry
