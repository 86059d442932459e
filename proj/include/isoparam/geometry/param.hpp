#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "isoparam/geometry/examples.hpp"

namespace isoparam::geometry {

/// Phi(x) = (cos<x,x0>, sin<x,x0>, x) on S^1 x R^m.
inline ProductPoint param_phi(const Vec & x, const Vec & x0)
{
  if (x.size() != x0.size()) { throw ParameterError("param_phi: x and x0 differ in dimension"); }
  if (x0.norm() == 0) { throw ParameterError("param_phi: x0 must be nonzero"); }
  const double s = x.dot(x0);
  ProductPoint p;
  p.factor = Factor::circle;
  p.h = Vec(2);
  p.h << std::cos(s), std::sin(s);
  p.v = x;
  return p;
}

/// The ExampleS1 instance whose zero level contains the image of param_phi.
inline ExampleS1 phi_example(const Vec & x0)
{
  if (x0.norm() == 0) { throw ParameterError("phi_example: x0 must be nonzero"); }
  return ExampleS1::make(static_cast<int>(x0.size()), x0.norm(), x0 / x0.norm());
}

/// Horosphere gamma(x) = w + E x + |x|^2/2 u with <w,w> = -1, <w,u> = -1, <u,u> = 0 and
/// the columns of E orthonormal and orthogonal to w, u. The unit normal u - gamma points toward u.
struct HorosphereChart
{
  int n = 2;
  Vec w, u;
  Mat E;

  static HorosphereChart standard(int n)
  {
    if (n < 2) { throw ParameterError("HorosphereChart: n must be at least 2"); }
    HorosphereChart c;
    c.n = n;
    c.w = Vec::Unit(n + 1, 0);
    c.u = Vec::Unit(n + 1, 0) + Vec::Unit(n + 1, 1);
    c.E = Mat::Zero(n + 1, n - 1);
    for (int i = 0; i < n - 1; ++i) { c.E(i + 2, i) = 1; }
    return c;
  }

  Vec gamma(const Vec & x) const { return w + E * x + 0.5 * x.squaredNorm() * u; }
  Vec normal(const Vec & x) const { return u - gamma(x); }
  /// d gamma / dx_i = E_i + x_i u; the normal has derivative -d gamma / dx_i.
  Vec dgamma(const Vec & x, int i) const { return E.col(i) + x(i) * u; }
};

/// Affine hyperplane gamma_2(y) = point + E y with unit normal N.
struct HyperplaneChart
{
  Vec point;
  Mat E;
  Vec normal;

  static HyperplaneChart standard(int m, const Vec & normal, const Vec & point)
  {
    if (normal.size() != m || point.size() != m) { throw ParameterError("HyperplaneChart: dimension mismatch"); }
    HyperplaneChart c;
    c.point = point;
    c.normal = normal / normal.norm();
    Mat basis(m, m);
    basis.col(0) = c.normal;
    for (int i = 1; i < m; ++i) { basis.col(i) = Vec::Zero(m); }
    Eigen::HouseholderQR<Mat> qr(basis);
    Mat q = qr.householderQ();
    c.E = q.rightCols(m - 1);
    return c;
  }

  Vec gamma(const Vec & y) const { return point + E * y; }
};

/// Psi(t, x, y) = (cosh(t sqrt eps) gamma_1(x) + sinh(t sqrt eps) N_1(x), gamma_2(y) + t sqrt(1 - eps) N_2).
inline ProductPoint param_psi(double t, const Vec & x, const Vec & y, double eps, const HorosphereChart & h, const HyperplaneChart & v)
{
  if (!(eps > 0 && eps < 1)) { throw ParameterError("param_psi: eps must lie in (0,1), got " + std::to_string(eps)); }
  if (x.size() != h.n - 1 || y.size() != v.E.cols()) { throw ParameterError("param_psi: chart dimension mismatch"); }
  const double se = std::sqrt(eps);
  ProductPoint p;
  p.factor = Factor::hyperbolic;
  p.h = std::cosh(t * se) * h.gamma(x) + std::sinh(t * se) * h.normal(x);
  p.v = v.gamma(y) + t * std::sqrt(1 - eps) * v.normal;
  return p;
}

/// The ExampleHn instance with a level set containing the image of param_psi: u and v0 from the
/// charts, y0 the hyperplane base point, a = sqrt(eps / (1 - eps)) (so eps = a^2 / (1 + a^2)).
inline ExampleHn psi_example(double eps, const HorosphereChart & h, const HyperplaneChart & v)
{
  if (!(eps > 0 && eps < 1)) { throw ParameterError("psi_example: eps must lie in (0,1)"); }
  return ExampleHn::make(h.n, static_cast<int>(v.normal.size()), h.u, v.normal, v.point, std::sqrt(eps / (1 - eps)));
}

inline double eps_from_a(double a) { return a * a / (1 + a * a); }

/// Induced metric of Psi in the coordinates (t, x_1..x_{n-1}, y_1..y_{m-1}) from the analytic derivatives.
inline Mat psi_metric(const Vec & s, double eps, const HorosphereChart & h, const HyperplaneChart & v)
{
  const int nx = h.n - 1;
  const auto ny = static_cast<int>(v.E.cols());
  const double t = s(0), se = std::sqrt(eps);
  const Vec x = s.segment(1, nx);
  const double ch = std::cosh(t * se), sh = std::sinh(t * se);
  const int d = 1 + nx + ny;
  std::vector<Vec> dh(static_cast<std::size_t>(d)), dv(static_cast<std::size_t>(d));
  dh[0] = se * (sh * h.gamma(x) + ch * h.normal(x));
  dv[0] = std::sqrt(1 - eps) * v.normal;
  for (int i = 0; i < nx; ++i) {
    dh[static_cast<std::size_t>(1 + i)] = (ch - sh) * h.dgamma(x, i);
    dv[static_cast<std::size_t>(1 + i)] = Vec::Zero(v.normal.size());
  }
  for (int j = 0; j < ny; ++j) {
    dh[static_cast<std::size_t>(1 + nx + j)] = Vec::Zero(h.n + 1);
    dv[static_cast<std::size_t>(1 + nx + j)] = v.E.col(j);
  }
  Mat g(d, d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      const auto ia = static_cast<std::size_t>(a), ib = static_cast<std::size_t>(b);
      g(a, b) = lorentz(dh[ia], dh[ib]) + dv[ia].dot(dv[ib]);
    }
  }
  return g;
}

/// Sectional curvatures of a metric given in coordinates, from finite-difference derivatives of g
/// (4th-order stencils): R_iklm = 1/2 (g_im,kl + g_kl,im - g_il,km - g_km,il) + g_np (G^n_kl G^p_im - G^n_km G^p_il).
class CoordinateCurvature
{
public:
  using MetricFn = std::function<Mat(const Vec &)>;

  CoordinateCurvature(MetricFn g, Vec s0, double h = 1e-3) : g_(std::move(g)), s0_(std::move(s0)), h_(h)
  {
    d_ = s0_.size();
    g0_ = g_(s0_);
    ginv_ = g0_.inverse();
    dg_.resize(static_cast<std::size_t>(d_));
    for (Eigen::Index a = 0; a < d_; ++a) { dg_[static_cast<std::size_t>(a)] = first(a); }
    ddg_.assign(static_cast<std::size_t>(d_ * d_), Mat());
    for (Eigen::Index a = 0; a < d_; ++a) {
      for (Eigen::Index b = a; b < d_; ++b) {
        ddg_[static_cast<std::size_t>(a * d_ + b)] = ddg_[static_cast<std::size_t>(b * d_ + a)] = second(a, b);
      }
    }
  }

  const Mat & metric() const { return g0_; }

  double riemann(Eigen::Index i, Eigen::Index k, Eigen::Index l, Eigen::Index m) const
  {
    double r = 0.5 * (dd(k, l)(i, m) + dd(i, m)(k, l) - dd(k, m)(i, l) - dd(i, l)(k, m));
    for (Eigen::Index n = 0; n < d_; ++n) {
      for (Eigen::Index p = 0; p < d_; ++p) {
        r += ginv_(n, p) * (gamma_low(n, k, l) * gamma_low(p, i, m) - gamma_low(n, k, m) * gamma_low(p, i, l));
      }
    }
    return r;
  }

  /// Sectional curvature of the coordinate plane (i, k).
  double sectional(Eigen::Index i, Eigen::Index k) const
  {
    return riemann(i, k, i, k) / (g0_(i, i) * g0_(k, k) - g0_(i, k) * g0_(i, k));
  }

private:
  const Mat & dd(Eigen::Index a, Eigen::Index b) const { return ddg_[static_cast<std::size_t>(a * d_ + b)]; }
  /// Gamma_{p,kl} = 1/2 (g_pk,l + g_pl,k - g_kl,p).
  double gamma_low(Eigen::Index p, Eigen::Index k, Eigen::Index l) const
  {
    const auto & D = dg_;
    return 0.5 * (D[static_cast<std::size_t>(l)](p, k) + D[static_cast<std::size_t>(k)](p, l) - D[static_cast<std::size_t>(p)](k, l));
  }
  Mat at(Eigen::Index a, double da, Eigen::Index b = -1, double db = 0) const
  {
    Vec s = s0_;
    s(a) += da;
    if (b >= 0) { s(b) += db; }
    return g_(s);
  }
  Mat first(Eigen::Index a) const
  {
    const double h = h_;
    return (-at(a, 2 * h) + 8 * at(a, h) - 8 * at(a, -h) + at(a, -2 * h)) / (12 * h);
  }
  Mat second(Eigen::Index a, Eigen::Index b) const
  {
    const double h = h_;
    static const double w[4] = {-1, 8, -8, 1};
    static const double o[4] = {2, 1, -1, -2};
    Mat acc = Mat::Zero(d_, d_);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        if (a == b) { continue; }
        acc += w[i] * w[j] * at(a, o[i] * h, b, o[j] * h);
      }
    }
    if (a == b) {
      return (-at(a, 2 * h) + 16 * at(a, h) - 30 * g0_ + 16 * at(a, -h) - at(a, -2 * h)) / (12 * h * h);
    }
    return acc / (144 * h * h);
  }

  MetricFn g_;
  Vec s0_;
  double h_;
  Eigen::Index d_ = 0;
  Mat g0_, ginv_;
  std::vector<Mat> dg_;
  std::vector<Mat> ddg_;
};

}  // namespace isoparam::geometry
