#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "isoparam/geometry/examples.hpp"

namespace isoparam::geometry {

/// Block isometry: a rotation (circle) or Lorentz matrix (hyperboloid) on the factor, and a rigid
/// motion of R^m in homogeneous coordinates.
struct IsometryElement
{
  Factor factor = Factor::hyperbolic;
  Mat factor_block;
  Mat affine;                        // (m+1) x (m+1), last row (0, ..., 0, 1)
  double construction_residual = 0;  // |g p - p'| plus, for ExampleHn, the u-scaling residual

  ProductPoint apply(const ProductPoint & p) const
  {
    const auto m = p.v.size();
    ProductPoint q;
    q.factor = p.factor;
    q.h = factor_block * p.h;
    q.v = affine.topLeftCorner(m, m) * p.v + affine.topRightCorner(m, 1);
    return q;
  }

  /// Largest violation of orthogonality (Lorentz orthogonality, orthochronous, det 1) and rigidity.
  double metric_residual() const
  {
    const auto d = factor_block.rows();
    const Mat gram = factor == Factor::hyperbolic ? lorentz_gram(d) : Mat::Identity(d, d);
    double r = (factor_block.transpose() * gram * factor_block - gram).cwiseAbs().maxCoeff();
    r = std::max(r, std::abs(factor_block.determinant() - 1));
    if (factor == Factor::hyperbolic && !(factor_block(0, 0) > 0)) { r = std::max(r, 1.0); }
    const auto m = affine.rows() - 1;
    const Mat rot = affine.topLeftCorner(m, m);
    r = std::max(r, (rot.transpose() * rot - Mat::Identity(m, m)).cwiseAbs().maxCoeff());
    r = std::max(r, std::abs(rot.determinant() - 1));
    r = std::max(r, affine.bottomLeftCorner(1, m).cwiseAbs().maxCoeff() + std::abs(affine(m, m) - 1));
    return r;
  }
};

inline double point_distance(const ProductPoint & a, const ProductPoint & b) { return (a.h - b.h).norm() + (a.v - b.v).norm(); }

namespace detail {

inline Mat translation_affine(const Vec & b)
{
  const auto m = b.size();
  Mat a = Mat::Identity(m + 1, m + 1);
  a.topRightCorner(m, 1) = b;
  return a;
}

/// Closest representative of x modulo 2 pi to 0.
inline double wrap(double x) { return std::remainder(x, 2 * std::numbers::pi); }

}  // namespace detail

/// theta = x' - x, B = I, b = y' - y - (theta/kappa) y0; ConstructionError if p, p' lie on different components.
inline IsometryElement transitive_isometry(const ExampleS1 & ex, const ProductPoint & p, const ProductPoint & q)
{
  ex.validate();
  p.require_valid();
  q.require_valid();
  IsometryElement g;
  g.factor = Factor::circle;
  const double dy = (q.v - p.v).dot(ex.y0);
  const double dx = std::atan2(q.h(1), q.h(0)) - std::atan2(p.h(1), p.h(0));
  const double off = detail::wrap(dx - ex.kappa * dy);
  if (std::abs(off) > 1e-9) {
    throw ConstructionError("transitive_isometry: points lie on different level components (phase offset " + std::to_string(off) + ")");
  }
  const double theta = ex.kappa * dy + off;
  g.factor_block = Mat(2, 2);
  g.factor_block << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  // b = y' - y - (theta/kappa) y0 is orthogonal to y0; the K_2 factor adds (theta/kappa) y0 back
  const Vec shift = ex.kappa != 0 ? Vec((theta / ex.kappa) * ex.y0) : Vec(Vec::Zero(p.v.size()));
  const Vec b = q.v - p.v - shift;
  g.affine = detail::translation_affine(b + shift);
  g.construction_residual = point_distance(g.apply(p), q);
  if (g.construction_residual > 1e-9) {
    throw ConstructionError("transitive_isometry: image misses the target by " + std::to_string(g.construction_residual));
  }
  return g;
}

/// Horospherical coordinates of H^n adapted to the light ray of u: with w = e_0, u~ = u / u_0 and E an
/// orthonormal basis of span{w, u~}^perp, every point is D_s T_z w where T_z fixes u~ and D_s scales it by e^s.
struct HorosphericalFrame
{
  Vec w, ut;
  Mat E;
  Mat basis;  // columns w, u~, E

  explicit HorosphericalFrame(const Vec & u)
  {
    const auto d = u.size();
    w = Vec::Unit(d, 0);
    ut = u / u(0);
    Mat sp(d - 1, d - 1);
    sp.col(0) = ut.tail(d - 1).normalized();
    for (Eigen::Index i = 1; i < d - 1; ++i) { sp.col(i) = Vec::Zero(d - 1); }
    Eigen::HouseholderQR<Mat> qr(sp);
    const Mat q = qr.householderQ();
    E = Mat::Zero(d, d - 2);
    E.bottomRows(d - 1) = q.rightCols(d - 2);
    basis = Mat(d, d);
    basis.col(0) = w;
    basis.col(1) = ut;
    basis.rightCols(d - 2) = E;
  }

  double s_of(const Vec & x) const { return -std::log(-lorentz(x, ut)); }
  Vec z_of(const Vec & x) const
  {
    Vec z(E.cols());
    for (Eigen::Index i = 0; i < E.cols(); ++i) { z(i) = lorentz(x, E.col(i)); }
    return z;
  }

  /// D_s T_z as a matrix in standard coordinates.
  Mat element(const Vec & z, double s) const
  {
    const auto d = w.size();
    auto D = [&](const Vec & x) {
      // decompose x = alpha w + beta u~ + E c with <w,u~> = -1, <w,w> = -1
      const double alpha = -lorentz(x, ut);
      const double beta = -lorentz(x, w) - alpha;
      const Vec c = x - alpha * w - beta * ut;
      return Vec(alpha * (std::exp(-s) * w + std::sinh(s) * ut) + beta * std::exp(s) * ut + c);
    };
    Mat images(d, d);
    images.col(0) = D(w + E * z + 0.5 * z.squaredNorm() * ut);
    images.col(1) = D(ut);
    for (Eigen::Index i = 0; i < E.cols(); ++i) { images.col(2 + i) = D(E.col(i) + z(i) * ut); }
    return images * basis.inverse();
  }
};

/// B_0 = g(z', s') g(z, s)^{-1} maps x to x' and scales u by e^{a <y'-y, v0>}; affine part is the translation y' - y.
inline IsometryElement transitive_isometry(const ExampleHn & ex, const ProductPoint & p, const ProductPoint & q)
{
  ex.validate();
  p.require_valid(1e-10);
  q.require_valid(1e-10);
  const double fp = ex.value(p), fq = ex.value(q);
  if (std::abs(fp - fq) > 1e-9 * std::max(1.0, std::abs(fp))) {
    throw ConstructionError("transitive_isometry: points lie on different level sets (" + std::to_string(fp) + " vs " + std::to_string(fq) + ")");
  }
  const HorosphericalFrame fr(ex.u);
  const Mat gp = fr.element(fr.z_of(p.h), fr.s_of(p.h));
  const Mat gq = fr.element(fr.z_of(q.h), fr.s_of(q.h));
  const Mat J = lorentz_gram(p.h.size());
  IsometryElement g;
  g.factor = Factor::hyperbolic;
  g.factor_block = gq * (J * gp.transpose() * J);
  g.affine = detail::translation_affine(q.v - p.v);
  const double delta = (q.v - p.v).dot(ex.v0);
  const Mat adjoint = J * g.factor_block.transpose() * J;
  const double u_scaling = (adjoint * ex.u - std::exp(-ex.a * delta) * ex.u).norm() / ex.u.norm();
  g.construction_residual = point_distance(g.apply(p), q) / std::max(1.0, q.h.norm()) + u_scaling;
  if (g.construction_residual > 1e-9) {
    throw ConstructionError("transitive_isometry: verification residual " + std::to_string(g.construction_residual));
  }
  return g;
}

/// A point on the level set of p: horospherical coordinate z' and vertical part y' are free,
/// s' = s + a <y' - y, v0> keeps F fixed.
inline ProductPoint same_level_point(const ExampleHn & ex, const ProductPoint & p, const Vec & z, const Vec & y)
{
  const HorosphericalFrame fr(ex.u);
  const double s = fr.s_of(p.h) + ex.a * (y - p.v).dot(ex.v0);
  ProductPoint q;
  q.factor = Factor::hyperbolic;
  q.h = fr.element(z, s) * fr.w;
  q.v = y;
  return q;
}

inline ProductPoint same_level_point(const ExampleS1 & ex, const ProductPoint & p, const Vec & y)
{
  const double x = std::atan2(p.h(1), p.h(0)) + ex.kappa * (y - p.v).dot(ex.y0);
  ProductPoint q;
  q.factor = Factor::circle;
  q.h = Vec(2);
  q.h << std::cos(x), std::sin(x);
  q.v = y;
  return q;
}

/// Lorentz-adjoint u-scaling residual |B^* u - e^{-a <y'-y, v0>} u| / |u|.
inline double u_scaling_residual(const ExampleHn & ex, const IsometryElement & g, const ProductPoint & p, const ProductPoint & q)
{
  const Mat J = lorentz_gram(g.factor_block.rows());
  const double delta = (q.v - p.v).dot(ex.v0);
  return (J * g.factor_block.transpose() * J * ex.u - std::exp(-ex.a * delta) * ex.u).norm() / ex.u.norm();
}

}  // namespace isoparam::geometry
