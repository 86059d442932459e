#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "isoparam/error.hpp"

namespace isoparam::geometry {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Circle S^1 in R^2 or the hyperboloid model of H^n in L^{n+1}.
enum class Factor { circle, hyperbolic };

/// Lorentz form diag(-1, 1, ..., 1).
inline double lorentz(const Vec & a, const Vec & b) { return -a(0) * b(0) + a.tail(a.size() - 1).dot(b.tail(b.size() - 1)); }

inline Mat lorentz_gram(Eigen::Index dim)
{
  Mat j = Mat::Identity(dim, dim);
  j(0, 0) = -1;
  return j;
}

inline double factor_inner(Factor f, const Vec & a, const Vec & b) { return f == Factor::hyperbolic ? lorentz(a, b) : a.dot(b); }

struct ProductPoint
{
  Factor factor = Factor::hyperbolic;
  Vec h;
  Vec v;

  /// Largest violation of the model constraint.
  double model_residual() const
  {
    if (factor == Factor::circle) { return std::abs(h.squaredNorm() - 1); }
    return std::abs(lorentz(h, h) + 1) + (h(0) > 0 ? 0.0 : 1.0);
  }
  void require_valid(double tol = 1e-12) const
  {
    if (factor == Factor::circle && h.size() != 2) { throw InputError("ProductPoint: circle factor needs a vector in R^2"); }
    if (model_residual() > tol * std::max(1.0, h.squaredNorm())) {
      throw InputError("ProductPoint: point is off the model (residual " + std::to_string(model_residual()) + ")");
    }
  }
};

struct TangentVec
{
  Vec h;
  Vec v;

  TangentVec operator+(const TangentVec & o) const { return {h + o.h, v + o.v}; }
  TangentVec operator-(const TangentVec & o) const { return {h - o.h, v - o.v}; }
  TangentVec operator*(double s) const { return {h * s, v * s}; }
  friend TangentVec operator*(double s, const TangentVec & t) { return t * s; }
  /// P(X^h, X^v) = (X^h, -X^v).
  TangentVec product_structure() const { return {h, -v}; }
};

/// Product metric: Lorentz (or Euclidean) on the h-part, Euclidean on the v-part.
inline double inner(Factor f, const TangentVec & a, const TangentVec & b) { return factor_inner(f, a.h, b.h) + a.v.dot(b.v); }
inline double norm(Factor f, const TangentVec & a) { return std::sqrt(std::max(0.0, inner(f, a, a))); }

inline double tangency_residual(const ProductPoint & p, const TangentVec & w)
{
  return std::abs(factor_inner(p.factor, p.h, w.h));
}

inline void require_tangent(const ProductPoint & p, const TangentVec & w, double tol = 1e-12)
{
  if (w.h.size() != p.h.size() || w.v.size() != p.v.size()) { throw InputError("TangentVec: dimension mismatch"); }
  if (tangency_residual(p, w) > tol * std::max(1.0, w.h.norm() * p.h.norm())) {
    throw InputError("TangentVec: not tangent (residual " + std::to_string(tangency_residual(p, w)) + ")");
  }
}

/// Geodesic of the product metric: great circle or cosh/sinh curve on the factor, a line on R^m.
inline ProductPoint factor_exp(const ProductPoint & p, const TangentVec & w, double t)
{
  require_tangent(p, w, 1e-10);
  ProductPoint q = p;
  q.v = p.v + t * w.v;
  const double len = std::sqrt(std::max(0.0, factor_inner(p.factor, w.h, w.h)));
  if (len == 0) { return q; }
  const double s = len * t;
  if (p.factor == Factor::circle) {
    q.h = std::cos(s) * p.h + std::sin(s) / len * w.h;
  } else {
    q.h = std::cosh(s) * p.h + std::sinh(s) / len * w.h;
  }
  return q;
}

/// Projection of an ambient vector onto the factor tangent space at h.
inline Vec factor_project(Factor f, const Vec & h, const Vec & x)
{
  return f == Factor::hyperbolic ? Vec(x + lorentz(x, h) * h) : Vec(x - x.dot(h) * h);
}

/// Orthonormal basis of T_p: factor directions first, then the standard basis of R^m.
inline std::vector<TangentVec> tangent_frame(const ProductPoint & p)
{
  std::vector<TangentVec> frame;
  const Eigen::Index dh = p.h.size(), dv = p.v.size();
  const Vec zh = Vec::Zero(dh), zv = Vec::Zero(dv);
  if (p.factor == Factor::circle) {
    Vec j(2);
    j << -p.h(1), p.h(0);
    frame.push_back({j, zv});
  } else {
    std::vector<Vec> basis;
    for (Eigen::Index i = 1; i < dh; ++i) {
      Vec x = factor_project(p.factor, p.h, Vec::Unit(dh, i));
      for (const auto & b : basis) { x -= lorentz(x, b) * b; }
      const double n2 = lorentz(x, x);
      if (!(n2 > 1e-20)) { throw NumericalError("tangent_frame: degenerate Gram-Schmidt step"); }
      basis.push_back(x / std::sqrt(n2));
    }
    for (const auto & b : basis) { frame.push_back({b, zv}); }
  }
  for (Eigen::Index i = 0; i < dv; ++i) { frame.push_back({zh, Vec::Unit(dv, i)}); }
  return frame;
}

/// Second derivative at 0 of f along a geodesic: 4th-order central stencil at h and h/2, one Richardson step.
template<class F>
double second_derivative(F && f, double h)
{
  auto d2 = [&](double s) { return (-f(2 * s) + 16 * f(s) - 30 * f(0.0) + 16 * f(-s) - f(-2 * s)) / (12 * s * s); };
  const double a = d2(h), b = d2(h / 2);
  return b + (b - a) / 15;
}

}  // namespace isoparam::geometry
