#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "isoparam/error.hpp"
#include "isoparam/exact/mpoly.hpp"

namespace isoparam::jacobi {

using exact::BigRational;
using exact::MPoly;

/// One factor of the product: curvature sign c in {-1, 0, 1} and the angle factor C (C_1 or C_2).
struct Branch
{
  int c = -1;
  double C = 1;
};

inline double branch_S(int c, double x) { return c > 0 ? std::sin(x) : c < 0 ? std::sinh(x) : x; }
inline double branch_C(int c, double x) { return c > 0 ? std::cos(x) : c < 0 ? std::cosh(x) : 1.0; }

/// (c C S(Ct) + lambda C(Ct)) / (C(Ct) - (lambda/C) S(Ct)).
inline double parallel_principal_branch(double lambda, const Branch & b, double t)
{
  if (b.c < -1 || b.c > 1) { throw ParameterError("parallel_principal_branch: c must be -1, 0 or 1"); }
  if (b.C == 0) { throw ParameterError("parallel_principal_branch: C must be nonzero"); }
  const double x = b.C * t;
  const double s = branch_S(b.c, x), co = branch_C(b.c, x);
  const double den = co - (lambda / b.C) * s;
  if (std::abs(den) <= 1e-14 * (std::abs(co) + std::abs(lambda / b.C * s))) {
    throw FocalPointError("parallel_principal_branch: denominator vanishes at t = " + std::to_string(t));
  }
  const double num = (b.c == 0 ? 0.0 : b.c * b.C * s) + lambda * co;
  return num / den;
}

/// numerator - lambda * denominator as a polynomial in (S, C) = (S(Ct), C(Ct)),
/// zero exactly when lambda is a fixed point of the flow.
inline MPoly branch_fixed_point_defect(const BigRational & lambda, int c, const BigRational & C)
{
  if (C.is_zero()) { throw ParameterError("branch_fixed_point_defect: C must be nonzero"); }
  const MPoly::VarNames v{"S", "C"};
  const MPoly s = MPoly::variable(v, "S"), co = MPoly::variable(v, "C");
  const MPoly c_of = c == 0 ? MPoly::constant(v, 1) : co;
  const MPoly num = s.scaled(BigRational(c) * C) + c_of.scaled(lambda);
  const MPoly den = c_of - s.scaled(lambda / C);
  return num - den.scaled(lambda);
}

/// sum lambda_H^2 = (n-1) C_1^2 + ((1+C)/(1-C))^2 sum lambda_R^2 with C = 2 C_1^2 - 1, n-1 = |lambda_H|.
inline bool check_sum_squares_identity(const std::vector<BigRational> & lh, const std::vector<BigRational> & lr, const BigRational & c1)
{
  const BigRational C = BigRational(2) * c1 * c1 - BigRational(1);
  if (C == BigRational(1)) { throw ParameterError("check_sum_squares_identity: C = 1 is excluded"); }
  BigRational left(0), right_r(0);
  for (const auto & x : lh) { left += x * x; }
  for (const auto & x : lr) { right_r += x * x; }
  const BigRational f = (BigRational(1) + C) / (BigRational(1) - C);
  return left == BigRational(static_cast<long>(lh.size())) * c1 * c1 + f * f * right_r;
}

/// Floating-point form, relative tolerance 1e-12.
inline bool check_sum_squares_identity(const std::vector<double> & lh, const std::vector<double> & lr, double c1)
{
  const double C = 2 * c1 * c1 - 1;
  if (C == 1) { throw ParameterError("check_sum_squares_identity: C = 1 is excluded"); }
  double left = 0, right_r = 0;
  for (double x : lh) { left += x * x; }
  for (double x : lr) { right_r += x * x; }
  const double f = (1 + C) / (1 - C);
  const double right = static_cast<double>(lh.size()) * c1 * c1 + f * f * right_r;
  return std::abs(left - right) <= 1e-12 * std::max({1.0, std::abs(left), std::abs(right)});
}

}  // namespace isoparam::jacobi
