#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "isoparam/error.hpp"
#include "isoparam/exact/mpoly.hpp"
#include "isoparam/kac/kac.hpp"

namespace isoparam::jacobi {

using exact::BigRational;
using exact::MPoly;
using kac::SpaceFormParams;

/// S_tau and C_tau: S' = C, C' = -c tau^2 S, S(0) = 0, C(0) = 1.
struct STC
{
  SpaceFormParams params;

  double S(double r) const
  {
    const double t = params.tau.to_double();
    return params.c > 0 ? std::sin(t * r) / t : std::sinh(t * r) / t;
  }
  double C(double r) const
  {
    const double t = params.tau.to_double();
    return params.c > 0 ? std::cos(t * r) : std::cosh(t * r);
  }
  /// C^2 + c tau^2 S^2, identically 1.
  double pythagoras(double r) const
  {
    const double s = S(r), c = C(r);
    return c * c + params.x_value().to_double() * s * s;
  }

  /// Taylor coefficients of S and C about 0, up to r^order.
  std::vector<BigRational> S_series(unsigned order) const { return series(order, 1); }
  std::vector<BigRational> C_series(unsigned order) const { return series(order, 0); }

private:
  std::vector<BigRational> series(unsigned order, unsigned parity) const
  {
    std::vector<BigRational> out(order + 1, BigRational(0));
    const BigRational mx = -params.x_value();
    for (unsigned k = parity; k <= order; k += 2) {
      out[k] = exact::pow(mx, (k - parity) / 2) / exact::factorial(k);
    }
    return out;
  }
};

inline const MPoly::VarNames & rsc_vars()
{
  static const MPoly::VarNames v{"r", "S", "C"};
  return v;
}

/// sum_{l,q} alpha_l^q r^q S^l C^{n-1-l}, 0 <= l <= n-1, 0 <= q <= m.
class TrigPoly
{
public:
  TrigPoly() = default;
  explicit TrigPoly(const SpaceFormParams & p)
    : params_(p), coeffs_(static_cast<std::size_t>(p.n * (p.m + 1)), BigRational(0))
  {}

  const SpaceFormParams & params() const { return params_; }
  int n() const { return params_.n; }
  int m() const { return params_.m; }

  const BigRational & at(int l, int q) const { return coeffs_.at(index(l, q)); }
  BigRational & at(int l, int q) { return coeffs_.at(index(l, q)); }
  /// Coefficient with zero outside the index box.
  BigRational get(int l, int q) const
  {
    if (l < 0 || l >= n() || q < 0 || q > m()) { return BigRational(0); }
    return at(l, q);
  }

  friend bool operator==(const TrigPoly & a, const TrigPoly & b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const TrigPoly & a, const TrigPoly & b) { return !(a == b); }

  MPoly to_mpoly() const
  {
    const auto & v = rsc_vars();
    MPoly out = MPoly::constant(v, 0);
    for (int q = 0; q <= m(); ++q) {
      for (int l = 0; l < n(); ++l) {
        if (at(l, q).is_zero()) { continue; }
        out += MPoly::monomial(v, {static_cast<unsigned>(q), static_cast<unsigned>(l), static_cast<unsigned>(n() - 1 - l)}, at(l, q));
      }
    }
    return out;
  }

  /// Collects a polynomial in (r, S, C); StructuralError if it is not
  /// homogeneous of degree n-1 in (S, C) or has r-degree above m.
  static TrigPoly from_mpoly(const SpaceFormParams & p, const MPoly & poly)
  {
    TrigPoly out(p);
    if (poly.is_zero()) { return out; }
    if (poly.vars() != rsc_vars()) { throw StructuralError("TrigPoly: expected indeterminates (r, S, C)"); }
    for (const auto & [e, c] : poly.terms()) {
      if (e[1] + e[2] != static_cast<unsigned>(p.n - 1)) {
        throw StructuralError("TrigPoly: term is not of degree n-1 in (S, C): " + poly.to_string());
      }
      if (e[0] > static_cast<unsigned>(p.m)) { throw StructuralError("TrigPoly: r-degree exceeds m: " + poly.to_string()); }
      out.at(static_cast<int>(e[1]), static_cast<int>(e[0])) += c;
    }
    return out;
  }

  /// Value at r from the numeric S_tau, C_tau.
  double eval(double r) const
  {
    const STC stc{params_};
    const double s = stc.S(r), c = stc.C(r);
    double acc = 0;
    for (int q = 0; q <= m(); ++q) {
      for (int l = 0; l < n(); ++l) {
        acc += at(l, q).to_double() * std::pow(r, q) * std::pow(s, l) * std::pow(c, n() - 1 - l);
      }
    }
    return acc;
  }

  nlohmann::json to_json() const
  {
    nlohmann::json j = nlohmann::json::object();
    for (int l = 0; l < n(); ++l) {
      for (int q = 0; q <= m(); ++q) { j[std::to_string(l) + "," + std::to_string(q)] = at(l, q).to_string(); }
    }
    return j;
  }

private:
  std::size_t index(int l, int q) const
  {
    if (l < 0 || l >= n() || q < 0 || q > m()) { throw StructuralError("TrigPoly: index out of range"); }
    return static_cast<std::size_t>(q * n() + l);
  }

  SpaceFormParams params_;
  std::vector<BigRational> coeffs_;
};

/// Derivative by the coefficient recurrence
///   alpha'_l^q = (q+1) alpha_l^{q+1} + (l+1) alpha_{l+1}^q - (n-l) X alpha_{l-1}^q.
inline TrigPoly trig_derive(const TrigPoly & p)
{
  const BigRational x = p.params().x_value();
  TrigPoly out(p.params());
  for (int q = 0; q <= p.m(); ++q) {
    for (int l = 0; l < p.n(); ++l) {
      out.at(l, q) = BigRational(q + 1) * p.get(l, q + 1) + BigRational(l + 1) * p.get(l + 1, q) -
                     BigRational(p.n() - l) * x * p.get(l - 1, q);
    }
  }
  return out;
}

/// The derivation d/dr + C d/dS - X S d/dC on polynomials in (r, S, C).
inline MPoly rsc_derive(const MPoly & f, const BigRational & x)
{
  const auto & v = rsc_vars();
  const MPoly S = MPoly::variable(v, "S"), C = MPoly::variable(v, "C");
  if (f.is_constant()) { return MPoly::constant(v, 0); }
  return f.derive("r") + C * f.derive("S") - (S * f.derive("C")).scaled(x);
}

/// Derivative by term-wise differentiation of the polynomial in (r, S, C).
inline TrigPoly trig_derive_direct(const TrigPoly & p)
{
  return TrigPoly::from_mpoly(p.params(), rsc_derive(p.to_mpoly(), p.params().x_value()));
}

/// Recurrence form, cross-checked against term-wise differentiation.
inline TrigPoly trig_derive_checked(const TrigPoly & p)
{
  TrigPoly a = trig_derive(p);
  if (a != trig_derive_direct(p)) {
    throw VerificationError("trig_derive: recurrence and term-wise differentiation disagree (" + p.params().label() + ")");
  }
  return a;
}

}  // namespace isoparam::jacobi
