#pragma once

#include <string>
#include <vector>

#include "isoparam/error.hpp"
#include "isoparam/exact/matrix.hpp"

namespace isoparam::kac {

using exact::BigRational;
using exact::ExactMatrix;
using exact::MPoly;
using exact::QuadExt;

/// Dimension data of M_c^n x R^m together with tau = C_1.
struct SpaceFormParams
{
  int n = 2;
  int m = 1;
  int c = -1;
  BigRational tau{1, 2};

  void validate() const
  {
    if (n < 2) { throw ParameterError("n must be at least 2, got " + std::to_string(n)); }
    if (m < 1) { throw ParameterError("m must be at least 1, got " + std::to_string(m)); }
    if (c != -1 && c != 1) { throw ParameterError("c must be -1 or 1, got " + std::to_string(c)); }
    if (tau <= BigRational(0) || tau >= BigRational(1)) {
      throw ParameterError("tau must lie in (0,1), got " + tau.to_string());
    }
  }

  /// X = c tau^2.
  BigRational x_value() const { return BigRational(c) * tau * tau; }
  /// d = -c tau^2, the square of the eigenvalue generator mu.
  BigRational mu_squared() const { return -x_value(); }
  int size() const { return (m + 1) * n; }

  std::string label() const
  {
    return "n=" + std::to_string(n) + ",m=" + std::to_string(m) + ",c=" + std::to_string(c) + ",tau=" + tau.to_string();
  }
};

using QE = QuadExt<BigRational>;

/// The n x n tau-Kac matrix over any ring, given the ring value of X = c tau^2.
template<class T>
ExactMatrix<T> kac_matrix(int n, const T & x, const T & zero)
{
  ExactMatrix<T> k(static_cast<std::size_t>(n), static_cast<std::size_t>(n), zero);
  for (int i = 0; i + 1 < n; ++i) {
    k(i, i + 1) = zero + T(i + 1);
    k(i + 1, i) = x * T(-(n - 1 - i));
  }
  return k;
}

/// Block matrix with K on the diagonal and p*I in block (p-1, p), p = 1..m.
template<class T>
ExactMatrix<T> q_matrix(int n, int m, const T & x, const T & zero)
{
  const auto k = kac_matrix(n, x, zero);
  const auto nn = static_cast<std::size_t>(n);
  ExactMatrix<T> q(nn * (m + 1), nn * (m + 1), zero);
  for (int b = 0; b <= m; ++b) {
    for (std::size_t i = 0; i < nn; ++i) {
      for (std::size_t j = 0; j < nn; ++j) { q(b * nn + i, b * nn + j) = k(i, j); }
      if (b < m) { q(b * nn + i, (b + 1) * nn + i) = zero + T(b + 1); }
    }
  }
  return q;
}

inline ExactMatrix<BigRational> build_kac(const SpaceFormParams & p)
{
  p.validate();
  return kac_matrix(p.n, p.x_value(), BigRational(0));
}

inline ExactMatrix<BigRational> build_q(const SpaceFormParams & p)
{
  p.validate();
  return q_matrix(p.n, p.m, p.x_value(), BigRational(0));
}

/// Q^j from the closed form: diagonal blocks K^j and block (p, p+d) equal to
/// binom(j,d) p^(d) K^(j-d) (1-based p, rising factorial p^(d)).
inline ExactMatrix<BigRational> q_power_closed(const SpaceFormParams & p, int j)
{
  p.validate();
  if (j < 0) { throw ParameterError("q_power_closed: exponent must be non-negative"); }
  const BigRational zero(0), one(1);
  const auto k = build_kac(p);
  const auto nn = static_cast<std::size_t>(p.n);
  std::vector<ExactMatrix<BigRational>> kpow{ExactMatrix<BigRational>::identity(nn, zero, one)};
  for (int e = 1; e <= j; ++e) { kpow.push_back(kpow.back() * k); }
  ExactMatrix<BigRational> out(nn * (p.m + 1), nn * (p.m + 1), zero);
  for (int row = 1; row <= p.m + 1; ++row) {
    for (int d = 0; row + d <= p.m + 1 && d <= j; ++d) {
      const BigRational f = exact::binomial(j, d) * exact::rising_factorial(row, static_cast<unsigned>(d));
      const auto & kp = kpow[static_cast<std::size_t>(j - d)];
      for (std::size_t a = 0; a < nn; ++a) {
        for (std::size_t b = 0; b < nn; ++b) {
          out((row - 1) * nn + a, (row - 1 + d) * nn + b) = f * kp(a, b);
        }
      }
    }
  }
  return out;
}

/// Spectrum of K as elements of Q(mu), mu^2 = -c tau^2: lambda_l = (n-1-2l) mu.
/// For c = -1 the eigenvalues are rational and carried with zero mu-part.
inline std::vector<QE> kac_eigenvalues(const SpaceFormParams & p)
{
  p.validate();
  std::vector<QE> out;
  const BigRational d = p.mu_squared();
  for (int l = 0; l < p.n; ++l) {
    const BigRational f(p.n - 1 - 2 * l);
    if (p.c == -1) {
      out.push_back(QE::embed(f * p.tau, d));
    } else {
      out.emplace_back(BigRational(0), f, d);
    }
  }
  return out;
}

/// det(lam I - K) in the indeterminate "lam", checked against the factored
/// product over the quadratic extension.
inline MPoly charpoly_kac(const SpaceFormParams & p)
{
  p.validate();
  const MPoly::VarNames v{"lam"};
  const MPoly lam = MPoly::variable(v, "lam");
  const MPoly zero = MPoly::constant(v, 0);
  const auto k = kac_matrix(p.n, MPoly::constant(v, p.x_value()), zero);
  ExactMatrix<MPoly> a(k.rows(), k.cols(), zero);
  for (std::size_t i = 0; i < k.rows(); ++i) {
    for (std::size_t j = 0; j < k.cols(); ++j) { a(i, j) = (i == j ? lam : zero) - k(i, j); }
  }
  const MPoly cp = exact::bareiss_det(a);

  const MPoly d = MPoly::constant(v, p.mu_squared());
  QuadExt<MPoly> prod = QuadExt<MPoly>::embed(MPoly::constant(v, 1), d);
  for (int l = 0; l < p.n; ++l) {
    prod *= QuadExt<MPoly>(lam, MPoly::constant(v, BigRational(-(p.n - 1 - 2 * l))), d);
  }
  if (!prod.b().is_zero() || prod.a() != cp) {
    throw VerificationError("charpoly_kac(" + p.label() + "): det(lam I - K) = " + cp.to_string() +
                            " but factored product = " + prod.to_string());
  }
  return cp;
}

/// Rank of K; n for even n and n-1 for odd n.
inline std::size_t kac_rank(const SpaceFormParams & p)
{
  const std::size_t r = exact::exact_rank(build_kac(p));
  const std::size_t expected = static_cast<std::size_t>(p.n % 2 == 0 ? p.n : p.n - 1);
  if (r != expected) {
    throw VerificationError("kac_rank(" + p.label() + "): rank " + std::to_string(r) + ", expected " +
                            std::to_string(expected));
  }
  return r;
}

/// Left eigenvectors x_l K = lambda_l x_l, first nonzero coordinate equal to 1.
inline std::vector<std::vector<QE>> kac_left_eigenvectors(const SpaceFormParams & p)
{
  const auto k = build_kac(p);
  const BigRational d = p.mu_squared();
  const QE one = QE::embed(BigRational(1), d);
  const auto kq = k.map([&](const BigRational & r) { return QE::embed(r, d); });
  std::vector<std::vector<QE>> out;
  for (const auto & lam : kac_eigenvalues(p)) {
    auto shifted = kq;
    for (std::size_t i = 0; i < shifted.rows(); ++i) { shifted(i, i) -= lam; }
    const auto ns = exact::nullspace(shifted.transpose(), one);
    if (ns.size() != 1) {
      throw VerificationError("kac eigenspace (" + p.label() + ") has dimension " + std::to_string(ns.size()));
    }
    auto x = ns.front();
    std::size_t first = 0;
    while (first < x.size() && x[first].is_zero()) { ++first; }
    const QE s = x[first].inverse();
    for (auto & e : x) { e = e * s; }
    out.push_back(std::move(x));
  }
  return out;
}

/// Coordinates of e_1 = (1,0,...,0) in the basis of left eigenvectors.
inline std::vector<QE> e1_eigen_coordinates(const SpaceFormParams & p)
{
  const auto vecs = kac_left_eigenvectors(p);
  const BigRational d = p.mu_squared();
  const QE zero = QE::embed(BigRational(0), d);
  const QE one = QE::embed(BigRational(1), d);
  const auto nn = static_cast<std::size_t>(p.n);
  ExactMatrix<QE> basis_t(nn, nn, zero);
  for (std::size_t l = 0; l < nn; ++l) {
    for (std::size_t j = 0; j < nn; ++j) { basis_t(j, l) = vecs[l][j]; }
  }
  std::vector<QE> e1(nn, zero);
  e1[0] = one;
  const auto coords = exact::solve_unique(basis_t, e1, one);
  for (std::size_t l = 0; l < nn; ++l) {
    if (coords[l].is_zero()) {
      throw VerificationError("e1_eigen_coordinates(" + p.label() + "): coordinate " + std::to_string(l) + " vanishes");
    }
  }
  return coords;
}

/// Checks x_{i,l} Q = lambda_l x_{i,l} + (i+1) x_{i+1,l} for i < m and
/// x_{m,l} Q = lambda_l x_{m,l}, where x_{i,l} places x_l in block i.
inline bool verify_eigen_relation(const SpaceFormParams & p)
{
  const auto vecs = kac_left_eigenvectors(p);
  const auto lams = kac_eigenvalues(p);
  const BigRational d = p.mu_squared();
  const QE zero = QE::embed(BigRational(0), d);
  const auto q = build_q(p).map([&](const BigRational & r) { return QE::embed(r, d); });
  const auto nn = static_cast<std::size_t>(p.n);
  auto placed = [&](std::size_t l, int block) {
    std::vector<QE> v(q.rows(), zero);
    for (std::size_t j = 0; j < nn; ++j) { v[block * nn + j] = vecs[l][j]; }
    return v;
  };
  for (std::size_t l = 0; l < nn; ++l) {
    for (int i = 0; i <= p.m; ++i) {
      const auto lhs = placed(l, i) * q;
      auto rhs = placed(l, i);
      for (auto & e : rhs) { e = lams[l] * e; }
      if (i < p.m) {
        const auto next = placed(l, i + 1);
        const QE f = QE::embed(BigRational(i + 1), d);
        for (std::size_t j = 0; j < rhs.size(); ++j) { rhs[j] += f * next[j]; }
      }
      if (lhs != rhs) {
        throw VerificationError("eigen relation (" + p.label() + ") fails at l=" + std::to_string(l) +
                                ", i=" + std::to_string(i));
      }
    }
  }
  return true;
}

}  // namespace isoparam::kac
