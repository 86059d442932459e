#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "isoparam/coeff/system.hpp"
#include "isoparam/exact/matrix.hpp"
#include "isoparam/jacobi/trigpoly.hpp"

namespace isoparam::jacobi {

using exact::ExactMatrix;

/// Symmetric (n+m-1) x (n+m-1) shape operator in the adapted frame: indices
/// 0..m-1 are the Euclidean rows (U_m at index m-1), the rest the space-form rows.
class ShapeMatrix
{
public:
  ShapeMatrix() = default;
  explicit ShapeMatrix(ExactMatrix<BigRational> a) : a_(std::move(a))
  {
    if (!a_.square()) { throw InputError("ShapeMatrix: matrix is not square"); }
    for (std::size_t i = 0; i < a_.rows(); ++i) {
      for (std::size_t j = i + 1; j < a_.cols(); ++j) {
        if (a_(i, j) != a_(j, i)) {
          throw InputError("ShapeMatrix: not symmetric at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
        }
      }
    }
  }

  static ShapeMatrix zero(const SpaceFormParams & p)
  {
    const auto d = dim(p);
    return ShapeMatrix(ExactMatrix<BigRational>(d, d, BigRational(0)));
  }
  static ShapeMatrix identity(const SpaceFormParams & p)
  {
    return ShapeMatrix(ExactMatrix<BigRational>::identity(dim(p), BigRational(0), BigRational(1)));
  }
  /// Integer entries in [lo, hi], symmetric by construction.
  static ShapeMatrix random(const SpaceFormParams & p, std::uint64_t seed, int lo = -3, int hi = 3)
  {
    const auto d = dim(p);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(lo, hi);
    ExactMatrix<BigRational> a(d, d, BigRational(0));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i; j < d; ++j) { a(i, j) = a(j, i) = BigRational(dist(rng)); }
    }
    return ShapeMatrix(std::move(a));
  }

  static std::size_t dim(const SpaceFormParams & p) { return static_cast<std::size_t>(p.n + p.m - 1); }

  const ExactMatrix<BigRational> & a() const { return a_; }
  std::size_t size() const { return a_.rows(); }
  BigRational trace() const
  {
    BigRational t(0);
    for (std::size_t i = 0; i < size(); ++i) { t += a_(i, i); }
    return t;
  }

private:
  ExactMatrix<BigRational> a_;
};

namespace detail {

inline void require_dims(const ShapeMatrix & a, const SpaceFormParams & p)
{
  p.validate();
  if (a.size() != ShapeMatrix::dim(p)) {
    throw InputError("shape matrix has size " + std::to_string(a.size()) + ", expected n+m-1 = " + std::to_string(ShapeMatrix::dim(p)));
  }
}

inline MPoly rsc(const std::string & name) { return MPoly::variable(rsc_vars(), name); }
inline MPoly rsc_const(const BigRational & c) { return MPoly::constant(rsc_vars(), c); }

}  // namespace detail

/// B(r): rows i <= m are delta_ij - a_ij r, rows i > m are delta_ij C - a_ij S.
inline ExactMatrix<MPoly> build_B(const ShapeMatrix & A, const SpaceFormParams & params)
{
  detail::require_dims(A, params);
  const MPoly r = detail::rsc("r"), S = detail::rsc("S"), C = detail::rsc("C");
  const MPoly one = detail::rsc_const(1), zero = detail::rsc_const(0);
  const std::size_t d = A.size();
  const auto m = static_cast<std::size_t>(params.m);
  ExactMatrix<MPoly> b(d, d, zero);
  for (std::size_t i = 0; i < d; ++i) {
    const bool top = i < m;
    for (std::size_t j = 0; j < d; ++j) {
      const MPoly diag = i == j ? (top ? one : C) : zero;
      b(i, j) = diag - (top ? r : S).scaled(A.a()(i, j));
    }
  }
  return b;
}

/// B'(r) under S' = C, C' = -X S.
inline ExactMatrix<MPoly> build_B_prime(const ShapeMatrix & A, const SpaceFormParams & params)
{
  const BigRational x = params.x_value();
  return build_B(A, params).map([&](const MPoly & p) { return rsc_derive(p, x); });
}

/// D(r) = det B(r) collected as a TrigPoly; D(0) = 1 is asserted.
inline TrigPoly det_B(const ShapeMatrix & A, const SpaceFormParams & params)
{
  const TrigPoly d = TrigPoly::from_mpoly(params, exact::bareiss_det(build_B(A, params)));
  if (d.at(0, 0) != BigRational(1)) { throw VerificationError("det_B: D(0) = " + d.at(0, 0).to_string() + " != 1"); }
  return d;
}

using AlphaTable = std::vector<TrigPoly>;

/// Entries D^(k), k = 0..kmax, each step checked against term-wise differentiation.
inline AlphaTable alpha_table(const ShapeMatrix & A, const SpaceFormParams & params, int kmax)
{
  if (kmax < 1) { throw ParameterError("alpha_table: kmax must be at least 1"); }
  AlphaTable t{det_B(A, params)};
  for (int k = 0; k < kmax; ++k) { t.push_back(trig_derive_checked(t.back())); }
  return t;
}

/// Index of the first entry k >= 1 with table[k] != trig_derive(table[k-1]), or -1.
inline long first_recurrence_mismatch(const AlphaTable & t)
{
  for (std::size_t k = 1; k < t.size(); ++k) {
    if (t[k] != trig_derive(t[k - 1])) { return static_cast<long>(k); }
  }
  return -1;
}

namespace detail {

/// Truncated power series in r with rational coefficients.
using Series = std::vector<BigRational>;

inline Series series_mul(const Series & a, const Series & b)
{
  Series c(a.size(), BigRational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) { continue; }
    for (std::size_t j = 0; i + j < c.size(); ++j) { c[i + j] += a[i] * b[j]; }
  }
  return c;
}

inline Series series_derive(const Series & a)
{
  Series d(a.size(), BigRational(0));
  for (std::size_t i = 1; i < a.size(); ++i) { d[i - 1] = a[i] * BigRational(static_cast<long>(i)); }
  return d;
}

/// 1/a for a(0) != 0.
inline Series series_inverse(const Series & a)
{
  if (a.front().is_zero()) { throw ArithmeticError("series_inverse: zero constant term"); }
  Series b(a.size(), BigRational(0));
  b[0] = BigRational(1) / a[0];
  for (std::size_t k = 1; k < a.size(); ++k) {
    BigRational acc(0);
    for (std::size_t j = 1; j <= k; ++j) { acc += a[j] * b[k - j]; }
    b[k] = -acc * b[0];
  }
  return b;
}

/// Taylor series of D(r) about 0 from the closed-form series of S and C.
inline Series d_series(const TrigPoly & d, unsigned order)
{
  const STC stc{d.params()};
  const Series s = stc.S_series(order), c = stc.C_series(order);
  Series out(order + 1, BigRational(0));
  for (int q = 0; q <= d.m(); ++q) {
    for (int l = 0; l < d.n(); ++l) {
      if (d.at(l, q).is_zero()) { continue; }
      Series t(order + 1, BigRational(0));
      if (static_cast<unsigned>(q) > order) { continue; }
      t[static_cast<std::size_t>(q)] = d.at(l, q);
      for (int i = 0; i < l; ++i) { t = series_mul(t, s); }
      for (int i = 0; i < d.n() - 1 - l; ++i) { t = series_mul(t, c); }
      for (std::size_t i = 0; i <= order; ++i) { out[i] += t[i]; }
    }
  }
  return out;
}

}  // namespace detail

/// phi[k-1] = phi_k(0), k = 1..kmax.
struct PhiVector
{
  std::vector<BigRational> phi;
  const BigRational & at(int k) const { return phi.at(static_cast<std::size_t>(k - 1)); }
};

/// phi_k(0) by the chain psi_1 = -H, psi_{k+1} = psi_k' - psi_k H with
/// H = -D'/D expanded as a power series about r = 0 (D(0) = 1).
inline PhiVector phi_vector_chain(const TrigPoly & d, int kmax)
{
  const auto order = static_cast<unsigned>(kmax + 2);
  const detail::Series ds = detail::d_series(d, order);
  detail::Series h = detail::series_mul(detail::series_derive(ds), detail::series_inverse(ds));
  for (auto & v : h) { v = -v; }
  detail::Series psi = h;
  for (auto & v : psi) { v = -v; }
  PhiVector out;
  for (int k = 1; k <= kmax; ++k) {
    const detail::Series prod = detail::series_mul(psi, h);
    detail::Series next = detail::series_derive(psi);
    for (std::size_t i = 0; i < next.size(); ++i) { next[i] -= prod[i]; }
    psi = std::move(next);
    out.phi.push_back(-psi[0]);
  }
  return out;
}

/// phi_k(0) = -alpha_{0,k+1}^0 for k = 1..kmax, cross-checked by the psi chain.
inline PhiVector phi_vector(const AlphaTable & table)
{
  if (table.size() < 3) { throw ParameterError("phi_vector: table needs at least entries 0..2"); }
  const int kmax = static_cast<int>(table.size()) - 2;
  PhiVector out;
  for (int k = 1; k <= kmax; ++k) { out.phi.push_back(-table[static_cast<std::size_t>(k + 1)].at(0, 0)); }
  const PhiVector chain = phi_vector_chain(table.front(), kmax);
  for (int k = 1; k <= kmax; ++k) {
    if (out.at(k) != chain.at(k)) {
      throw VerificationError("phi_vector: phi_" + std::to_string(k) + "(0) = " + out.at(k).to_string() + " from the table but " +
                              chain.at(k).to_string() + " from the psi chain");
    }
  }
  return out;
}

inline PhiVector phi_vector(const ShapeMatrix & A, const SpaceFormParams & params, int kmax)
{
  return phi_vector(alpha_table(A, params, kmax + 1));
}

/// xi_0 = (alpha_{l,0}^q) in flat order q*n + l without (0,0).
inline std::vector<BigRational> xi0(const TrigPoly & d)
{
  std::vector<BigRational> out;
  for (int q = 0; q <= d.m(); ++q) {
    for (int l = 0; l < d.n(); ++l) {
      if (l == 0 && q == 0) { continue; }
      out.push_back(d.at(l, q));
    }
  }
  return out;
}

struct ResidualReport
{
  std::vector<BigRational> residual;  // M xi_0 - nu, one entry per level k = 2..(m+1)n
  BigRational max_abs;
};

/// M xi_0 - (nu_tau + nu_phi) with nu_phi[k] = -phi_{k-1}(0); VerificationError on a nonzero row.
inline ResidualReport system_residual(const ShapeMatrix & A, const SpaceFormParams & params)
{
  detail::require_dims(A, params);
  const int N = params.size();
  const auto table = alpha_table(A, params, N);
  const auto phi = phi_vector(table);
  const auto sys = coeff::build_system(params);
  const auto xi = xi0(table.front());
  const auto lhs = sys.M * ExactMatrix<BigRational>::from_rows({xi}).transpose();
  ResidualReport rep;
  rep.max_abs = BigRational(0);
  for (std::size_t r = 0; r < sys.M.rows(); ++r) {
    const int k = static_cast<int>(r) + 2;
    const BigRational nu = sys.nu_tau[r] - phi.at(k - 1);
    rep.residual.push_back(lhs(r, 0) - nu);
    const BigRational a = exact::abs(rep.residual.back());
    if (a > rep.max_abs) { rep.max_abs = a; }
  }
  for (std::size_t r = 0; r < rep.residual.size(); ++r) {
    if (!rep.residual[r].is_zero()) {
      throw VerificationError("system_residual: row " + std::to_string(r + 1) + " (level k=" + std::to_string(r + 2) +
                              ") has residual " + rep.residual[r].to_string() + " (" + params.label() + ")");
    }
  }
  return rep;
}

/// alpha_{0,k}^0 = sum_{l,q} p_{k,l}^q alpha_{l,0}^q for k = 0..(m+1)n; returns the first failing k or -1.
inline long bridge_mismatch(const AlphaTable & table, const SpaceFormParams & params)
{
  const int kmax = static_cast<int>(table.size()) - 1;
  const auto t = coeff::p_table(params, kmax);
  const BigRational x = params.x_value();
  const TrigPoly & d = table.front();
  for (int k = 0; k <= kmax; ++k) {
    const auto row = t.row_at(k, x);
    BigRational acc(0);
    for (int q = 0; q <= params.m; ++q) {
      for (int l = 0; l < params.n; ++l) { acc += row[coeff::flat_index(params.n, l, q)] * d.at(l, q); }
    }
    if (acc != table[static_cast<std::size_t>(k)].at(0, 0)) { return k; }
  }
  return -1;
}

/// D' - tr(B' adj B) as a polynomial in (r, S, C); zero by Jacobi's formula.
inline MPoly jacobi_formula_defect(const ShapeMatrix & A, const SpaceFormParams & params)
{
  const auto b = build_B(A, params);
  const auto bp = build_B_prime(A, params);
  const std::size_t d = b.rows();
  MPoly tr = detail::rsc_const(0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (is_zero(bp(i, j))) { continue; }
      // adj(B)(j, i) is the (i, j) cofactor.
      const MPoly minor = d == 1 ? detail::rsc_const(1) : exact::bareiss_det(b.minor_matrix(i, j));
      tr += bp(i, j) * ((i + j) % 2 ? -minor : minor);
    }
  }
  return trig_derive(det_B(A, params)).to_mpoly() - tr;
}

struct ParallelShape
{
  Eigen::MatrixXd A_r;   // -B'(r) B(r)^{-1}
  double D = 0;          // D(r)
  double H = 0;          // trace A_r
  double H_from_D = 0;   // -D'(r) / D(r)
};

/// Shape operator of the parallel hypersurface at distance r; FocalPointError when det B(r) vanishes.
inline ParallelShape parallel_shape(const ShapeMatrix & A, const SpaceFormParams & params, double r)
{
  const auto b = build_B(A, params);
  const auto bp = build_B_prime(A, params);
  const STC stc{params};
  const std::map<std::string, double> at{{"r", r}, {"S", stc.S(r)}, {"C", stc.C(r)}};
  auto numeric = [&](const ExactMatrix<MPoly> & m) {
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        double v = 0;
        for (const auto & [e, c] : m(i, j).terms()) {
          double t = c.to_double();
          for (std::size_t k = 0; k < e.size(); ++k) { t *= std::pow(at.at(m(i, j).vars()[k]), static_cast<int>(e[k])); }
          v += t;
        }
        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      }
    }
    return out;
  };
  const Eigen::MatrixXd B = numeric(b), Bp = numeric(bp);
  const TrigPoly d = det_B(A, params);
  ParallelShape out;
  out.D = d.eval(r);
  double scale = 1;
  for (Eigen::Index i = 0; i < B.rows(); ++i) { scale *= std::max(1.0, B.row(i).norm()); }
  if (std::abs(out.D) <= 1e-13 * scale) {
    throw FocalPointError("parallel_shape: det B(r) = " + std::to_string(out.D) + " at r = " + std::to_string(r) + " (focal point)");
  }
  out.A_r = -Bp * B.inverse();
  out.H = out.A_r.trace();
  out.H_from_D = -trig_derive(d).eval(r) / out.D;
  return out;
}

inline ParallelShape parallel_shape(const ShapeMatrix & A, const SpaceFormParams & params, const BigRational & r)
{
  return parallel_shape(A, params, r.to_double());
}

}  // namespace isoparam::jacobi
