#pragma once

#include <string>
#include <vector>

#include "isoparam/coeff/ptable.hpp"
#include "isoparam/exact/quad_ext.hpp"

namespace isoparam::coeff {

enum class XiMode { even_full, odd_reduced };

struct VandermondeResult
{
  XiMode mode = XiMode::even_full;
  int window_start = 0;
  ExactMatrix<MPoly> xi;         // entries in the formal generator "mu"
  MPoly det;                     // bareiss_det(xi)
  MPoly expected;                // closed-form product
  kac::QE det_reduced;           // det with mu^2 = -c tau^2 applied
  kac::QE det_extension;         // Bareiss over Q(mu) with the concrete eigenvalues
  kac::QE expected_extension;    // closed form over Q(mu)
};

namespace detail {

inline const MPoly::VarNames & mu_vars()
{
  static const MPoly::VarNames v{"mu"};
  return v;
}

/// Splits a polynomial in mu into a + b mu after reduction by mu^2 = d.
inline kac::QE reduce_mu(const MPoly & p, const BigRational & d)
{
  const MPoly r = p.has_var("mu") ? p.reduce_power("mu", 2, MPoly::constant(mu_vars(), d)) : p;
  BigRational a(0), b(0);
  for (const auto & [e, c] : r.terms()) {
    if (e.empty() || e[0] == 0) { a += c; } else { b += c; }
  }
  return kac::QE(a, b, d);
}

template<class T>
T power(const T & base, unsigned e, const T & one)
{
  T r = one;
  for (unsigned i = 0; i < e; ++i) { r = r * base; }
  return r;
}

inline MPoly lift(const MPoly & zero, const BigRational & r) { return zero + MPoly(r); }
inline kac::QE lift(const kac::QE & zero, const BigRational & r) { return kac::QE::embed(r, zero.d()); }

/// Entry binom(k,t) lambda^(k-t) for k >= t, else zero.
template<class T>
T xi_entry(int k, int t, const T & lam, const T & zero, const T & one)
{
  if (k < t) { return zero; }
  const T b = lift(zero, exact::binomial(k, t));
  return b * power(lam, static_cast<unsigned>(k - t), one);
}

template<class T>
ExactMatrix<T> assemble_xi(int n, int m, XiMode mode, int s, const std::vector<T> & lams, const T & zero, const T & one)
{
  const int N = (m + 1) * n;
  const int mid = (n - 1) / 2;
  std::vector<int> cols;
  if (mode == XiMode::even_full) {
    for (int k = s; k < s + N; ++k) { cols.push_back(k); }
  } else {
    for (int k = 2; k <= N - 1; ++k) { cols.push_back(k); }
  }
  std::vector<std::vector<T>> rows;
  for (int l = 0; l < n; ++l) {
    for (int t = 0; t <= m; ++t) {
      if (mode == XiMode::odd_reduced && l == mid && t < 2) { continue; }
      std::vector<T> row;
      for (int k : cols) { row.push_back(xi_entry(k, t, lams[static_cast<std::size_t>(l)], zero, one)); }
      rows.push_back(std::move(row));
    }
  }
  return ExactMatrix<T>::from_rows(rows);
}

template<class T>
T xi_closed_form(int n, int m, XiMode mode, int s, const std::vector<T> & lams, const T & one)
{
  const unsigned e = static_cast<unsigned>((m + 1) * (m + 1));
  const int mid = (n - 1) / 2;
  T r = one;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (mode == XiMode::odd_reduced && (i == mid || j == mid)) { continue; }
      r = r * power(lams[static_cast<std::size_t>(j)] - lams[static_cast<std::size_t>(i)], e, one);
    }
  }
  if (mode == XiMode::even_full) {
    for (int i = 0; i < n; ++i) { r = r * power(lams[static_cast<std::size_t>(i)], static_cast<unsigned>(s * (m + 1)), one); }
    return r;
  }
  for (int i = 0; i < n; ++i) {
    if (i != mid) { r = r * power(lams[static_cast<std::size_t>(i)], e, one); }
  }
  const int sign_exp = (m - 1) * mid * (m + 1);
  return sign_exp % 2 ? -r : r;
}

}  // namespace detail

/**
 * The generalized Vandermonde matrix Xi of the linear system for the
 * coefficients of e_1 Q^k in the eigenbasis. Rows are indexed by (l, t),
 * l outer, columns by the power k; the entry is binom(k,t) lambda_l^(k-t).
 *
 * even_full: n even, columns k = s..s+(m+1)n-1, and
 *   det = prod_{i<j} (lambda_j - lambda_i)^{(m+1)^2} prod_l lambda_l^{s(m+1)}.
 * odd_reduced: n odd, columns k = 2..(m+1)n-1, the two zero rows of the
 * lambda = 0 block removed, and
 *   det = (-1)^{(m-1)(m+1)(n-1)/2} prod_{i<j; i,j != mid} (lambda_j - lambda_i)^{(m+1)^2}
 *         prod_{i != mid} lambda_i^{(m+1)^2}.
 */
inline VandermondeResult vandermonde_xi(const SpaceFormParams & params, int s, XiMode mode)
{
  params.validate();
  if (mode == XiMode::even_full && params.n % 2) { throw ParameterError("vandermonde_xi: even_full needs even n"); }
  if (mode == XiMode::odd_reduced && params.n % 2 == 0) { throw ParameterError("vandermonde_xi: odd_reduced needs odd n"); }
  if (s < 0) { throw ParameterError("vandermonde_xi: window start must be non-negative"); }
  VandermondeResult out;
  out.mode = mode;
  out.window_start = mode == XiMode::even_full ? s : 2;

  const auto & v = detail::mu_vars();
  const MPoly zero = MPoly::constant(v, 0), one = MPoly::constant(v, 1);
  const MPoly mu = MPoly::variable(v, "mu");
  std::vector<MPoly> lams;
  for (int l = 0; l < params.n; ++l) { lams.push_back(mu.scaled(params.n - 1 - 2 * l)); }
  out.xi = detail::assemble_xi(params.n, params.m, mode, s, lams, zero, one);
  out.det = exact::bareiss_det(out.xi);
  out.expected = detail::xi_closed_form(params.n, params.m, mode, s, lams, one);
  const BigRational d = params.mu_squared();
  out.det_reduced = detail::reduce_mu(out.det, d);

  const auto qlams = kac::kac_eigenvalues(params);
  const kac::QE qzero = kac::QE::embed(BigRational(0), d), qone = kac::QE::embed(BigRational(1), d);
  const auto xq = detail::assemble_xi(params.n, params.m, mode, s, qlams, qzero, qone);
  out.det_extension = exact::bareiss_det(xq);
  out.expected_extension = detail::xi_closed_form(params.n, params.m, mode, s, qlams, qone);

  if (out.det != out.expected) {
    throw VerificationError("det Xi = " + out.det.to_string() + " but product = " + out.expected.to_string() + " (" + params.label() + ")");
  }
  if (out.det_extension != out.expected_extension) {
    throw VerificationError("det Xi over the extension = " + out.det_extension.to_string() + " but product = " +
                            out.expected_extension.to_string() + " (" + params.label() + ")");
  }
  if (out.det_extension.is_zero()) { throw VerificationError("Xi is singular (" + params.label() + ")"); }
  return out;
}

}  // namespace isoparam::coeff
