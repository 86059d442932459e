#pragma once

#include <string>
#include <vector>

#include "isoparam/error.hpp"
#include "isoparam/exact/matrix.hpp"
#include "isoparam/kac/kac.hpp"

namespace isoparam::coeff {

using exact::BigRational;
using exact::ExactMatrix;
using exact::MPoly;
using kac::SpaceFormParams;

inline const MPoly::VarNames & x_vars()
{
  static const MPoly::VarNames v{"X"};
  return v;
}

/// Column index of the pair (l, q): l runs fastest, q slowest.
inline std::size_t flat_index(int n, int l, int q) { return static_cast<std::size_t>(q * n + l); }

/**
 * The coefficients p_{k,l}^q as polynomials in X = c tau^2, filled by
 *   p_{k+1,l}^q = q p_{k,l}^{q-1} + l p_{k,l-1}^q - (n-1-l) X p_{k,l+1}^q
 * from p_{0,0}^0 = 1. The table depends on (n, m) only.
 */
class PTable
{
public:
  PTable(int n, int m, int kmax) : n_(n), m_(m), kmax_(kmax)
  {
    if (n < 1 || m < 0 || kmax < 0) { throw ParameterError("PTable: invalid dimensions"); }
    const MPoly zero = MPoly::constant(x_vars(), 0);
    const MPoly x = MPoly::variable(x_vars(), "X");
    const std::size_t width = static_cast<std::size_t>((m + 1) * n);
    values_.assign(static_cast<std::size_t>(kmax) + 1, std::vector<MPoly>(width, zero));
    values_[0][0] = MPoly::constant(x_vars(), 1);
    for (int k = 0; k < kmax; ++k) {
      for (int q = 0; q <= m; ++q) {
        for (int l = 0; l < n; ++l) {
          MPoly v = zero;
          if (q > 0) { v += at(k, l, q - 1).scaled(q); }
          if (l > 0) { v += at(k, l - 1, q).scaled(l); }
          if (l + 1 < n) { v -= (x * at(k, l + 1, q)).scaled(n - 1 - l); }
          values_[k + 1][flat_index(n, l, q)] = std::move(v);
        }
      }
    }
  }

  int n() const { return n_; }
  int m() const { return m_; }
  int kmax() const { return kmax_; }

  const MPoly & at(int k, int l, int q) const { return values_.at(static_cast<std::size_t>(k)).at(flat_index(n_, l, q)); }
  void set(int k, int l, int q, MPoly v) { values_.at(static_cast<std::size_t>(k)).at(flat_index(n_, l, q)) = std::move(v); }

  /// Flat row (p_{k,0}^0, ..., p_{k,n-1}^0, p_{k,0}^1, ..., p_{k,n-1}^m).
  const std::vector<MPoly> & row(int k) const { return values_.at(static_cast<std::size_t>(k)); }

  std::vector<BigRational> row_at(int k, const BigRational & x) const
  {
    std::vector<BigRational> out;
    for (const auto & p : row(k)) { out.push_back(p.evaluate({{"X", x}})); }
    return out;
  }

  /// Integer a with p_{k,l}^q = a X^s; zero when s is not a non-negative integer.
  BigRational sigma_value(int k, int l, int q) const
  {
    const int twice_s = k - q - l;
    if (twice_s < 0 || twice_s % 2) { return BigRational(0); }
    return at(k, l, q).coefficient({static_cast<unsigned>(twice_s / 2)});
  }

  /// Parity vanishing, single-monomial shape of degree s, and p = k! when s = 0.
  /// Returns an empty string on success, otherwise a description of the first violation.
  std::string check_invariants() const
  {
    for (int k = 0; k <= kmax_; ++k) {
      for (int q = 0; q <= m_; ++q) {
        for (int l = 0; l < n_; ++l) {
          const MPoly & p = at(k, l, q);
          const int twice_s = k - q - l;
          const std::string where = "(k,l,q)=(" + std::to_string(k) + "," + std::to_string(l) + "," + std::to_string(q) + ")";
          if (twice_s < 0 || twice_s % 2) {
            if (!p.is_zero()) { return "nonzero entry with invalid s at " + where; }
            continue;
          }
          if (p.is_zero()) { continue; }
          if (!p.is_monomial() || p.total_degree() != static_cast<unsigned>(twice_s / 2)) {
            return "entry is not a monomial of degree s at " + where + ": " + p.to_string();
          }
          if (!p.leading_term().second.is_integer()) { return "non-integer coefficient at " + where; }
          if (twice_s == 0 && p.leading_term().second != exact::factorial(static_cast<unsigned>(k))) {
            return "s=0 entry differs from k! at " + where;
          }
        }
      }
    }
    return {};
  }

private:
  int n_, m_, kmax_;
  std::vector<std::vector<MPoly>> values_;
};

inline PTable p_table(const SpaceFormParams & params, int kmax)
{
  params.validate();
  return PTable(params.n, params.m, kmax);
}

/// e_1 Q^k by repeated row-vector products with the concrete Q.
inline std::vector<BigRational> e1_q_power(const SpaceFormParams & params, int k)
{
  const auto q = kac::build_q(params);
  std::vector<BigRational> v(q.rows(), BigRational(0));
  v[0] = BigRational(1);
  for (int i = 0; i < k; ++i) { v = v * q; }
  return v;
}

/// Index of the first entry where the level-k p-row differs from e_1 Q^k, or -1.
inline long first_qpower_mismatch(const PTable & table, const SpaceFormParams & params, int k)
{
  const auto lhs = table.row_at(k, params.x_value());
  const auto rhs = e1_q_power(params, k);
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (lhs[i] != rhs[i]) { return static_cast<long>(i); }
  }
  return -1;
}

inline bool row_matches_qpower(const PTable & table, const SpaceFormParams & params, int k)
{
  return first_qpower_mismatch(table, params, k) < 0;
}

inline bool row_matches_qpower(const SpaceFormParams & params, int k)
{
  return row_matches_qpower(p_table(params, k), params, k);
}

/// Throwing form of the duality check.
inline void require_row_matches_qpower(const PTable & table, const SpaceFormParams & params, int k)
{
  const long idx = first_qpower_mismatch(table, params, k);
  if (idx >= 0) {
    throw VerificationError("p-row k=" + std::to_string(k) + " differs from e1 Q^k at flat index " +
                            std::to_string(idx) + " (" + params.label() + ")");
  }
}

struct SigmaPoly
{
  int k = 0, l = 0, q = 0;
  int s = 0;
  MPoly poly;
  std::vector<int> nodes;
};

/// Recovers sigma_{k,l}^q(n) by Lagrange interpolation over n_j = max(l+1,2)+j,
/// j = 0..k, and checks its degree and leading sign (or the k! value when s = 0).
inline SigmaPoly sigma_interpolate(int l, int q, int k)
{
  if (k < 2 || l < 0 || q < 0) { throw ParameterError("sigma_interpolate: need k >= 2 and l, q >= 0"); }
  const int twice_s = k - q - l;
  if (twice_s < 0 || twice_s % 2) { throw ParameterError("sigma_interpolate: s = (k-q-l)/2 must be a non-negative integer"); }
  SigmaPoly out{k, l, q, twice_s / 2, MPoly{}, {}};
  std::vector<std::pair<BigRational, BigRational>> samples;
  for (int j = 0; j <= k; ++j) {
    const int n = std::max(l + 1, 2) + j;
    const PTable t(n, std::max(q, 1), k);
    out.nodes.push_back(n);
    samples.emplace_back(BigRational(n), t.sigma_value(k, l, q));
  }
  out.poly = exact::lagrange_interpolate(samples, "n");
  const std::string where = "sigma(k=" + std::to_string(k) + ",l=" + std::to_string(l) + ",q=" + std::to_string(q) + ")";
  if (out.s == 0) {
    if (out.poly != MPoly(exact::factorial(static_cast<unsigned>(k)))) {
      throw VerificationError(where + " = " + out.poly.to_string() + ", expected k!");
    }
    return out;
  }
  if (out.poly.is_zero()) { throw VerificationError(where + " vanishes identically"); }
  const unsigned deg = out.poly.degree("n");
  if (deg < static_cast<unsigned>(out.s)) {
    throw VerificationError(where + " = " + out.poly.to_string() + " has degree below s=" + std::to_string(out.s));
  }
  const int lead_sign = out.poly.leading_term().second.sign();
  if (lead_sign != (out.s % 2 ? -1 : 1)) {
    throw VerificationError(where + " = " + out.poly.to_string() + " has leading sign " + std::to_string(lead_sign));
  }
  return out;
}

inline SigmaPoly sigma_interpolate(int l, int q, int k, int c)
{
  if (c != -1 && c != 1) { throw ParameterError("c must be -1 or 1"); }
  return sigma_interpolate(l, q, k);
}

}  // namespace isoparam::coeff
