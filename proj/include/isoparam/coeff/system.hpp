#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "isoparam/coeff/ptable.hpp"

namespace isoparam::coeff {

/// M, Mtilde = [-nu_tau | M] and nu_tau. Row r holds level k = r + 2,
/// r = 0..(m+1)n-2; M drops the (0,0) column of the flat p-row.
template<class T>
struct SystemMatrices
{
  int n = 0, m = 0;
  ExactMatrix<T> Mtilde;
  ExactMatrix<T> M;
  std::vector<T> nu_tau;
};

/// M^s: rows e_1 Q^i for i = 2..(m+1)n-1 followed by e_1 Q^s, first column removed.
template<class T>
struct SystemMatricesOdd
{
  int n = 0, m = 0, s = 0;
  ExactMatrix<T> Mtilde_s;
  ExactMatrix<T> Ms;
  std::vector<T> nu_tau;
};

namespace detail {

inline ExactMatrix<MPoly> rows_to_matrix(const std::vector<std::vector<MPoly>> & rows)
{
  return ExactMatrix<MPoly>::from_rows(rows);
}

inline ExactMatrix<MPoly> drop_first_column(const ExactMatrix<MPoly> & a)
{
  std::vector<std::size_t> rs(a.rows()), cs(a.cols() - 1);
  std::iota(rs.begin(), rs.end(), 0);
  std::iota(cs.begin(), cs.end(), 1);
  return a.select(rs, cs);
}

inline ExactMatrix<BigRational> ground(const ExactMatrix<MPoly> & a, const BigRational & x)
{
  return a.map([&](const MPoly & p) { return p.evaluate({{"X", x}}); });
}

}  // namespace detail

/// Symbolic system in X for dimensions (n, m).
inline SystemMatrices<MPoly> build_system_symbolic(int n, int m)
{
  const int N = (m + 1) * n;
  const PTable t(n, m, N);
  std::vector<std::vector<MPoly>> rows;
  SystemMatrices<MPoly> out;
  out.n = n;
  out.m = m;
  for (int k = 2; k <= N; ++k) {
    rows.push_back(t.row(k));
    out.nu_tau.push_back(-t.at(k, 0, 0));
  }
  out.Mtilde = detail::rows_to_matrix(rows);
  out.M = detail::drop_first_column(out.Mtilde);
  return out;
}

inline SystemMatrices<BigRational> build_system(const SpaceFormParams & params)
{
  params.validate();
  const auto sym = build_system_symbolic(params.n, params.m);
  const BigRational x = params.x_value();
  SystemMatrices<BigRational> out;
  out.n = params.n;
  out.m = params.m;
  out.Mtilde = detail::ground(sym.Mtilde, x);
  out.M = detail::ground(sym.M, x);
  for (const auto & p : sym.nu_tau) { out.nu_tau.push_back(p.evaluate({{"X", x}})); }
  return out;
}

inline SystemMatricesOdd<MPoly> build_system_odd_symbolic(int n, int m, int s)
{
  const int N = (m + 1) * n;
  if (n % 2 == 0) { throw ParameterError("build_system_odd: n must be odd, got " + std::to_string(n)); }
  if (s < N) { throw ParameterError("build_system_odd: s must be at least (m+1)n = " + std::to_string(N)); }
  const PTable t(n, m, s);
  std::vector<std::vector<MPoly>> rows;
  SystemMatricesOdd<MPoly> out;
  out.n = n;
  out.m = m;
  out.s = s;
  for (int k = 2; k <= N - 1; ++k) {
    rows.push_back(t.row(k));
    out.nu_tau.push_back(-t.at(k, 0, 0));
  }
  rows.push_back(t.row(s));
  out.nu_tau.push_back(-t.at(s, 0, 0));
  out.Mtilde_s = detail::rows_to_matrix(rows);
  out.Ms = detail::drop_first_column(out.Mtilde_s);
  return out;
}

inline SystemMatricesOdd<BigRational> build_system_odd(const SpaceFormParams & params, int s)
{
  params.validate();
  const auto sym = build_system_odd_symbolic(params.n, params.m, s);
  const BigRational x = params.x_value();
  SystemMatricesOdd<BigRational> out;
  out.n = params.n;
  out.m = params.m;
  out.s = s;
  out.Mtilde_s = detail::ground(sym.Mtilde_s, x);
  out.Ms = detail::ground(sym.Ms, x);
  for (const auto & p : sym.nu_tau) { out.nu_tau.push_back(p.evaluate({{"X", x}})); }
  return out;
}

/// rank M, asserted equal to (m+1)n-2 (n even).
inline std::size_t verify_rank_M(const SpaceFormParams & params)
{
  params.validate();
  if (params.n % 2) { throw ParameterError("verify_rank_M: n must be even"); }
  const std::size_t r = exact::exact_rank(build_system(params).M);
  const auto expected = static_cast<std::size_t>(params.size() - 2);
  if (r != expected) {
    throw VerificationError("rank M = " + std::to_string(r) + ", expected " + std::to_string(expected) + " (" + params.label() + ")");
  }
  return r;
}

/// rank M^s, asserted equal to (m+1)n-2 (n odd).
inline std::size_t verify_rank_Ms(const SpaceFormParams & params, int s)
{
  const std::size_t r = exact::exact_rank(build_system_odd(params, s).Ms);
  const auto expected = static_cast<std::size_t>(params.size() - 2);
  if (r != expected) {
    throw VerificationError("rank M^s = " + std::to_string(r) + ", expected " + std::to_string(expected) + " (" +
                            params.label() + ", s=" + std::to_string(s) + ")");
  }
  return r;
}

/// Rows e_1 Q^i for the listed exponents.
inline ExactMatrix<BigRational> qpower_rows(const SpaceFormParams & params, const std::vector<int> & exps)
{
  const auto q = kac::build_q(params);
  std::vector<std::vector<BigRational>> rows;
  std::vector<BigRational> v(q.rows(), BigRational(0));
  v[0] = BigRational(1);
  int cur = 0;
  std::vector<int> sorted = exps;
  std::sort(sorted.begin(), sorted.end());
  std::map<int, std::vector<BigRational>> cache;
  for (int e : sorted) {
    while (cur < e) { v = v * q; ++cur; }
    cache[e] = v;
  }
  for (int e : exps) { rows.push_back(cache.at(e)); }
  return ExactMatrix<BigRational>::from_rows(rows);
}

struct IndependenceReport
{
  std::size_t rows = 0, width = 0;
  std::size_t rank = 0;
  std::size_t rank_with_extra = 0;  // odd n only: rank of Lambda_s
};

/// Even n: the (m+1)n rows e_1 Q^i, i = s..s+(m+1)n-1, are independent.
/// Odd n: Lambda = {e_1 Q^i : i = 2..(m+1)n-1} is independent and adding
/// e_1 Q^s does not raise the rank.
inline IndependenceReport verify_independence(const SpaceFormParams & params, int s)
{
  params.validate();
  const int N = params.size();
  IndependenceReport rep;
  if (params.n % 2 == 0) {
    if (s < 1) { throw ParameterError("verify_independence: window start must be positive"); }
    std::vector<int> exps(static_cast<std::size_t>(N));
    std::iota(exps.begin(), exps.end(), s);
    const auto a = qpower_rows(params, exps);
    rep.rows = a.rows();
    rep.width = a.cols();
    rep.rank = exact::exact_rank(a);
    rep.rank_with_extra = rep.rank;
    if (rep.rank != static_cast<std::size_t>(N)) {
      throw VerificationError("window starting at " + std::to_string(s) + " has rank " + std::to_string(rep.rank) + " (" + params.label() + ")");
    }
    return rep;
  }
  if (s < N) { throw ParameterError("verify_independence: s must be at least (m+1)n"); }
  std::vector<int> exps;
  for (int i = 2; i <= N - 1; ++i) { exps.push_back(i); }
  const auto lambda = qpower_rows(params, exps);
  rep.rows = lambda.rows();
  rep.width = lambda.cols();
  rep.rank = exact::exact_rank(lambda);
  exps.push_back(s);
  rep.rank_with_extra = exact::exact_rank(qpower_rows(params, exps));
  if (rep.rank != rep.rows) {
    throw VerificationError("Lambda has rank " + std::to_string(rep.rank) + " on " + std::to_string(rep.rows) + " rows (" + params.label() + ")");
  }
  if (rep.rank_with_extra != rep.rank) {
    throw VerificationError("Lambda_s raised the rank to " + std::to_string(rep.rank_with_extra) + " (" + params.label() + ")");
  }
  return rep;
}

struct ColumnSpanReport
{
  std::size_t target = 0;              // 1-based column index C_{qn+1}
  std::vector<std::size_t> span_set;   // 1-based indices C_{qn+2i+1}
  std::size_t rank_span = 0, rank_augmented = 0;
};

/// Column C_{qn+1} of Mtilde^s (s = (m+1)n) lies in span{C_{qn+2i+1} : i = 1..(n-1)/2}.
inline ColumnSpanReport verify_column_span(const SpaceFormParams & params, int q)
{
  params.validate();
  if (params.n % 2 == 0) { throw ParameterError("verify_column_span: n must be odd"); }
  if (q != 0 && q != 1) { throw ParameterError("verify_column_span: q must be 0 or 1"); }
  const auto sys = build_system_odd(params, params.size());
  ColumnSpanReport rep;
  rep.target = static_cast<std::size_t>(q * params.n + 1);
  for (int i = 1; i <= (params.n - 1) / 2; ++i) { rep.span_set.push_back(static_cast<std::size_t>(q * params.n + 2 * i + 1)); }
  std::vector<std::size_t> rs(sys.Mtilde_s.rows());
  std::iota(rs.begin(), rs.end(), 0);
  std::vector<std::size_t> cs;
  for (auto c : rep.span_set) { cs.push_back(c - 1); }
  rep.rank_span = exact::exact_rank(sys.Mtilde_s.select(rs, cs));
  if (rep.rank_span != rep.span_set.size()) {
    throw VerificationError("spanning columns are dependent (" + params.label() + ")");
  }
  cs.push_back(rep.target - 1);
  rep.rank_augmented = exact::exact_rank(sys.Mtilde_s.select(rs, cs));
  if (rep.rank_augmented != rep.rank_span) {
    throw VerificationError("column C" + std::to_string(rep.target) + " is not in the span (" + params.label() + ")");
  }
  return rep;
}

}  // namespace isoparam::coeff
