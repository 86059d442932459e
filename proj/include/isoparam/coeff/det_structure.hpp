#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isoparam/coeff/system.hpp"

namespace isoparam::coeff {

/// One coefficient of the tau-expansion: the polynomial c X^{gamma/2} read as
/// (-1)^{gamma/2} beta c^{gamma/2} tau^gamma.
struct MonomialTerm
{
  std::size_t index = 0;        // row (1-based) or 0 for the nu_tau determinant
  MPoly value;                  // the minor as a polynomial in X
  BigRational beta;             // zero when the minor vanishes
  std::optional<int> gamma;     // tau-degree, present iff beta != 0
  int formal_gamma = 0;         // weighted degree of the slot, whether or not the minor vanishes
};

struct MIotaReport
{
  std::size_t iota = 0;         // 1-based column of M replaced by nu_tau
  MonomialTerm term0;
  std::vector<MonomialTerm> terms;  // rows 1..(m+1)n-1
  long quoted_lower_bound = 0;   // closed-form bound quoted for the last exponent
  bool quoted_lower_bound_holds = false;
  bool sign_pattern_ok = false;
};

struct MsReport
{
  int s = 0;
  std::size_t iota = 0;
  MPoly det_tau;                // det M_n^{s,tau}, expected zero
  std::vector<MonomialTerm> terms;  // rows 1..(m+1)n-2
  MonomialTerm term_s;          // the appended row e_1 Q^s
  BigRational beta_s_minor;     // det of M^s without its last row and n-th column
};

namespace detail {

inline MonomialTerm read_monomial(std::size_t index, const MPoly & value, int formal_gamma, const std::string & what)
{
  MonomialTerm t;
  t.index = index;
  t.value = value;
  t.formal_gamma = formal_gamma;
  if (value.is_zero()) {
    t.beta = BigRational(0);
    return t;
  }
  if (!value.is_monomial()) { throw VerificationError(what + " is not a single monomial in X: " + value.to_string()); }
  const auto & [e, coef] = value.leading_term();
  const int g = e.empty() ? 0 : static_cast<int>(e[0]);
  t.gamma = 2 * g;
  t.beta = g % 2 ? -coef : coef;
  return t;
}

/// Cofactor (-1)^{i+j} det(A without row i, column j), 0-based indices.
inline MPoly cofactor(const ExactMatrix<MPoly> & a, std::size_t i, std::size_t j)
{
  const MPoly minor = a.rows() == 1 ? MPoly::constant(x_vars(), 1) : exact::bareiss_det(a.minor_matrix(i, j));
  return (i + j) % 2 ? -minor : minor;
}

/// tau-weight k - l - q of column c of M (first flat column dropped).
inline int column_weight(int n, std::size_t c)
{
  const int flat = static_cast<int>(c) + 1;
  return flat % n + flat / n;
}

/// Entries of a symbolic matrix with X replaced by c tau^2, as polynomials in "tau".
inline ExactMatrix<MPoly> in_tau(const ExactMatrix<MPoly> & a, int c)
{
  const MPoly::VarNames tv{"tau"};
  const MPoly repl = MPoly::variable(tv, "tau").pow(2).scaled(c);
  return a.map([&](const MPoly & p) {
    MPoly r = MPoly::constant(tv, 0);
    for (const auto & [e, coef] : p.terms()) {
      r += repl.pow(e.empty() ? 0u : e[0]).scaled(coef);
    }
    return r;
  });
}

inline void require_strict_chain(const std::vector<const MonomialTerm *> & chain, const std::string & what)
{
  std::optional<int> prev;
  for (const auto * t : chain) {
    if (!t->gamma) { continue; }
    if (prev && !(*t->gamma < *prev)) {
      throw VerificationError(what + ": exponent chain not strictly decreasing at row " + std::to_string(t->index));
    }
    prev = t->gamma;
  }
  if (!prev) { throw VerificationError(what + ": every coefficient vanishes"); }
  if (*prev <= 0) { throw VerificationError(what + ": last exponent is not positive"); }
}

}  // namespace detail

/**
 * For even n: finds the first iota with det M_iota^tau != 0, reads it as a
 * single monomial, and reads the cofactors of column iota (the coefficients
 * of phi_i(0) in det M_iota^phi) as monomials with a strictly decreasing
 * exponent chain ending above zero.
 */
inline MIotaReport det_structure_M_iota(const SpaceFormParams & params)
{
  params.validate();
  if (params.n % 2) { throw ParameterError("det_structure_M_iota: n must be even"); }
  const auto sys = build_system_symbolic(params.n, params.m);
  const std::size_t dim = sys.M.rows();
  const std::string ctx = " (" + params.label() + ")";

  int row_weight_sum = 0;
  for (std::size_t r = 0; r < dim; ++r) { row_weight_sum += static_cast<int>(r) + 2; }
  int col_weight_sum = 0;
  for (std::size_t c = 0; c < dim; ++c) { col_weight_sum += detail::column_weight(params.n, c); }

  MIotaReport rep;
  std::optional<std::size_t> iota;
  MPoly d0;
  for (std::size_t j = 0; j < dim && !iota; ++j) {
    MPoly d = exact::bareiss_det(sys.M.with_column(j, sys.nu_tau));
    if (!d.is_zero()) {
      iota = j;
      d0 = std::move(d);
    }
  }
  if (!iota) { throw VerificationError("det_structure_M_iota: no column gives det M_iota^tau != 0" + ctx); }
  rep.iota = *iota + 1;
  const int gamma_formal = row_weight_sum - (col_weight_sum - detail::column_weight(params.n, *iota));
  rep.term0 = detail::read_monomial(0, d0, gamma_formal, "det M_iota^tau" + ctx);
  if (*rep.term0.gamma != gamma_formal) { throw VerificationError("det M_iota^tau has unexpected degree" + ctx); }

  for (std::size_t i = 0; i < dim; ++i) {
    const MPoly cof = detail::cofactor(sys.M, i, *iota);
    const int fg = gamma_formal - (static_cast<int>(i) + 2);
    rep.terms.push_back(detail::read_monomial(i + 1, cof, fg, "cofactor row " + std::to_string(i + 1) + ctx));
    const auto & t = rep.terms.back();
    if (t.gamma && *t.gamma != fg) { throw VerificationError("cofactor row " + std::to_string(i + 1) + " has unexpected degree" + ctx); }
  }
  std::vector<const MonomialTerm *> chain{&rep.term0};
  for (const auto & t : rep.terms) { chain.push_back(&t); }
  detail::require_strict_chain(chain, "det M_iota" + ctx);

  const long n = params.n, m = params.m;
  rep.quoted_lower_bound = (m * m * (2 * n * n - 2 * n + 1) + m * (2 * n * n - 2 * n - 3)) / 2 + 1;
  const auto & last = rep.terms.back();
  rep.quoted_lower_bound_holds = last.gamma && *last.gamma >= rep.quoted_lower_bound;

  // Recompute det M_iota^tau with tau as the indeterminate for both signs of c.
  rep.sign_pattern_ok = true;
  const int g = *rep.term0.gamma;
  for (int c : {-1, 1}) {
    const auto mt = detail::in_tau(sys.M.with_column(*iota, sys.nu_tau), c);
    const MPoly lhs = exact::bareiss_det(mt);
    const BigRational sign((g / 2) % 2 ? -1 : 1);
    const BigRational cpow(c == -1 && (g / 2) % 2 ? -1 : 1);
    const MPoly rhs = MPoly::variable({"tau"}, "tau").pow(static_cast<unsigned>(g)).scaled(sign * rep.term0.beta * cpow);
    if (lhs != rhs) { rep.sign_pattern_ok = false; }
  }
  if (!rep.sign_pattern_ok) { throw VerificationError("det M_iota^tau does not match (-1)^{g/2} beta c^{g/2} tau^g" + ctx); }
  return rep;
}

/**
 * For odd n and s >= (m+1)n: det M_n^{s,tau} = 0, the cofactors of column n
 * of M^s are monomials with gamma_1 > ... > gamma_{(m+1)n-2} > gamma_s > 0,
 * and beta_s != 0.
 */
inline MsReport det_structure_Ms(const SpaceFormParams & params, int s)
{
  params.validate();
  const auto sys = build_system_odd_symbolic(params.n, params.m, s);
  const std::size_t dim = sys.Ms.rows();
  const std::size_t col = static_cast<std::size_t>(params.n) - 1;
  const std::string ctx = " (" + params.label() + ", s=" + std::to_string(s) + ")";

  MsReport rep;
  rep.s = s;
  rep.iota = col + 1;
  rep.det_tau = exact::bareiss_det(sys.Ms.with_column(col, sys.nu_tau));
  if (!rep.det_tau.is_zero()) { throw VerificationError("det M_n^{s,tau} = " + rep.det_tau.to_string() + " is not zero" + ctx); }

  int row_weight_sum = 0;
  for (std::size_t r = 0; r + 1 < dim; ++r) { row_weight_sum += static_cast<int>(r) + 2; }
  row_weight_sum += s;
  int col_weight_sum = 0;
  for (std::size_t c = 0; c < dim; ++c) {
    if (c != col) { col_weight_sum += detail::column_weight(params.n, c); }
  }
  const int gamma_formal = row_weight_sum - col_weight_sum;

  for (std::size_t i = 0; i + 1 < dim; ++i) {
    const MPoly cof = detail::cofactor(sys.Ms, i, col);
    const int fg = gamma_formal - (static_cast<int>(i) + 2);
    rep.terms.push_back(detail::read_monomial(i + 1, cof, fg, "cofactor row " + std::to_string(i + 1) + ctx));
  }
  rep.term_s = detail::read_monomial(dim, detail::cofactor(sys.Ms, dim - 1, col), gamma_formal - s, "cofactor row s" + ctx);
  rep.beta_s_minor = exact::bareiss_det(sys.Ms.minor_matrix(dim - 1, col)).evaluate({{"X", params.x_value()}});
  if (rep.term_s.beta.is_zero() || rep.beta_s_minor.is_zero()) { throw VerificationError("beta_s vanishes" + ctx); }

  std::vector<const MonomialTerm *> chain;
  for (const auto & t : rep.terms) { chain.push_back(&t); }
  chain.push_back(&rep.term_s);
  detail::require_strict_chain(chain, "det M_n^s" + ctx);
  return rep;
}

}  // namespace isoparam::coeff
