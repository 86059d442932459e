#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "isoparam/error.hpp"
#include "isoparam/exact/rational.hpp"

namespace isoparam::exact {

using Exponents = std::vector<unsigned>;

/// Graded-lex order, largest monomial first. Ties in total degree are broken
/// lexicographically along the declared variable order.
struct GradedLexGreater
{
  bool operator()(const Exponents & a, const Exponents & b) const
  {
    unsigned da = 0, db = 0;
    for (auto e : a) { da += e; }
    for (auto e : b) { db += e; }
    if (da != db) { return da > db; }
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  }
};

/**
 * Sparse multivariate polynomial with BigRational coefficients over a
 * declared, ordered list of indeterminates.
 *
 * A polynomial with an empty indeterminate list is a plain constant and is
 * promoted on contact with any other list. Two non-empty lists must agree
 * exactly, otherwise a StructuralError is raised.
 */
class MPoly
{
public:
  using VarNames = std::vector<std::string>;
  using TermMap  = std::map<Exponents, BigRational, GradedLexGreater>;

  MPoly() = default;
  MPoly(const BigRational & c)  // NOLINT(google-explicit-constructor)
  {
    if (!c.is_zero()) { terms_.emplace(Exponents{}, c); }
  }
  MPoly(int c) : MPoly(BigRational(c)) {}  // NOLINT(google-explicit-constructor)

  static MPoly constant(const VarNames & vars, const BigRational & c)
  {
    MPoly p;
    p.set_vars(vars);
    if (!c.is_zero()) { p.terms_.emplace(Exponents(vars.size(), 0u), c); }
    return p;
  }

  static MPoly variable(const VarNames & vars, const std::string & name)
  {
    MPoly p = constant(vars, 0);
    Exponents e(vars.size(), 0u);
    e[p.index_of(name)] = 1;
    p.terms_.emplace(std::move(e), BigRational(1));
    return p;
  }

  static MPoly monomial(const VarNames & vars, Exponents exps, const BigRational & coeff)
  {
    if (exps.size() != vars.size()) { throw StructuralError("monomial: exponent length mismatch"); }
    MPoly p = constant(vars, 0);
    if (!coeff.is_zero()) { p.terms_.emplace(std::move(exps), coeff); }
    return p;
  }

  const VarNames & vars() const
  {
    static const VarNames empty;
    return vars_ ? *vars_ : empty;
  }
  std::size_t nvars() const { return vars_ ? vars_->size() : 0; }
  const TermMap & terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const
  {
    if (terms_.empty()) { return true; }
    if (terms_.size() != 1) { return false; }
    for (auto e : terms_.begin()->first) {
      if (e != 0) { return false; }
    }
    return true;
  }
  bool is_monomial() const { return terms_.size() == 1; }

  /// Value of a constant polynomial; StructuralError otherwise.
  BigRational constant_value() const
  {
    if (!is_constant()) { throw StructuralError("constant_value: polynomial is not constant: " + to_string()); }
    return terms_.empty() ? BigRational(0) : terms_.begin()->second;
  }

  std::size_t index_of(const std::string & name) const
  {
    const auto & v = vars();
    const auto it = std::find(v.begin(), v.end(), name);
    if (it == v.end()) { throw StructuralError("indeterminate '" + name + "' is not declared"); }
    return static_cast<std::size_t>(it - v.begin());
  }
  bool has_var(const std::string & name) const
  {
    const auto & v = vars();
    return std::find(v.begin(), v.end(), name) != v.end();
  }

  BigRational coefficient(const Exponents & e) const
  {
    const auto it = terms_.find(e);
    return it == terms_.end() ? BigRational(0) : it->second;
  }

  /// Leading term in graded-lex order. Requires a nonzero polynomial.
  const std::pair<const Exponents, BigRational> & leading_term() const
  {
    if (terms_.empty()) { throw StructuralError("leading_term of zero polynomial"); }
    return *terms_.begin();
  }

  unsigned total_degree() const
  {
    unsigned d = 0;
    for (const auto & [e, c] : terms_) {
      unsigned s = 0;
      for (auto x : e) { s += x; }
      d = std::max(d, s);
    }
    return d;
  }

  unsigned degree(const std::string & name) const
  {
    if (!has_var(name)) { return 0; }
    const auto i = index_of(name);
    unsigned d = 0;
    for (const auto & [e, c] : terms_) { d = std::max(d, e[i]); }
    return d;
  }

  // ---- arithmetic -------------------------------------------------------

  MPoly & operator+=(const MPoly & o) { accumulate(o, BigRational(1)); return *this; }
  MPoly & operator-=(const MPoly & o) { accumulate(o, BigRational(-1)); return *this; }
  MPoly & operator*=(const MPoly & o) { *this = *this * o; return *this; }

  friend MPoly operator+(MPoly a, const MPoly & b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly & b) { return a -= b; }
  friend MPoly operator-(const MPoly & a)
  {
    MPoly r = a;
    for (auto & [e, c] : r.terms_) { c = -c; }
    return r;
  }

  friend MPoly operator*(const MPoly & a, const MPoly & b)
  {
    MPoly r;
    r.vars_ = unify(a, b);
    const std::size_t nv = r.nvars();
    if (a.is_zero() || b.is_zero()) { return r; }
    for (const auto & [ea, ca] : a.terms_) {
      const Exponents xa = widen(ea, nv);
      for (const auto & [eb, cb] : b.terms_) {
        const Exponents xb = widen(eb, nv);
        Exponents e(nv);
        for (std::size_t i = 0; i < nv; ++i) { e[i] = xa[i] + xb[i]; }
        r.add_term(std::move(e), ca * cb);
      }
    }
    return r;
  }

  MPoly scaled(const BigRational & s) const
  {
    MPoly r;
    r.vars_ = vars_;
    if (s.is_zero()) { return r; }
    for (const auto & [e, c] : terms_) { r.terms_.emplace(e, c * s); }
    return r;
  }

  MPoly pow(unsigned e) const
  {
    MPoly r = constant(vars(), 1);
    MPoly b = *this;
    while (e) {
      if (e & 1u) { r *= b; }
      e >>= 1u;
      if (e) { b = b * b; }
    }
    return r;
  }

  friend bool operator==(const MPoly & a, const MPoly & b)
  {
    if (a.vars_ != b.vars_ && a.nvars() && b.nvars() && a.vars() != b.vars()) { return false; }
    const std::size_t nv = std::max(a.nvars(), b.nvars());
    if (a.terms_.size() != b.terms_.size()) { return false; }
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    for (; ia != a.terms_.end(); ++ia, ++ib) {
      if (widen(ia->first, nv) != widen(ib->first, nv) || ia->second != ib->second) { return false; }
    }
    return true;
  }
  friend bool operator!=(const MPoly & a, const MPoly & b) { return !(a == b); }

  /// Formal partial derivative.
  MPoly derive(const std::string & name) const
  {
    const auto i = index_of(name);
    MPoly r;
    r.vars_ = vars_;
    for (const auto & [e, c] : terms_) {
      if (e[i] == 0) { continue; }
      Exponents ne = e;
      ne[i] -= 1;
      r.add_term(std::move(ne), c * BigRational(e[i]));
    }
    return r;
  }

  /// Substitutes name -> value and removes the indeterminate from the list.
  MPoly eval(const std::string & name, const BigRational & value) const
  {
    const auto i = index_of(name);
    VarNames nv = vars();
    nv.erase(nv.begin() + static_cast<std::ptrdiff_t>(i));
    MPoly r;
    r.set_vars(nv);
    for (const auto & [e, c] : terms_) {
      Exponents ne = e;
      ne.erase(ne.begin() + static_cast<std::ptrdiff_t>(i));
      r.add_term(std::move(ne), c * exact::pow(value, e[i]));
    }
    return r;
  }

  /// Grounds every listed indeterminate; StructuralError if one is missing.
  BigRational evaluate(const std::map<std::string, BigRational> & assignment) const
  {
    MPoly p = *this;
    for (const auto & name : vars()) {
      const auto it = assignment.find(name);
      if (it == assignment.end()) { throw StructuralError("indeterminate '" + name + "' is not ground"); }
      p = p.eval(name, it->second);
    }
    return p.constant_value();
  }

  /// Replaces name by another polynomial over the same list; name stays declared.
  MPoly substitute(const std::string & name, const MPoly & replacement) const
  {
    const auto i = index_of(name);
    MPoly r = constant(vars(), 0);
    std::map<unsigned, MPoly> powers;
    for (const auto & [e, c] : terms_) {
      Exponents rest = e;
      const unsigned k = rest[i];
      rest[i] = 0;
      auto it = powers.find(k);
      if (it == powers.end()) { it = powers.emplace(k, replacement.pow(k)).first; }
      r += monomial(vars(), rest, c) * it->second;
    }
    return r;
  }

  /// Rewrites name^degree -> replacement until every exponent of name is < degree.
  MPoly reduce_power(const std::string & name, unsigned degree, const MPoly & replacement) const
  {
    if (degree == 0) { throw StructuralError("reduce_power: degree must be positive"); }
    if (replacement.degree(name) >= degree) { throw StructuralError("reduce_power: replacement does not lower degree"); }
    const auto i = index_of(name);
    MPoly cur = *this;
    for (;;) {
      MPoly next = constant(vars(), 0);
      bool changed = false;
      for (const auto & [e, c] : cur.terms_) {
        const Exponents we = widen(e, nvars());
        if (we[i] >= degree) {
          Exponents low = we;
          low[i] -= degree;
          next += monomial(vars(), low, c) * replacement;
          changed = true;
        } else {
          next += monomial(vars(), we, c);
        }
      }
      cur = std::move(next);
      if (!changed) { return cur; }
    }
  }

  /// Exact quotient a / b. Throws ArithmeticError on b = 0 and
  /// StructuralError if b does not divide a.
  friend MPoly exact_div(const MPoly & a, const MPoly & b)
  {
    if (b.is_zero()) { throw ArithmeticError("exact_div: division by zero polynomial"); }
    MPoly q;
    q.vars_ = unify(a, b);
    const std::size_t nv = q.nvars();
    MPoly rem = a;
    rem.vars_ = q.vars_;
    rem.terms_.clear();
    for (const auto & [e, c] : a.terms_) { rem.terms_.emplace(widen(e, nv), c); }
    MPoly div = b;
    div.vars_ = q.vars_;
    div.terms_.clear();
    for (const auto & [e, c] : b.terms_) { div.terms_.emplace(widen(e, nv), c); }
    const auto & [le, lc] = div.leading_term();
    while (!rem.is_zero()) {
      const auto & [re, rc] = rem.leading_term();
      Exponents qe(nv);
      for (std::size_t i = 0; i < nv; ++i) {
        if (re[i] < le[i]) { throw StructuralError("exact_div: divisor does not divide dividend"); }
        qe[i] = re[i] - le[i];
      }
      MPoly t = monomial(q.vars(), qe, rc / lc);
      q += t;
      rem -= t * div;
    }
    return q;
  }

  /// Canonical graded-lex rendering, e.g. "-2*X + 1".
  std::string to_string() const
  {
    if (terms_.empty()) { return "0"; }
    std::string out;
    bool first = true;
    for (const auto & [e, c] : terms_) {
      const bool neg = c.sign() < 0;
      const BigRational mag = neg ? -c : c;
      if (first) {
        if (neg) { out += "-"; }
      } else {
        out += neg ? " - " : " + ";
      }
      first = false;
      std::string mono;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) { continue; }
        if (!mono.empty()) { mono += "*"; }
        mono += vars()[i];
        if (e[i] > 1) { mono += "^" + std::to_string(e[i]); }
      }
      if (mono.empty()) {
        out += mag.to_compact_string();
      } else if (mag == BigRational(1)) {
        out += mono;
      } else {
        out += mag.to_compact_string() + "*" + mono;
      }
    }
    return out;
  }

  friend std::ostream & operator<<(std::ostream & os, const MPoly & p) { return os << p.to_string(); }

private:
  void set_vars(const VarNames & v)
  {
    vars_ = v.empty() ? nullptr : std::make_shared<const VarNames>(v);
  }

  static Exponents widen(const Exponents & e, std::size_t n)
  {
    if (e.size() == n) { return e; }
    Exponents r(n, 0u);
    std::copy(e.begin(), e.end(), r.begin());
    return r;
  }

  static std::shared_ptr<const VarNames> unify(const MPoly & a, const MPoly & b)
  {
    if (a.vars_ == b.vars_) { return a.vars_; }
    if (!a.nvars()) {
      if (!a.is_constant()) { throw StructuralError("malformed constant polynomial"); }
      return b.vars_;
    }
    if (!b.nvars()) { return a.vars_; }
    if (*a.vars_ != *b.vars_) { throw StructuralError("indeterminate lists do not match"); }
    return a.vars_;
  }

  void add_term(Exponents e, const BigRational & c)
  {
    if (c.is_zero()) { return; }
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) { terms_.erase(it); }
    }
  }

  void accumulate(const MPoly & o, const BigRational & sign)
  {
    auto target = unify(*this, o);
    const std::size_t nv = target ? target->size() : 0;
    if (target != vars_) {
      TermMap widened;
      for (auto & [e, c] : terms_) { widened.emplace(widen(e, nv), c); }
      terms_ = std::move(widened);
      vars_ = target;
    }
    for (const auto & [e, c] : o.terms_) { add_term(widen(e, nv), sign == BigRational(1) ? c : -c); }
  }

  std::shared_ptr<const VarNames> vars_;
  TermMap terms_;
};

inline bool is_zero(const MPoly & p) { return p.is_zero(); }
inline bool is_zero(const BigRational & r) { return r.is_zero(); }

/// Exact quotient over the rationals (a field).
inline BigRational exact_div(const BigRational & a, const BigRational & b) { return a / b; }

/// Unique polynomial of degree < #samples through the given (node, value)
/// pairs, in the single indeterminate `var`.
inline MPoly lagrange_interpolate(const std::vector<std::pair<BigRational, BigRational>> & samples,
                                  const std::string & var = "n")
{
  if (samples.empty()) { throw StructuralError("lagrange_interpolate: no samples"); }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      if (samples[i].first == samples[j].first) {
        throw StructuralError("lagrange_interpolate: duplicate node " + samples[i].first.to_string());
      }
    }
  }
  const MPoly::VarNames vars{var};
  const MPoly x = MPoly::variable(vars, var);
  MPoly result = MPoly::constant(vars, 0);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    MPoly basis = MPoly::constant(vars, 1);
    BigRational denom(1);
    for (std::size_t j = 0; j < samples.size(); ++j) {
      if (j == i) { continue; }
      basis *= x - MPoly::constant(vars, samples[j].first);
      denom *= samples[i].first - samples[j].first;
    }
    result += basis.scaled(samples[i].second / denom);
  }
  return result;
}

}  // namespace isoparam::exact
