#pragma once

#include <ostream>
#include <string>

#include "isoparam/error.hpp"
#include "isoparam/exact/mpoly.hpp"
#include "isoparam/exact/rational.hpp"

namespace isoparam::exact {

/**
 * Element a + b*mu of T[mu]/(mu^2 - d).
 *
 * The relation is applied on every product, so b never carries a mu^2 term.
 * T is BigRational or MPoly. Inversion needs a nonzero norm a^2 - d*b^2 and
 * is only offered when T is a field.
 */
template<class T>
class QuadExt
{
public:
  QuadExt() = default;
  QuadExt(T a, T b, T d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {}

  /// The element a (with b = 0) in the extension defined by d.
  static QuadExt embed(const T & a, const T & d) { return QuadExt(a, a - a, d); }
  /// The generator mu itself.
  static QuadExt generator(const T & d) { return QuadExt(d - d, d - d + T(1), d); }

  const T & a() const { return a_; }
  const T & b() const { return b_; }
  const T & d() const { return d_; }

  bool is_zero() const { return exact::is_zero(a_) && exact::is_zero(b_); }

  QuadExt & operator+=(const QuadExt & o) { check(o); a_ += o.a_; b_ += o.b_; return *this; }
  QuadExt & operator-=(const QuadExt & o) { check(o); a_ -= o.a_; b_ -= o.b_; return *this; }
  QuadExt & operator*=(const QuadExt & o) { *this = *this * o; return *this; }

  friend QuadExt operator+(QuadExt x, const QuadExt & y) { return x += y; }
  friend QuadExt operator-(QuadExt x, const QuadExt & y) { return x -= y; }
  friend QuadExt operator-(const QuadExt & x) { return QuadExt(-x.a_, -x.b_, x.d_); }
  friend QuadExt operator*(const QuadExt & x, const QuadExt & y)
  {
    x.check(y);
    return QuadExt(x.a_ * y.a_ + x.d_ * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, x.d_);
  }

  friend bool operator==(const QuadExt & x, const QuadExt & y) { return x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_; }
  friend bool operator!=(const QuadExt & x, const QuadExt & y) { return !(x == y); }

  QuadExt conj() const { return QuadExt(a_, -b_, d_); }
  /// N(a + b mu) = a^2 - d b^2, the mu-free product with the conjugate.
  T norm() const { return a_ * a_ - d_ * b_ * b_; }

  QuadExt inverse() const
  {
    const T nrm = norm();
    if (exact::is_zero(nrm)) { throw ArithmeticError("QuadExt: element has zero norm and is not invertible"); }
    return QuadExt(exact_div(a_, nrm), exact_div(-b_, nrm), d_);
  }

  std::string to_string() const
  {
    return "(" + str(a_) + ") + (" + str(b_) + ")*mu";
  }
  friend std::ostream & operator<<(std::ostream & os, const QuadExt & x) { return os << x.to_string(); }

private:
  static std::string str(const BigRational & r) { return r.to_compact_string(); }
  static std::string str(const MPoly & p) { return p.to_string(); }

  void check(const QuadExt & o) const
  {
    if (!(d_ == o.d_)) { throw StructuralError("QuadExt: operands live in different extensions"); }
  }

  T a_, b_, d_;
};

template<class T>
bool is_zero(const QuadExt<T> & x) { return x.is_zero(); }

template<class T>
QuadExt<T> exact_div(const QuadExt<T> & x, const QuadExt<T> & y)
{
  return x * y.inverse();
}

}  // namespace isoparam::exact
