#pragma once

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>

#include "isoparam/error.hpp"

namespace isoparam::exact {

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator. Zero is canonically 0/1.
class BigRational
{
public:
  BigRational() = default;
  template<std::integral I>
  BigRational(I v)  // NOLINT(google-explicit-constructor)
  {
    if constexpr (std::is_signed_v<I>) {
      q_ = mpq_class(mpz_class(static_cast<long>(v)));
    } else {
      q_ = mpq_class(mpz_class(static_cast<unsigned long>(v)));
    }
  }
  BigRational(const mpz_class & num, const mpz_class & den)
  {
    if (den == 0) { throw ArithmeticError("BigRational: zero denominator"); }
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  BigRational(long num, long den) : BigRational(mpz_class(num), mpz_class(den)) {}
  explicit BigRational(const mpq_class & q) : q_(q) { q_.canonicalize(); }

  /// Parses "p/q", "p" or "-p/q". Throws StructuralError on malformed input.
  static BigRational parse(std::string_view text)
  {
    std::string s(text);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) { s.pop_back(); }
    std::size_t b = 0;
    while (b < s.size() && (s[b] == ' ' || s[b] == '\t')) { ++b; }
    s = s.substr(b);
    if (s.empty()) { throw StructuralError("malformed rational: empty string"); }
    auto valid_int = [](const std::string & t) {
      if (t.empty()) { return false; }
      std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
      if (i == t.size()) { return false; }
      for (; i < t.size(); ++i) {
        if (t[i] < '0' || t[i] > '9') { return false; }
      }
      return true;
    };
    auto strip_plus = [](std::string t) { return (!t.empty() && t[0] == '+') ? t.substr(1) : t; };
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
      if (!valid_int(s)) { throw StructuralError("malformed rational: '" + s + "'"); }
      return BigRational(mpz_class(strip_plus(s)), mpz_class(1));
    }
    const std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') {
      throw StructuralError("malformed rational: '" + s + "'");
    }
    return BigRational(mpz_class(strip_plus(num)), mpz_class(den));
  }

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  const mpq_class & raw() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }
  double to_double() const { return q_.get_d(); }

  /// Serialized form "p/q" (always with a denominator, e.g. "0/1", "3/1").
  std::string to_string() const { return q_.get_num().get_str() + "/" + q_.get_den().get_str(); }

  /// Compact form used inside polynomial strings: "3", "-1/2".
  std::string to_compact_string() const
  {
    if (is_integer()) { return q_.get_num().get_str(); }
    return to_string();
  }

  BigRational & operator+=(const BigRational & o) { q_ += o.q_; return *this; }
  BigRational & operator-=(const BigRational & o) { q_ -= o.q_; return *this; }
  BigRational & operator*=(const BigRational & o) { q_ *= o.q_; return *this; }
  BigRational & operator/=(const BigRational & o)
  {
    if (o.is_zero()) { throw ArithmeticError("BigRational: division by zero"); }
    q_ /= o.q_;
    return *this;
  }

  friend BigRational operator+(BigRational a, const BigRational & b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational & b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational & b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational & b) { return a /= b; }
  friend BigRational operator-(const BigRational & a) { return BigRational(mpq_class(-a.q_)); }

  friend bool operator==(const BigRational & a, const BigRational & b) { return a.q_ == b.q_; }
  friend bool operator!=(const BigRational & a, const BigRational & b) { return a.q_ != b.q_; }
  friend bool operator<(const BigRational & a, const BigRational & b) { return a.q_ < b.q_; }
  friend bool operator>(const BigRational & a, const BigRational & b) { return a.q_ > b.q_; }
  friend bool operator<=(const BigRational & a, const BigRational & b) { return a.q_ <= b.q_; }
  friend bool operator>=(const BigRational & a, const BigRational & b) { return a.q_ >= b.q_; }

  friend std::ostream & operator<<(std::ostream & os, const BigRational & r) { return os << r.to_string(); }

private:
  mpq_class q_{0};
};

inline BigRational abs(const BigRational & r) { return r.sign() < 0 ? -r : r; }

/// Integer power with non-negative exponent.
inline BigRational pow(const BigRational & base, unsigned e)
{
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.numerator().get_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.denominator().get_mpz_t(), e);
  return BigRational(num, den);
}

inline BigRational factorial(unsigned k)
{
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), k);
  return BigRational(f, mpz_class(1));
}

inline BigRational binomial(long n, long k)
{
  if (k < 0 || n < 0 || k > n) { return BigRational(0); }
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return BigRational(b, mpz_class(1));
}

/// Rising factorial p (p+1) ... (p+d-1); equals 1 for d = 0.
inline BigRational rising_factorial(long p, unsigned d)
{
  BigRational r(1);
  for (unsigned i = 0; i < d; ++i) { r *= BigRational(p + static_cast<long>(i)); }
  return r;
}

/// Binary arithmetic dispatch used by the CLI and tests.
enum class RatOp { add, sub, mul, div };

inline BigRational rat_arith(const BigRational & a, const BigRational & b, RatOp op)
{
  switch (op) {
    case RatOp::add: return a + b;
    case RatOp::sub: return a - b;
    case RatOp::mul: return a * b;
    case RatOp::div: return a / b;
  }
  throw StructuralError("rat_arith: unknown op");
}

}  // namespace isoparam::exact
