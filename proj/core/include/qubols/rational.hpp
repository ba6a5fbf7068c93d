#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "qubols/errors.hpp"

namespace qubols {

/// Exact rational number over 64-bit integers.
///
/// All model coefficients and energies in this library are exact; tests can
/// assert equality instead of juggling float tolerances. Intermediates are
/// computed in 128-bit arithmetic and an OverflowError is thrown if a reduced
/// result no longer fits in 64 bits. Purely integral data (QAPLIB instances,
/// unit-weight graphs) stays on a denominator-one fast path.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  constexpr Rational(long long value) : num_(value), den_(1) {}  // NOLINT(google-explicit-constructor)
  constexpr Rational(long value) : num_(value), den_(1) {}       // NOLINT(google-explicit-constructor)
  constexpr Rational(int value) : num_(value), den_(1) {}        // NOLINT(google-explicit-constructor)

  Rational(long long num, long long den) : num_(num), den_(den) {
    if (den_ == 0) throw Error("Rational: zero denominator");
    normalize_();
  }

  /// Exact conversion: every finite double is a dyadic rational.
  static Rational from_double(double value) {
    if (!std::isfinite(value)) throw Error("Rational: non-finite double");
    if (value == 0.0) return Rational(0);
    int exp = 0;
    double frac = std::frexp(value, &exp);  // value = frac * 2^exp, |frac| in [0.5, 1)
    // 53 significand bits; scale the fraction to an integer.
    auto mant = static_cast<long long>(std::ldexp(frac, 53));
    exp -= 53;
    while (mant != 0 && (mant & 1) == 0) {
      mant >>= 1;
      ++exp;
    }
    if (exp >= 0) {
      if (exp > 62) throw OverflowError("Rational: double too large");
      return Rational(mul_checked_(mant, 1LL << exp), 1);
    }
    if (exp < -62) throw OverflowError("Rational: double denominator too large");
    return Rational(mant, 1LL << (-exp));
  }

  /// Parses "12", "-3/4" or decimal forms like "2.5".
  static Rational parse(std::string_view text);

  long long numerator() const { return num_; }
  long long denominator() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_positive() const { return num_ > 0; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  Rational abs() const { return num_ < 0 ? Rational(-num_, den_, raw_tag{}) : *this; }

  Rational operator-() const { return Rational(-num_, den_, raw_tag{}); }

  Rational& operator+=(const Rational& o) {
    if (den_ == 1 && o.den_ == 1) {
      num_ = add_checked_(num_, o.num_);
      return *this;
    }
    __int128 n = static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_;
    __int128 d = static_cast<__int128>(den_) * o.den_;
    assign_reduced_(n, d);
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    if (den_ == 1 && o.den_ == 1) {
      num_ = sub_checked_(num_, o.num_);
      return *this;
    }
    __int128 n = static_cast<__int128>(num_) * o.den_ - static_cast<__int128>(o.num_) * den_;
    __int128 d = static_cast<__int128>(den_) * o.den_;
    assign_reduced_(n, d);
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    if (den_ == 1 && o.den_ == 1) {
      num_ = mul_checked_(num_, o.num_);
      return *this;
    }
    __int128 n = static_cast<__int128>(num_) * o.num_;
    __int128 d = static_cast<__int128>(den_) * o.den_;
    assign_reduced_(n, d);
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.num_ == 0) throw Error("Rational: division by zero");
    __int128 n = static_cast<__int128>(num_) * o.den_;
    __int128 d = static_cast<__int128>(den_) * o.num_;
    assign_reduced_(n, d);
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// "7", "-3/4"
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  struct raw_tag {};
  constexpr Rational(long long num, long long den, raw_tag) : num_(num), den_(den) {}

  static long long add_checked_(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("Rational: addition overflow");
    return r;
  }
  static long long sub_checked_(long long a, long long b) {
    long long r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("Rational: subtraction overflow");
    return r;
  }
  static long long mul_checked_(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("Rational: multiplication overflow");
    return r;
  }

  static __int128 gcd128_(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  void assign_reduced_(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) {
      num_ = 0;
      den_ = 1;
      return;
    }
    __int128 g = gcd128_(n, d);
    n /= g;
    d /= g;
    constexpr __int128 lo = INT64_MIN, hi = INT64_MAX;
    if (n < lo || n > hi || d > hi) throw OverflowError("Rational: reduced value out of range");
    num_ = static_cast<long long>(n);
    den_ = static_cast<long long>(d);
  }

  void normalize_() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_ == 0) {
      den_ = 1;
      return;
    }
    long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    num_ /= g;
    den_ /= g;
  }

  long long num_;
  long long den_;
};

inline Rational Rational::parse(std::string_view text) {
  auto bad = [&] { throw ParseError("not a number: '" + std::string(text) + "'"); };
  if (text.empty()) bad();
  std::string s(text);
  std::size_t slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      std::size_t p1 = 0, p2 = 0;
      long long n = std::stoll(s.substr(0, slash), &p1);
      long long d = std::stoll(s.substr(slash + 1), &p2);
      if (p1 != slash || p2 != s.size() - slash - 1) bad();
      return Rational(n, d);
    }
    std::size_t dot = s.find('.');
    if (dot == std::string::npos) {
      std::size_t pos = 0;
      long long v = std::stoll(s, &pos);
      if (pos != s.size()) bad();
      return Rational(v);
    }
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac_len = s.size() - dot - 1;
    if (frac_len == 0 || digits.empty()) bad();
    std::size_t pos = 0;
    long long v = std::stoll(digits, &pos);
    if (pos != digits.size()) bad();
    long long den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) den = mul_checked_(den, 10);
    return Rational(v, den);
  } catch (const std::invalid_argument&) {
    bad();
  } catch (const std::out_of_range&) {
    throw OverflowError("number out of range: '" + std::string(text) + "'");
  }
  return Rational(0);  // unreachable
}

}  // namespace qubols
