#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

// Minimal exact rational arithmetic on __int128 with eager gcd reduction.
// Used by the algebraic identity checks that must hold exactly; throws on
// overflow rather than silently wrapping.

namespace vpcs {

class Rational {
public:
  Rational() = default;
  Rational(long long n) : num_(n), den_(1) {}
  Rational(long long n, long long d) : num_(n), den_(d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    normalize();
  }

  Rational operator+(const Rational& o) const {
    return make(checked_add(checked_mul(num_, o.den_), checked_mul(o.num_, den_)),
                checked_mul(den_, o.den_));
  }
  Rational operator-(const Rational& o) const {
    return make(checked_sub(checked_mul(num_, o.den_), checked_mul(o.num_, den_)),
                checked_mul(den_, o.den_));
  }
  Rational operator*(const Rational& o) const {
    return make(checked_mul(num_, o.num_), checked_mul(den_, o.den_));
  }
  Rational operator/(const Rational& o) const {
    if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
    return make(checked_mul(num_, o.den_), checked_mul(den_, o.num_));
  }
  bool operator==(const Rational& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const {
    return checked_mul(num_, o.den_) < checked_mul(o.num_, den_);
  }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  bool is_zero() const { return num_ == 0; }
  std::string str() const;

private:
  using i128 = __int128;
  i128 num_ = 0;
  i128 den_ = 1;

  static Rational make(i128 n, i128 d) {
    Rational r;
    r.num_ = n;
    r.den_ = d;
    r.normalize();
    return r;
  }
  static i128 checked_mul(i128 a, i128 b) {
    i128 out;
    if (__builtin_mul_overflow(a, b, &out))
      throw std::overflow_error("Rational: multiplication overflow");
    return out;
  }
  static i128 checked_add(i128 a, i128 b) {
    i128 out;
    if (__builtin_add_overflow(a, b, &out))
      throw std::overflow_error("Rational: addition overflow");
    return out;
  }
  static i128 checked_sub(i128 a, i128 b) {
    i128 out;
    if (__builtin_sub_overflow(a, b, &out))
      throw std::overflow_error("Rational: subtraction overflow");
    return out;
  }
  static i128 gcd(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      const i128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }
  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_ == 0) {
      den_ = 1;
      return;
    }
    const i128 g = gcd(num_, den_);
    num_ /= g;
    den_ /= g;
  }
};

} // namespace vpcs
