#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace horadam {

// Arbitrary-precision signed integer.
using Int = mpz_class;

/// Exact rational scalar, kept canonical at all times: reduced to lowest
/// terms with a positive denominator, so equality is structural equality.
/// Integers embed with denominator 1.
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}              // NOLINT: implicit by design
  Rat(const Int& n) : v_(n) {}        // NOLINT
  Rat(const Int& num, const Int& den) : v_(num, den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    v_.canonicalize();
  }

  Int numerator() const { return v_.get_num(); }
  Int denominator() const { return v_.get_den(); }
  bool is_integer() const { return v_.get_den() == 1; }
  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }

  friend Rat operator+(const Rat& x, const Rat& y) {
    return Rat(mpq_class(x.v_ + y.v_), raw_tag{});
  }
  friend Rat operator-(const Rat& x, const Rat& y) {
    return Rat(mpq_class(x.v_ - y.v_), raw_tag{});
  }
  friend Rat operator*(const Rat& x, const Rat& y) {
    return Rat(mpq_class(x.v_ * y.v_), raw_tag{});
  }
  friend Rat operator/(const Rat& x, const Rat& y) {
    if (y.is_zero()) throw std::domain_error("rational division by zero");
    return Rat(mpq_class(x.v_ / y.v_), raw_tag{});
  }
  Rat operator-() const { return Rat(mpq_class(-v_), raw_tag{}); }

  Rat& operator+=(const Rat& x) { v_ += x.v_; return *this; }
  Rat& operator-=(const Rat& x) { v_ -= x.v_; return *this; }
  Rat& operator*=(const Rat& x) { v_ *= x.v_; return *this; }
  Rat& operator/=(const Rat& x) { return *this = *this / x; }

  friend bool operator==(const Rat& x, const Rat& y) { return x.v_ == y.v_; }
  friend bool operator!=(const Rat& x, const Rat& y) { return x.v_ != y.v_; }
  friend bool operator<(const Rat& x, const Rat& y) { return x.v_ < y.v_; }
  friend bool operator>(const Rat& x, const Rat& y) { return x.v_ > y.v_; }
  friend bool operator<=(const Rat& x, const Rat& y) { return x.v_ <= y.v_; }
  friend bool operator>=(const Rat& x, const Rat& y) { return x.v_ >= y.v_; }

  // Canonical text form: "num/den", or just "num" when the denominator is 1.
  std::string str() const { return v_.get_str(); }

  // Accepts the canonical form and any "a/b" with b != 0; canonicalizes.
  static Rat parse(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rat(parse_int(text));
    return Rat(parse_int(text.substr(0, slash)),
               parse_int(text.substr(slash + 1)));
  }

  static Int parse_int(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty integer literal");
    Int value;
    if (mpz_set_str(value.get_mpz_t(), std::string(text).c_str(), 10) != 0)
      throw std::invalid_argument("bad integer literal: " + std::string(text));
    return value;
  }

 private:
  struct raw_tag {};
  Rat(mpq_class v, raw_tag) : v_(std::move(v)) {}
  mpq_class v_;  // mpq arithmetic preserves canonical form of canonical inputs
};

// Exact base^e for a signed exponent; negative e inverts (base must be nonzero).
inline Rat pow_signed(const Rat& base, long e) {
  if (e < 0) {
    if (base.is_zero()) throw std::domain_error("negative power of zero");
    return pow_signed(Rat(1) / base, -e);
  }
  Rat acc(1), b = base;
  unsigned long u = static_cast<unsigned long>(e);
  while (u > 0) {
    if (u & 1) acc *= b;
    b *= b;
    u >>= 1;
  }
  return acc;
}

inline Int pow_int(const Int& base, unsigned long e) {
  Int out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

}  // namespace horadam
