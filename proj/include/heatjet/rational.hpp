#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace heatjet {

/// Exact rational number backed by GMP. Always canonical: reduced with a
/// positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : v_(v) {}   // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }
  explicit Rational(const mpz_class& v) : v_(v) {}

  /// Parses "p", "-p" or "p/q" (no decimals, no whitespace).
  static Rational parse(std::string_view text);

  std::string str() const { return v_.get_str(); }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  bool is_integer() const { return v_.get_den() == 1; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }
  mpq_class& raw() { return v_; }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) {
    v_ += o.v_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    v_ -= o.v_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    v_ *= o.v_;
    return *this;
  }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.v_ == b.v_;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

  /// acc += a * b without a temporary Rational.
  static void fma(Rational& acc, const Rational& a, const Rational& b);

 private:
  mpq_class v_;
};

Rational pow(const Rational& base, int exponent);

/// n! as an exact rational; n >= 0.
Rational factorial(int n);

/// Falling factorial [x]_r = x (x-1) ... (x-r+1); [x]_0 = 1.
Rational falling_factorial(const Rational& x, int r);

/// Generalized binomial coefficient (x choose r) = [x]_r / r! for rational x.
Rational rational_binomial(const Rational& x, int r);

/// Sum_{l=0}^{r} (r + n/2 choose r - l) (-n/2 - mu choose l), which equals
/// (r - mu choose r), i.e. 1 for mu = 0 and 0 for 0 < mu <= r.
Rational binomial_inversion_sum(int n, int r, int mu);

}  // namespace heatjet
