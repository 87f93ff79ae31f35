#include "heatjet/rational.hpp"

#include <cctype>

#include "heatjet/error.hpp"

namespace heatjet {

Rational::Rational(long num, long den) {
  if (den == 0) throw PreconditionError("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  auto valid_integer = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!valid_integer(num) || (slash != std::string_view::npos &&
                              (!valid_integer(den) || den.front() == '-' ||
                               den.front() == '+'))) {
    throw Error("malformed rational '" + std::string(text) + "'");
  }
  auto strip_plus = [](std::string_view s) {
    return std::string(s.front() == '+' ? s.substr(1) : s);
  };
  mpz_class p(strip_plus(num), 10);
  mpz_class q = 1;
  if (slash != std::string_view::npos) {
    q = mpz_class(strip_plus(den), 10);
    if (q == 0) throw Error("rational with zero denominator '" + std::string(text) + "'");
  }
  return Rational(mpq_class(p, q));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw PreconditionError("division by zero rational");
  v_ /= o.v_;
  return *this;
}

void Rational::fma(Rational& acc, const Rational& a, const Rational& b) {
  thread_local mpq_class tmp;
  mpq_mul(tmp.get_mpq_t(), a.v_.get_mpq_t(), b.v_.get_mpq_t());
  mpq_add(acc.v_.get_mpq_t(), acc.v_.get_mpq_t(), tmp.get_mpq_t());
}

Rational pow(const Rational& base, int exponent) {
  if (exponent < 0) return Rational(1) / pow(base, -exponent);
  Rational result(1);
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

Rational factorial(int n) {
  if (n < 0) throw PreconditionError("factorial of negative integer");
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f);
}

Rational falling_factorial(const Rational& x, int r) {
  if (r < 0) throw PreconditionError("falling factorial with negative length");
  Rational result(1);
  for (int i = 0; i < r; ++i) result *= x - Rational(i);
  return result;
}

Rational rational_binomial(const Rational& x, int r) {
  if (r < 0) throw PreconditionError("binomial coefficient with negative r");
  return falling_factorial(x, r) / factorial(r);
}

Rational binomial_inversion_sum(int n, int r, int mu) {
  if (!(r >= mu && mu >= 0)) {
    throw PreconditionError("binomial inversion requires r >= mu >= 0");
  }
  const Rational half_n(n, 2);
  Rational sum;
  for (int l = 0; l <= r; ++l) {
    sum += rational_binomial(Rational(r) + half_n, r - l) *
           rational_binomial(-half_n - Rational(mu), l);
  }
  return sum;
}

}  // namespace heatjet
