#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

#include "moc/errors.hpp"

namespace moc {

// Exact arbitrary-precision fraction, always kept in canonical form
// (positive denominator, coprime numerator and denominator).
class Rational {
 public:
  Rational() = default;

  template <std::signed_integral I>
  Rational(I v) : value_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)

  template <std::unsigned_integral I>
  Rational(I v) : value_(static_cast<unsigned long>(v)) {}  // NOLINT(google-explicit-constructor)

  explicit Rational(const mpz_class& v) : value_(v) {}

  Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw DivisionByZero();
    value_ = mpq_class(num, den);
    value_.canonicalize();
  }

  explicit Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

  // Accepts "p", "p/q", with an optional leading '-' or U+2212.
  static Rational parse(std::string_view text) {
    std::string_view rest = text;
    bool negative = false;
    if (rest.starts_with("-")) {
      negative = true;
      rest.remove_prefix(1);
    } else if (rest.starts_with("\xE2\x88\x92")) {
      negative = true;
      rest.remove_prefix(3);
    }
    auto slash = rest.find('/');
    std::string_view num_text = rest.substr(0, slash);
    std::string_view den_text =
        slash == std::string_view::npos ? std::string_view{"1"} : rest.substr(slash + 1);
    auto all_digits = [](std::string_view s) {
      if (s.empty()) return false;
      for (char c : s)
        if (c < '0' || c > '9') return false;
      return true;
    };
    if (!all_digits(num_text) || !all_digits(den_text))
      throw ParseError("malformed rational '" + std::string(text) + "'");
    mpz_class num(std::string(num_text), 10);
    mpz_class den(std::string(den_text), 10);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    if (negative) num = -num;
    return Rational(num, den);
  }

  // "p/q", or "p" when q = 1.
  std::string str() const {
    if (value_.get_den() == 1) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
  }

  const mpz_class& numerator() const { return value_.get_num(); }
  const mpz_class& denominator() const { return value_.get_den(); }
  const mpq_class& mpq() const { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  Rational operator-() const { return Rational(mpq_class(-value_)); }

  Rational& operator+=(const Rational& o) {
    value_ += o.value_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    value_ -= o.value_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    value_ *= o.value_;
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DivisionByZero();
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  Rational inverse() const {
    if (is_zero()) throw DivisionByZero();
    return Rational(mpq_class(1 / value_));
  }

  // Integer power; negative exponents invert.
  Rational pow(long n) const {
    if (n < 0) return inverse().pow(-n);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(n));
    mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(n));
    return Rational(num, den);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class value_{0};
};

// Exact q-th root, if one exists in the rationals.
inline std::optional<Rational> exact_root(const Rational& u, unsigned long q) {
  if (q == 0) throw UsageError("zeroth root");
  if (q == 1) return u;
  if (u.sign() < 0 && q % 2 == 0) return std::nullopt;
  mpz_class num_abs = abs(u.numerator());
  mpz_class rn, rd;
  if (mpz_root(rn.get_mpz_t(), num_abs.get_mpz_t(), q) == 0) return std::nullopt;
  if (mpz_root(rd.get_mpz_t(), u.denominator().get_mpz_t(), q) == 0) return std::nullopt;
  if (u.sign() < 0) rn = -rn;
  return Rational(rn, rd);
}

// u^r for rational r; throws IrrationalScalarPower when the value is not rational.
inline Rational rational_pow(const Rational& u, const Rational& r) {
  if (!r.denominator().fits_ulong_p())
    throw IrrationalScalarPower("root index too large in " + u.str() + "^(" + r.str() + ")");
  if (!r.numerator().fits_slong_p()) throw UsageError("exponent too large: " + r.str());
  long p = r.numerator().get_si();
  unsigned long q = r.denominator().get_ui();
  if (u.is_zero()) {
    if (p < 0) throw DivisionByZero();
    return p == 0 ? Rational(1) : Rational(0);
  }
  auto root = exact_root(u, q);
  if (!root) throw IrrationalScalarPower(u.str() + "^(" + r.str() + ") is not rational");
  return root->pow(p);
}

inline Rational factorial(unsigned long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

}  // namespace moc
