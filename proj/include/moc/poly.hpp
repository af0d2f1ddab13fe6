#pragma once

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "moc/errors.hpp"
#include "moc/rational.hpp"

namespace moc {

// Dense univariate polynomial over Rational. Coefficient i multiplies x^i.
// The zero polynomial has no coefficients; otherwise the top one is nonzero.
class Poly {
 public:
  explicit Poly(std::string var = "gamma") : var_(std::move(var)) {}

  Poly(std::vector<Rational> coefficients, std::string var)
      : coeffs_(std::move(coefficients)), var_(std::move(var)) {
    normalize();
  }

  static Poly constant(const Rational& c, std::string var) { return Poly({c}, std::move(var)); }
  static Poly indeterminate(std::string var) { return Poly({Rational(0), Rational(1)}, std::move(var)); }

  const std::string& var() const { return var_; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  // -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }

  Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

  bool has_integer_coefficients() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.is_integer(); });
  }

  Rational eval(const Rational& x) const {
    Rational acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  Poly& operator+=(const Poly& o) {
    check_var(o);
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    normalize();
    return *this;
  }
  Poly& operator-=(const Poly& o) { return *this += -o; }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_var(b);
    if (a.is_zero() || b.is_zero()) return Poly(a.var_);
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Poly(std::move(out), a.var_);
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  // Scalar operations keep the indeterminate.
  friend Poly operator*(Poly a, const Rational& c) {
    for (auto& x : a.coeffs_) x *= c;
    a.normalize();
    return a;
  }
  friend Poly operator*(const Rational& c, Poly a) { return std::move(a) * c; }
  friend Poly operator/(Poly a, const Rational& c) {
    if (c.is_zero()) throw DivisionByZero();
    return std::move(a) * c.inverse();
  }
  friend Poly operator+(Poly a, const Rational& c) { return a += constant(c, a.var_); }
  friend Poly operator+(const Rational& c, Poly a) { return std::move(a) + c; }
  friend Poly operator-(Poly a, const Rational& c) { return std::move(a) + (-c); }

  friend bool operator==(const Poly& a, const Poly& b) { return a.var_ == b.var_ && a.coeffs_ == b.coeffs_; }

  friend std::ostream& operator<<(std::ostream& os, const Poly& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (std::size_t i = p.coeffs_.size(); i-- > 0;) {
      const Rational& c = p.coeffs_[i];
      if (c.is_zero()) continue;
      if (!first) os << (c.sign() < 0 ? " - " : " + ");
      else if (c.sign() < 0) os << "-";
      Rational mag = c.sign() < 0 ? -c : c;
      if (i == 0 || mag != Rational(1)) os << mag.str();
      if (i > 0) os << p.var_;
      if (i > 1) os << "^" << i;
      first = false;
    }
    return os;
  }

 private:
  void check_var(const Poly& o) const {
    if (var_ != o.var_) throw UsageError("indeterminate mismatch: " + var_ + " vs " + o.var_);
  }
  void normalize() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
  std::string var_;
};

}  // namespace moc
