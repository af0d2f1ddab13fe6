#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "moc/errors.hpp"
#include "moc/rational.hpp"
#include "moc/series.hpp"

namespace moc {

// Truncated series in w whose coefficients are truncated series in t:
// sum_{n=0}^{w_order} A_n(t) w^n. All inner series share one t-order.
class NestedSeries {
 public:
  NestedSeries(std::size_t w_order, std::size_t t_order)
      : coeffs_(w_order + 1, TSeries(t_order, "t")), t_order_(t_order) {}

  NestedSeries(std::vector<TSeries> coefficients, std::size_t t_order)
      : coeffs_(std::move(coefficients)), t_order_(t_order) {
    if (coeffs_.empty()) throw UsageError("nested series needs at least one coefficient");
    for (auto& c : coeffs_) {
      if (c.var() != "t") throw UsageError("inner series must be in t");
      if (c.order() < t_order_) throw UsageError("inner series order below the nested t-order");
      c = c.truncated(t_order_);
    }
  }

  static NestedSeries constant(const TSeries& c, std::size_t w_order) {
    NestedSeries out(w_order, c.order());
    out.coeffs_[0] = c;
    return out;
  }

  std::size_t w_order() const { return coeffs_.size() - 1; }
  std::size_t t_order() const { return t_order_; }

  // The w^n coefficient as a series in t.
  const TSeries& coefficient(std::size_t n) const {
    check_w(n);
    return coeffs_[n];
  }
  TSeries& coefficient(std::size_t n) {
    check_w(n);
    return coeffs_[n];
  }

  friend NestedSeries operator+(const NestedSeries& a, const NestedSeries& b) { return combine(a, b, false); }
  friend NestedSeries operator-(const NestedSeries& a, const NestedSeries& b) { return combine(a, b, true); }

  friend NestedSeries operator*(const NestedSeries& a, const NestedSeries& b) {
    const std::size_t wn = std::min(a.w_order(), b.w_order());
    const std::size_t tn = std::min(a.t_order_, b.t_order_);
    NestedSeries out(wn, tn);
    for (std::size_t i = 0; i <= wn; ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; i + j <= wn; ++j) {
        if (b.coeffs_[j].is_zero()) continue;
        out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return out;
  }

  // Multiplication by a series in t (a w-constant).
  friend NestedSeries operator*(const NestedSeries& a, const TSeries& c) {
    const std::size_t tn = std::min(a.t_order_, c.order());
    NestedSeries out(a.w_order(), tn);
    for (std::size_t i = 0; i <= a.w_order(); ++i) out.coeffs_[i] = a.coeffs_[i] * c;
    return out;
  }

  friend NestedSeries operator*(NestedSeries a, const Rational& c) {
    for (auto& x : a.coeffs_) x = x * c;
    return a;
  }

  NestedSeries& operator+=(const NestedSeries& o) { return *this = *this + o; }

  friend bool operator==(const NestedSeries& a, const NestedSeries& b) {
    return a.t_order_ == b.t_order_ && a.coeffs_ == b.coeffs_;
  }

  // Substitutes t = x in every (truncated) inner series.
  std::vector<Rational> specialize_t(const Rational& x) const {
    std::vector<Rational> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(c.eval_truncated(x));
    return out;
  }

 private:
  void check_w(std::size_t n) const {
    if (n > w_order())
      throw TruncationExceeded("w-coefficient " + std::to_string(n) + " beyond w-order " +
                               std::to_string(w_order()));
  }

  static NestedSeries combine(const NestedSeries& a, const NestedSeries& b, bool subtract) {
    const std::size_t wn = std::min(a.w_order(), b.w_order());
    const std::size_t tn = std::min(a.t_order_, b.t_order_);
    NestedSeries out(wn, tn);
    for (std::size_t i = 0; i <= wn; ++i)
      out.coeffs_[i] = subtract ? a.coeffs_[i] - b.coeffs_[i] : a.coeffs_[i] + b.coeffs_[i];
    return out;
  }

  std::vector<TSeries> coeffs_;
  std::size_t t_order_;
};

// a^r where the w-constant term u(t) of a is a unit series in t:
// a^r = u^r sum_m binomial(r, m) v^m with v = a/u - 1 (v has no w^0 term).
inline NestedSeries nested_pow_rational(const NestedSeries& a, const Rational& r) {
  const TSeries& u = a.coefficient(0);
  const TSeries u_power = series_pow_rational(u, r);
  NestedSeries v = a * u.inverse();
  v.coefficient(0) = TSeries(a.t_order(), "t");

  const std::size_t wn = a.w_order();
  NestedSeries sum = NestedSeries::constant(TSeries::one(a.t_order()), wn);
  NestedSeries v_power = sum;
  Rational coeff(1);
  for (std::size_t m = 1; m <= wn; ++m) {
    coeff = coeff * (r - Rational(m - 1)) / Rational(m);
    if (coeff.is_zero()) break;
    v_power = v_power * v;
    sum += v_power * coeff;
  }
  return sum * u_power;
}

// f(w,t) = e^{-w} - t e^{w} = sum_n (w^n / n!) ((-1)^n - t).
inline NestedSeries exp_difference(std::size_t t_order, std::size_t w_order) {
  NestedSeries f(w_order, t_order);
  Rational inv_factorial(1);
  for (std::size_t n = 0; n <= w_order; ++n) {
    if (n > 0) inv_factorial /= Rational(n);
    const Rational sign = n % 2 == 0 ? Rational(1) : Rational(-1);
    f.coefficient(n) = TSeries::linear(sign * inv_factorial, -inv_factorial, t_order);
  }
  return f;
}

// Bivariate expansion of f(w,t)^{-gamma-1}.
inline NestedSeries nested_exp_core(const Rational& gamma, std::size_t t_order, std::size_t w_order) {
  return nested_pow_rational(exp_difference(t_order, w_order), -gamma - Rational(1));
}

// sinh_t(w) = (e^{-w} - t e^{w}) / 2.
inline NestedSeries sinh_t_series(std::size_t t_order, std::size_t w_order) {
  return exp_difference(t_order, w_order) * Rational(1, 2);
}

}  // namespace moc
