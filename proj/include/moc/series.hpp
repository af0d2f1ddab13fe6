#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "moc/errors.hpp"
#include "moc/rational.hpp"

namespace moc {

// Per-thread count of rational multiplications performed by series
// arithmetic. Active only inside a CostTally scope.
class CostTally {
 public:
  CostTally() : previous_(current()) { current() = &count_; }
  ~CostTally() { current() = previous_; }
  CostTally(const CostTally&) = delete;
  CostTally& operator=(const CostTally&) = delete;

  std::uint64_t count() const { return count_; }

  static void add(std::uint64_t ops) {
    if (auto* c = current()) *c += ops;
  }

 private:
  static std::uint64_t*& current() {
    thread_local std::uint64_t* active = nullptr;
    return active;
  }

  std::uint64_t count_ = 0;
  std::uint64_t* previous_;
};

// Truncated power series sum_{n=0}^{order} c_n x^n over Rational.
// Always holds exactly order+1 coefficients; binary operations truncate to
// the smaller of the two orders.
class TSeries {
 public:
  explicit TSeries(std::size_t order = 0, std::string var = "t")
      : coeffs_(order + 1), var_(std::move(var)) {}

  // Pads with zeros or truncates so that exactly order+1 coefficients remain.
  TSeries(std::vector<Rational> coefficients, std::size_t order, std::string var = "t")
      : coeffs_(std::move(coefficients)), var_(std::move(var)) {
    coeffs_.resize(order + 1);
  }

  static TSeries constant(const Rational& c, std::size_t order, std::string var = "t") {
    TSeries s(order, std::move(var));
    s.coeffs_[0] = c;
    return s;
  }
  static TSeries one(std::size_t order, std::string var = "t") { return constant(Rational(1), order, std::move(var)); }

  // c0 + c1*x, truncated.
  static TSeries linear(const Rational& c0, const Rational& c1, std::size_t order, std::string var = "t") {
    TSeries s = constant(c0, order, std::move(var));
    if (order >= 1) s.coeffs_[1] = c1;
    return s;
  }

  std::size_t order() const { return coeffs_.size() - 1; }
  const std::string& var() const { return var_; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  const Rational& operator[](std::size_t n) const { return coeffs_.at(n); }
  Rational& operator[](std::size_t n) { return coeffs_.at(n); }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.is_zero(); });
  }

  TSeries truncated(std::size_t order) const {
    return TSeries(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + std::min(order, this->order()) + 1),
                   std::min(order, this->order()), var_);
  }

  // Value of the truncated polynomial at x.
  Rational eval_truncated(const Rational& x) const {
    Rational acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  TSeries operator-() const {
    TSeries r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  friend TSeries operator+(const TSeries& a, const TSeries& b) { return combine(a, b, false); }
  friend TSeries operator-(const TSeries& a, const TSeries& b) { return combine(a, b, true); }

  // Cauchy product truncated at min(order_a, order_b).
  friend TSeries operator*(const TSeries& a, const TSeries& b) {
    a.check_var(b);
    const std::size_t n = std::min(a.order(), b.order());
    TSeries out(n, a.var_);
    std::uint64_t ops = 0;
    for (std::size_t i = 0; i <= n; ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; i + j <= n; ++j) {
        if (b.coeffs_[j].is_zero()) continue;
        out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        ++ops;
      }
    }
    CostTally::add(ops);
    return out;
  }

  friend TSeries operator*(TSeries a, const Rational& c) {
    for (auto& x : a.coeffs_) x *= c;
    CostTally::add(a.coeffs_.size());
    return a;
  }
  friend TSeries operator*(const Rational& c, TSeries a) { return std::move(a) * c; }
  friend TSeries operator/(TSeries a, const Rational& c) { return std::move(a) * c.inverse(); }

  TSeries& operator+=(const TSeries& o) { return *this = *this + o; }
  TSeries& operator-=(const TSeries& o) { return *this = *this - o; }
  TSeries& operator*=(const TSeries& o) { return *this = *this * o; }

  friend bool operator==(const TSeries& a, const TSeries& b) {
    return a.var_ == b.var_ && a.coeffs_ == b.coeffs_;
  }

  // Multiplicative inverse to the same order, via
  // b_0 = 1/a_0, b_n = -(1/a_0) sum_{k=1}^{n} a_k b_{n-k}.
  TSeries inverse() const {
    if (coeffs_[0].is_zero()) throw NonUnitSeries("inverse of a series with zero constant term");
    const Rational inv0 = coeffs_[0].inverse();
    TSeries out(order(), var_);
    out.coeffs_[0] = inv0;
    std::uint64_t ops = 0;
    for (std::size_t n = 1; n <= order(); ++n) {
      Rational acc;
      for (std::size_t k = 1; k <= n; ++k) {
        if (coeffs_[k].is_zero()) continue;
        acc += coeffs_[k] * out.coeffs_[n - k];
        ++ops;
      }
      out.coeffs_[n] = -acc * inv0;
    }
    CostTally::add(ops);
    return out;
  }

  // Integer power by squaring; negative exponents go through inverse().
  TSeries pow(long n) const {
    if (n < 0) return inverse().pow(-n);
    TSeries result = one(order(), var_);
    TSeries base = *this;
    auto e = static_cast<unsigned long>(n);
    while (e > 0) {
      if (e & 1UL) result *= base;
      e >>= 1;
      if (e > 0) base *= base;
    }
    return result;
  }

  friend std::ostream& operator<<(std::ostream& os, const TSeries& s) {
    os << "[";
    for (std::size_t i = 0; i < s.coeffs_.size(); ++i) os << (i ? ", " : "") << s.coeffs_[i];
    return os << "] + O(" << s.var_ << "^" << s.order() + 1 << ")";
  }

 private:
  void check_var(const TSeries& o) const {
    if (var_ != o.var_) throw UsageError("series variable mismatch: " + var_ + " vs " + o.var_);
  }

  static TSeries combine(const TSeries& a, const TSeries& b, bool subtract) {
    a.check_var(b);
    const std::size_t n = std::min(a.order(), b.order());
    TSeries out(n, a.var_);
    for (std::size_t i = 0; i <= n; ++i)
      out.coeffs_[i] = subtract ? a.coeffs_[i] - b.coeffs_[i] : a.coeffs_[i] + b.coeffs_[i];
    return out;
  }

  std::vector<Rational> coeffs_;
  std::string var_;
};

// (1 + c x)^r = sum_n binomial(r, n) c^n x^n, coefficients built incrementally.
inline TSeries binomial_series(const Rational& c, const Rational& r, std::size_t order, std::string var = "t") {
  TSeries out(order, std::move(var));
  Rational term(1);
  out[0] = term;
  for (std::size_t n = 1; n <= order; ++n) {
    term = term * (r - Rational(n - 1)) * c / Rational(n);
    out[n] = term;
    if (term.is_zero()) break;
  }
  CostTally::add(2 * order);
  return out;
}

// a^r for rational r. Writes a = u (1 + v) with u = a_0, then
// a^r = u^r sum_n binomial(r, n) v^n. u^r must be rational.
inline TSeries series_pow_rational(const TSeries& a, const Rational& r) {
  const Rational& u = a[0];
  if (u.is_zero()) throw NonUnitSeries("rational power of a series with zero constant term");
  const Rational scale = rational_pow(u, r);
  TSeries v = a / u;
  v[0] = Rational(0);

  const std::size_t order = a.order();
  TSeries sum = TSeries::one(order, a.var());
  TSeries v_power = TSeries::one(order, a.var());
  Rational coeff(1);
  for (std::size_t n = 1; n <= order; ++n) {
    coeff = coeff * (r - Rational(n - 1)) / Rational(n);
    if (coeff.is_zero()) break;
    v_power = v_power * v;
    sum += v_power * coeff;
  }
  return sum * scale;
}

// [x^m] a, the formal residue of x^{-m-1} a(x).
inline Rational residue(const TSeries& a, long m) {
  if (m < 0) return Rational(0);
  if (static_cast<std::size_t>(m) > a.order())
    throw TruncationExceeded("coefficient " + std::to_string(m) + " requested from a series of order " +
                             std::to_string(a.order()));
  return a[static_cast<std::size_t>(m)];
}

}  // namespace moc
