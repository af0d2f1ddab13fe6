#pragma once

#include <cstddef>
#include <vector>

#include "moc/combinatorics.hpp"
#include "moc/errors.hpp"
#include "moc/poly.hpp"
#include "moc/rational.hpp"
#include "moc/series.hpp"

namespace moc {

// Coefficients of the derivative expansion
//   d^alpha/dw^alpha f^{-gamma-1} = sum_k c_k(gamma) f^{-gamma-1-alpha+2k} g^{alpha-2k},
// with f = e^{-w} - t e^{w}, g = e^{-w} + t e^{w}, k = 0..alpha/2.
struct CkTable {
  unsigned alpha = 0;
  std::vector<Poly> entries;
};

// Builds the table from c_0^{(0)} = 1 and, using f' = -g, g' = -f,
//   c_k^{(a+1)} = (gamma + 1 + a - 2k) c_k^{(a)} - (a - 2k + 2) c_{k-1}^{(a)}.
inline CkTable ck_expansion(unsigned alpha) {
  const Poly gamma = Poly::indeterminate("gamma");
  std::vector<Poly> c{Poly::constant(Rational(1), "gamma")};
  for (unsigned a = 0; a < alpha; ++a) {
    const std::size_t next_size = (a + 1) / 2 + 1;
    std::vector<Poly> next(next_size, Poly("gamma"));
    for (std::size_t k = 0; k < next_size; ++k) {
      if (k < c.size()) next[k] += (gamma + Rational(1 + static_cast<long>(a) - 2 * static_cast<long>(k))) * c[k];
      if (k >= 1 && k - 1 < c.size())
        next[k] -= c[k - 1] * Rational(static_cast<long>(a) - 2 * static_cast<long>(k) + 2);
    }
    c = std::move(next);
  }
  return CkTable{alpha, std::move(c)};
}

// c_k(gamma) / alpha! for 1 <= k <= alpha/2.
inline Rational hk(unsigned alpha, unsigned k, const Rational& gamma) {
  if (k < 1 || k > alpha / 2)
    throw UsageError("h_k index " + std::to_string(k) + " outside 1.." + std::to_string(alpha / 2));
  return ck_expansion(alpha).entries[k].eval(gamma) / factorial(alpha);
}

// c_k(gamma) / alpha! for k = 0..alpha/2 at a fixed gamma; entry 0 is
// binomial(alpha+gamma, alpha).
inline std::vector<Rational> scaled_ck_values(const CkTable& table, const Rational& gamma) {
  const Rational inv = factorial(table.alpha).inverse();
  std::vector<Rational> out;
  out.reserve(table.entries.size());
  for (const auto& p : table.entries) out.push_back(p.eval(gamma) * inv);
  return out;
}

// sum_{beta=0}^{order} binomial(beta+gamma, beta) (2 beta + gamma + 1)^alpha / alpha! t^beta.
inline TSeries j_series(unsigned alpha, const Rational& gamma, std::size_t order) {
  TSeries out(order, "t");
  const Rational inv = factorial(alpha).inverse();
  Rational binom(1);
  for (std::size_t beta = 0; beta <= order; ++beta) {
    if (beta > 0) binom = binom * (gamma + Rational(beta)) / Rational(beta);
    out[beta] = binom * (Rational(2 * beta) + gamma + Rational(1)).pow(alpha) * inv;
  }
  return out;
}

// Closed residue form of [w^alpha] f^{-gamma-1}:
//   (1-t)^{-gamma-alpha-1} (1+t)^alpha sum_k (c_k(gamma)/alpha!) (1-t)^{2k} (1+t)^{-2k}.
// The k = 0 term carries binomial(alpha+gamma, alpha).
inline TSeries j_closed(unsigned alpha, const Rational& gamma, std::size_t order) {
  const std::vector<Rational> scaled = scaled_ck_values(ck_expansion(alpha), gamma);
  const TSeries one_minus = TSeries::linear(Rational(1), Rational(-1), order);
  const TSeries one_plus = TSeries::linear(Rational(1), Rational(1), order);
  const TSeries u2 = (one_minus * one_minus) * (one_plus * one_plus).inverse();

  TSeries correction(order, "t");
  TSeries u_power = TSeries::one(order);
  for (std::size_t k = 0; k < scaled.size(); ++k) {
    if (k > 0) u_power = u_power * u2;
    correction += u_power * scaled[k];
  }
  const TSeries prefactor =
      binomial_series(Rational(-1), -gamma - Rational(alpha) - Rational(1), order) * one_plus.pow(alpha);
  return prefactor * correction;
}

// [t^s] (1-t)^{m-1} (1+t)^{2s+1-m}, the residue left for the u^m term of
// the reduced product. m = 0 gives J, 1 <= m <= 2s gives J_m.
inline Rational reduced_kernel_residue(unsigned s, long m) {
  const std::size_t order = s;
  TSeries kernel = binomial_series(Rational(-1), Rational(m - 1), order) *
                   binomial_series(Rational(1), Rational(2 * static_cast<long>(s) + 1 - m), order);
  return residue(kernel, s);
}

// [t^s] (1-t)^{-1} (1+t)^{2s+1}; equals 4^s.
inline Rational lemma3_J(unsigned s) {
  const TSeries kernel =
      TSeries::linear(Rational(1), Rational(-1), s).inverse() * binomial_series(Rational(1), Rational(2 * s + 1), s);
  return residue(kernel, s);
}

// [t^s] (1-t)^{k-1} (1+t)^{2s-k+1}; vanishes for even k, not in general for odd k.
inline Rational lemma3_Jk(unsigned s, unsigned k) {
  if (k < 1 || k > 2 * s)
    throw UsageError("J_k index " + std::to_string(k) + " outside 1.." + std::to_string(2 * s));
  return reduced_kernel_residue(s, k);
}

// Full coefficient list of the degree-2s polynomial (1-t)^{k-1} (1+t)^{2s+1-k}.
inline std::vector<Rational> lemma3_kernel_polynomial(unsigned s, unsigned k) {
  if (k < 1 || k > 2 * s + 1)
    throw UsageError("kernel index " + std::to_string(k) + " outside 1.." + std::to_string(2 * s + 1));
  const std::size_t order = 2 * s;
  TSeries p = binomial_series(Rational(-1), Rational(k - 1), order) *
              binomial_series(Rational(1), Rational(2 * s + 1 - k), order);
  return p.coefficients();
}

}  // namespace moc
