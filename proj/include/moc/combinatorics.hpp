#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "moc/poly.hpp"
#include "moc/rational.hpp"

namespace moc {

inline Rational one_like(const Rational&) { return Rational(1); }
inline Poly one_like(const Poly& p) { return Poly::constant(Rational(1), p.var()); }

// Generalized binomial coefficient x(x-1)...(x-b+1)/b! over any ring that
// admits rational scalars (Rational, Poly). Zero for b < 0.
template <class R>
R binomial(const R& x, long b) {
  R acc = one_like(x);
  if (b < 0) return acc * Rational(0);
  for (long i = 0; i < b; ++i) acc = acc * (x - Rational(i)) / Rational(i + 1);
  return acc;
}

// x(x+1)...(x+n-1); 1 for n = 0.
template <class R>
R rising_factorial(const R& x, unsigned long n) {
  R acc = one_like(x);
  for (unsigned long i = 0; i < n; ++i) acc = acc * (x + Rational(i));
  return acc;
}

inline mpz_class binomial_count(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// Number of weak compositions of n into `parts` parts (stars and bars).
inline mpz_class composition_count(unsigned long n, unsigned long parts) {
  if (parts == 0) return n == 0 ? 1 : 0;
  return binomial_count(n + parts - 1, parts - 1);
}

// Steps `v` to the lexicographic successor among weak compositions with the
// same sum and length. Returns false when `v` was the last one, (n,0,...,0).
inline bool next_composition(std::vector<unsigned>& v) {
  const std::size_t p = v.size();
  if (p < 2) return false;
  if (v[p - 1] > 0) {
    ++v[p - 2];
    --v[p - 1];
    return true;
  }
  std::size_t j = p - 1;
  while (j > 0 && v[j] == 0) --j;
  if (j == 0) return false;
  unsigned tail = v[j] - 1;
  v[j] = 0;
  ++v[j - 1];
  v[p - 1] = tail;
  return true;
}

// Visits every weak composition of n into `parts` parts in lexicographic order.
template <class F>
void for_each_composition(unsigned n, std::size_t parts, F&& visit) {
  if (parts == 0) {
    if (n == 0) visit(std::vector<unsigned>{});
    return;
  }
  std::vector<unsigned> v(parts, 0);
  v.back() = n;
  do {
    visit(static_cast<const std::vector<unsigned>&>(v));
  } while (next_composition(v));
}

inline std::vector<std::vector<unsigned>> compositions(unsigned n, std::size_t parts) {
  std::vector<std::vector<unsigned>> out;
  for_each_composition(n, parts, [&](const std::vector<unsigned>& v) { out.push_back(v); });
  return out;
}

}  // namespace moc
