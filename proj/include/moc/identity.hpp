#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "moc/combinatorics.hpp"
#include "moc/errors.hpp"
#include "moc/lemma.hpp"
#include "moc/poly.hpp"
#include "moc/rational.hpp"
#include "moc/series.hpp"

namespace moc {

// One cell of the identity: s, d, alpha in N^{d+1} with |alpha| = 2s+1,
// gamma in Q^{d+1}.
struct IdentityInstance {
  unsigned s = 0;
  unsigned d = 0;
  std::vector<unsigned> alpha;
  std::vector<Rational> gamma;

  static IdentityInstance make(unsigned s, std::vector<unsigned> alpha, std::vector<Rational> gamma) {
    if (alpha.empty()) throw InvalidInstance("alpha must have at least one coordinate");
    IdentityInstance inst{s, static_cast<unsigned>(alpha.size() - 1), std::move(alpha), std::move(gamma)};
    inst.validate();
    return inst;
  }

  unsigned long alpha_weight() const {
    unsigned long w = 0;
    for (unsigned a : alpha) w += a;
    return w;
  }

  void validate() const {
    if (alpha.size() != static_cast<std::size_t>(d) + 1 || gamma.size() != static_cast<std::size_t>(d) + 1)
      throw InvalidInstance("alpha and gamma must both have d+1 = " + std::to_string(d + 1) +
                            " coordinates (got " + std::to_string(alpha.size()) + " and " +
                            std::to_string(gamma.size()) + ")");
    if (alpha_weight() != 2UL * s + 1)
      throw InvalidInstance("|alpha| = " + std::to_string(alpha_weight()) + " but the identity requires |alpha| = 2s+1 = " +
                            std::to_string(2UL * s + 1));
  }

  friend bool operator==(const IdentityInstance&, const IdentityInstance&) = default;
};

namespace detail {

template <class R>
R ipow(const R& x, unsigned long n) {
  R acc = one_like(x);
  for (unsigned long i = 0; i < n; ++i) acc = acc * x;
  return acc;
}

}  // namespace detail

// Direct summation, generic over the scalar ring so that one gamma
// coordinate can be an indeterminate. `terms` counts visited compositions.
template <class R>
R s_j_generic(unsigned s, std::span<const unsigned> alpha, std::span<const R> gamma, unsigned j,
              std::uint64_t* terms = nullptr) {
  if (j > s) throw UsageError("S_j index " + std::to_string(j) + " exceeds s = " + std::to_string(s));
  const unsigned n = s - j;
  // factor[i][beta] = binomial(beta+gamma_i, beta) (2 beta + gamma_i + 1)^alpha_i / alpha_i!
  std::vector<std::vector<R>> factor(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const Rational inv = factorial(alpha[i]).inverse();
    for (unsigned beta = 0; beta <= n; ++beta)
      factor[i].push_back(binomial(gamma[i] + Rational(beta), beta) *
                          detail::ipow(gamma[i] + Rational(2 * beta + 1), alpha[i]) * inv);
  }
  R total = one_like(gamma[0]) * Rational(0);
  for_each_composition(n, alpha.size(), [&](const std::vector<unsigned>& beta) {
    R term = factor[0][beta[0]];
    for (std::size_t i = 1; i < beta.size(); ++i) term = term * factor[i][beta[i]];
    total = total + term;
    if (terms) ++*terms;
  });
  return total;
}

template <class R>
R lhs_direct_generic(unsigned s, std::span<const unsigned> alpha, std::span<const R> gamma,
                     std::uint64_t* terms = nullptr) {
  const unsigned d = static_cast<unsigned>(alpha.size() - 1);
  R top = one_like(gamma[0]) * Rational(d);
  for (std::size_t i = 0; i < alpha.size(); ++i) top = top + gamma[i] + Rational(alpha[i]);
  R total = one_like(gamma[0]) * Rational(0);
  for (unsigned j = 0; j <= s; ++j) {
    R term = binomial(top, j) * s_j_generic<R>(s, alpha, gamma, j, terms);
    total = j % 2 == 0 ? total + term : total - term;
  }
  return total;
}

template <class R>
R rhs_closed_generic(unsigned s, std::span<const unsigned> alpha, std::span<const R> gamma) {
  R acc = one_like(gamma[0]) * Rational(4).pow(s);
  for (std::size_t i = 0; i < alpha.size(); ++i) acc = acc * binomial(gamma[i] + Rational(alpha[i]), alpha[i]);
  return acc;
}

inline Rational s_j(const IdentityInstance& inst, unsigned j) {
  return s_j_generic<Rational>(inst.s, inst.alpha, inst.gamma, j);
}

inline Rational lhs_direct(const IdentityInstance& inst, std::uint64_t* terms = nullptr) {
  inst.validate();
  return lhs_direct_generic<Rational>(inst.s, inst.alpha, inst.gamma, terms);
}

inline Rational rhs_closed(const IdentityInstance& inst) {
  inst.validate();
  return rhs_closed_generic<Rational>(inst.s, inst.alpha, inst.gamma);
}

// [t^s] (1-t)^D prod_i J_{alpha_i, gamma_i}(t), D = d + sum_i (alpha_i + gamma_i).
// Valid without the |alpha| = 2s+1 hypothesis.
inline Rational residue_route_unchecked(unsigned s, std::span<const unsigned> alpha, std::span<const Rational> gamma) {
  Rational exponent(static_cast<unsigned long>(alpha.size() - 1));
  for (std::size_t i = 0; i < alpha.size(); ++i) exponent += gamma[i] + Rational(alpha[i]);
  TSeries acc = binomial_series(Rational(-1), exponent, s);
  for (std::size_t i = 0; i < alpha.size(); ++i) acc *= j_series(alpha[i], gamma[i], s);
  return residue(acc, s);
}

inline Rational lhs_residue(const IdentityInstance& inst, std::uint64_t* ops = nullptr) {
  inst.validate();
  CostTally tally;
  Rational value = residue_route_unchecked(inst.s, inst.alpha, inst.gamma);
  if (ops) *ops = tally.count();
  return value;
}

// The correction product prod_i (sum_k (c_k(gamma_i)/alpha_i!) u^{2k}) as a
// polynomial in u = (1-t)/(1+t), together with the residues it meets.
struct ReducedProduct {
  Poly weights{"u"};           // coefficient m multiplies u^m; weights[0] = binomial product
  Rational binomial_product;   // prod_i binomial(alpha_i + gamma_i, alpha_i)
  std::vector<Rational> lambda;  // weights / binomial_product; empty when that product vanishes
  bool even_only = true;       // no odd power of u
  bool degree_bound = true;    // degree <= 2 sum floor(alpha_i/2) <= 2s
  Rational value;
};

inline ReducedProduct reduced_product(const IdentityInstance& inst) {
  inst.validate();
  ReducedProduct out;
  Poly product = Poly::constant(Rational(1), "u");
  unsigned long half_sum = 0;
  for (std::size_t i = 0; i <= inst.d; ++i) {
    const std::vector<Rational> scaled = scaled_ck_values(ck_expansion(inst.alpha[i]), inst.gamma[i]);
    std::vector<Rational> factor(2 * scaled.size() - 1);
    for (std::size_t k = 0; k < scaled.size(); ++k) factor[2 * k] = scaled[k];
    product *= Poly(std::move(factor), "u");
    half_sum += inst.alpha[i] / 2;
  }
  out.binomial_product = product.coeff(0);
  for (long m = 1; m <= product.degree(); m += 2)
    if (!product.coeff(static_cast<std::size_t>(m)).is_zero()) out.even_only = false;
  out.degree_bound = product.degree() <= static_cast<long>(2 * half_sum) && half_sum <= inst.s;
  if (!out.binomial_product.is_zero())
    for (const auto& c : product.coefficients()) out.lambda.push_back(c / out.binomial_product);

  Rational value;
  for (long m = 0; m <= product.degree(); ++m) {
    const Rational& w = product.coefficients()[static_cast<std::size_t>(m)];
    if (w.is_zero()) continue;
    Rational kernel = m == 0 ? lemma3_J(inst.s)
                      : m <= static_cast<long>(2 * inst.s) ? lemma3_Jk(inst.s, static_cast<unsigned>(m))
                                                            : reduced_kernel_residue(inst.s, m);
    value += w * kernel;
  }
  out.value = value;
  out.weights = std::move(product);
  return out;
}

inline Rational lhs_theorem(const IdentityInstance& inst, std::uint64_t* ops = nullptr) {
  CostTally tally;
  Rational value = reduced_product(inst).value;
  if (ops) *ops = tally.count();
  return value;
}

struct RouteTimings {
  std::int64_t direct_us = 0;
  std::int64_t residue_us = 0;
  std::int64_t theorem_us = 0;
};

struct RouteCosts {
  std::uint64_t direct_terms = 0;
  std::uint64_t residue_ops = 0;
  std::uint64_t theorem_ops = 0;
};

struct VerificationReport {
  IdentityInstance instance;
  Rational lhs_direct;
  Rational lhs_residue;
  Rational lhs_theorem;
  Rational rhs;
  bool all_equal = false;
  bool lambda_parity = false;  // even_only && degree_bound of the reduced product
  RouteTimings timings;
  RouteCosts costs;
};

inline VerificationReport verify(const IdentityInstance& inst) {
  inst.validate();
  using clock = std::chrono::steady_clock;
  auto micros = [](clock::duration d) { return std::chrono::duration_cast<std::chrono::microseconds>(d).count(); };

  VerificationReport r{inst, {}, {}, {}, {}, false, false, {}, {}};
  auto t0 = clock::now();
  r.lhs_direct = lhs_direct(inst, &r.costs.direct_terms);
  auto t1 = clock::now();
  r.lhs_residue = lhs_residue(inst, &r.costs.residue_ops);
  auto t2 = clock::now();
  {
    CostTally tally;
    ReducedProduct reduced = reduced_product(inst);
    r.costs.theorem_ops = tally.count();
    r.lhs_theorem = reduced.value;
    r.lambda_parity = reduced.even_only && reduced.degree_bound;
  }
  auto t3 = clock::now();
  r.rhs = rhs_closed(inst);
  r.timings = {micros(t1 - t0), micros(t2 - t1), micros(t3 - t2)};
  r.all_equal = r.lhs_direct == r.lhs_residue && r.lhs_residue == r.lhs_theorem && r.lhs_theorem == r.rhs;
  return r;
}

// Both sides with gamma_i replaced by an indeterminate.
struct PolyCertificate {
  Poly lhs;
  Poly rhs;
  bool equal = false;
};

inline PolyCertificate verify_poly_gamma(const IdentityInstance& inst, std::size_t coordinate) {
  inst.validate();
  if (coordinate > inst.d)
    throw UsageError("gamma coordinate " + std::to_string(coordinate) + " outside 0.." + std::to_string(inst.d));
  std::vector<Poly> gamma;
  for (std::size_t i = 0; i <= inst.d; ++i)
    gamma.push_back(i == coordinate ? Poly::indeterminate("gamma") : Poly::constant(inst.gamma[i], "gamma"));
  PolyCertificate c{lhs_direct_generic<Poly>(inst.s, inst.alpha, gamma),
                    rhs_closed_generic<Poly>(inst.s, inst.alpha, gamma), false};
  c.equal = c.lhs == c.rhs;
  return c;
}

// Direct and residue evaluations for |alpha| = 2s (outside the identity's
// hypothesis). Reported only, never asserted.
struct ProbeResult {
  unsigned s = 0;
  std::vector<unsigned> alpha;
  std::vector<Rational> gamma;
  Rational lhs_direct;
  Rational lhs_residue;
  Rational rhs;
};

inline ProbeResult probe_unchecked(unsigned s, std::vector<unsigned> alpha, std::vector<Rational> gamma) {
  if (alpha.empty() || alpha.size() != gamma.size()) throw InvalidInstance("alpha and gamma lengths differ");
  ProbeResult p{s, std::move(alpha), std::move(gamma), {}, {}, {}};
  p.lhs_direct = lhs_direct_generic<Rational>(s, p.alpha, p.gamma);
  p.lhs_residue = residue_route_unchecked(s, p.alpha, p.gamma);
  p.rhs = rhs_closed_generic<Rational>(s, p.alpha, p.gamma);
  return p;
}

struct SweepSpec {
  unsigned max_s = 0;
  unsigned max_d = 0;
  std::vector<Rational> gamma_set;
  std::optional<std::size_t> cap;  // unset: no cap
  // Enumerate |alpha| = 2s (s >= 1) instead of 2s+1; only valid for probing.
  bool even_weight = false;
};

namespace detail {

// Visits (s, alpha, gamma) in order: s, then d, then alpha and gamma lexicographically.
template <class F>
void for_each_sweep_cell(const SweepSpec& spec, F&& visit) {
  const std::size_t g = spec.gamma_set.size();
  for (unsigned s = 0; s <= spec.max_s; ++s) {
    if (spec.even_weight && s == 0) continue;
    const unsigned weight = spec.even_weight ? 2 * s : 2 * s + 1;
    for (unsigned d = 0; d <= spec.max_d; ++d) {
      for_each_composition(weight, d + 1, [&](const std::vector<unsigned>& alpha) {
        std::vector<std::size_t> idx(d + 1, 0);
        while (true) {
          std::vector<Rational> gamma;
          gamma.reserve(d + 1);
          for (std::size_t i : idx) gamma.push_back(spec.gamma_set[i]);
          visit(s, alpha, std::move(gamma));
          std::size_t pos = d + 1;
          while (pos > 0 && ++idx[pos - 1] == g) idx[--pos] = 0;
          if (pos == 0) break;
        }
      });
    }
  }
}

}  // namespace detail

namespace detail {

inline unsigned sweep_weight(const SweepSpec& spec, unsigned s) { return spec.even_weight ? 2 * s : 2 * s + 1; }

inline mpz_class sweep_block_size(const SweepSpec& spec, unsigned s, unsigned d) {
  mpz_class gammas;
  mpz_ui_pow_ui(gammas.get_mpz_t(), spec.gamma_set.size(), d + 1);
  return composition_count(sweep_weight(spec, s), d + 1) * gammas;
}

// Number of cells taken from each (s, d) block: small blocks are taken
// whole, the rest share what is left of the cap equally (earlier blocks get
// the remainder).
inline std::vector<mpz_class> sweep_quotas(const std::vector<mpz_class>& sizes, const mpz_class& cap) {
  std::vector<std::size_t> by_size(sizes.size());
  for (std::size_t i = 0; i < by_size.size(); ++i) by_size[i] = i;
  std::stable_sort(by_size.begin(), by_size.end(), [&](std::size_t a, std::size_t b) { return sizes[a] < sizes[b]; });
  std::vector<mpz_class> quota(sizes.size(), 0);
  mpz_class remaining = cap;
  std::size_t left = sizes.size();
  for (std::size_t pos = 0; pos < by_size.size(); ++pos) {
    const mpz_class share = remaining / static_cast<unsigned long>(left);
    if (sizes[by_size[pos]] <= share) {
      quota[by_size[pos]] = sizes[by_size[pos]];
      remaining -= sizes[by_size[pos]];
      --left;
      continue;
    }
    mpz_class extra = remaining % static_cast<unsigned long>(left);
    std::vector<std::size_t> rest(by_size.begin() + static_cast<std::ptrdiff_t>(pos), by_size.end());
    std::sort(rest.begin(), rest.end());
    for (std::size_t b : rest) {
      quota[b] = share;
      if (extra > 0) {
        ++quota[b];
        --extra;
      }
    }
    break;
  }
  return quota;
}

}  // namespace detail

inline mpz_class sweep_size(const SweepSpec& spec) {
  mpz_class total = 0;
  for (unsigned s = 0; s <= spec.max_s; ++s) {
    if (spec.even_weight && s == 0) continue;
    for (unsigned d = 0; d <= spec.max_d; ++d) total += detail::sweep_block_size(spec, s, d);
  }
  return total;
}

// Visits the selected cells in enumeration order. Without a cap (or when the
// cap exceeds the grid) every cell is visited; otherwise each (s, d) block
// receives a quota and contributes the cells floor(i n / quota) of its n.
template <class F>
void for_each_sweep_selection(const SweepSpec& spec, F&& visit) {
  if (spec.gamma_set.empty()) throw UsageError("gamma set must not be empty");
  if (spec.cap && *spec.cap == 0) throw UsageError("cap must be at least 1");

  std::vector<std::pair<unsigned, unsigned>> blocks;
  std::vector<mpz_class> sizes;
  for (unsigned s = 0; s <= spec.max_s; ++s) {
    if (spec.even_weight && s == 0) continue;
    for (unsigned d = 0; d <= spec.max_d; ++d) {
      blocks.emplace_back(s, d);
      sizes.push_back(detail::sweep_block_size(spec, s, d));
    }
  }
  mpz_class total = 0;
  for (const auto& n : sizes) total += n;
  const bool capped = spec.cap && total > static_cast<unsigned long>(*spec.cap);
  const std::vector<mpz_class> quota =
      capped ? detail::sweep_quotas(sizes, static_cast<unsigned long>(*spec.cap)) : sizes;

  std::size_t block = 0;
  mpz_class index = 0, picked = 0, next = 0;
  std::pair<unsigned, unsigned> current = blocks.empty() ? std::pair<unsigned, unsigned>{} : blocks.front();
  detail::for_each_sweep_cell(spec, [&](unsigned s, const std::vector<unsigned>& alpha, std::vector<Rational> gamma) {
    const std::pair<unsigned, unsigned> key{s, static_cast<unsigned>(alpha.size() - 1)};
    if (key != current) {
      while (blocks[block] != key) ++block;
      current = key;
      index = 0;
      picked = 0;
      next = 0;
    }
    if (picked < quota[block] && index == next) {
      visit(s, alpha, std::move(gamma));
      ++picked;
      next = picked * sizes[block] / quota[block];
    }
    ++index;
  });
}

inline std::vector<IdentityInstance> sweep_instances(const SweepSpec& spec) {
  if (spec.even_weight) throw UsageError("even-weight sweeps produce probes, not identity instances");
  std::vector<IdentityInstance> out;
  for_each_sweep_selection(spec, [&](unsigned s, const std::vector<unsigned>& alpha, std::vector<Rational> gamma) {
    out.push_back(IdentityInstance::make(s, alpha, std::move(gamma)));
  });
  return out;
}

// Applies fn to every item on `jobs` worker threads; results keep input order.
template <class T, class Fn>
auto parallel_map(const std::vector<T>& items, unsigned jobs, Fn fn) {
  using Out = decltype(fn(items.front()));
  std::vector<std::optional<Out>> slots(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) slots[i].emplace(fn(items[i]));
  };
  jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(items.size(), 1))));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < jobs; ++k) pool.emplace_back(worker);
  }
  std::vector<Out> out;
  out.reserve(items.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

inline std::vector<VerificationReport> sweep(const SweepSpec& spec, unsigned jobs = 1) {
  return parallel_map(sweep_instances(spec), jobs, [](const IdentityInstance& inst) { return verify(inst); });
}

}  // namespace moc
