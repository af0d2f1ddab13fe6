// Acceptance suite: one PASS/FAIL line per criterion, exact rational
// equality throughout. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cli.hpp"
#include "moc/moc.hpp"
#include "oracle.hpp"

namespace {

using namespace moc;

Rational q(const char* text) { return Rational::parse(text); }

unsigned worker_count() { return std::max(1U, std::thread::hardware_concurrency()); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

const std::vector<VerificationReport>& main_sweep() {
  static const std::vector<VerificationReport> reports =
      sweep(SweepSpec{4, 3, {q("0"), q("1"), q("2"), q("1/2")}, 5000, false}, worker_count());
  return reports;
}

Outcome identity_sweep() {
  const auto& reports = main_sweep();
  std::size_t bad = 0;
  for (const auto& r : reports)
    if (r.lhs_direct != r.rhs) ++bad;
  return {reports.size() == 5000 && bad == 0,
          std::to_string(reports.size()) + " instances, " + std::to_string(bad) + " with lhs_direct != rhs"};
}

Outcome residue_route() {
  std::size_t bad = 0;
  for (const auto& r : main_sweep())
    if (r.lhs_residue != r.lhs_direct) ++bad;
  return {bad == 0, std::to_string(main_sweep().size()) + " instances, " + std::to_string(bad) + " mismatches"};
}

Outcome theorem_route() {
  std::size_t bad = 0, parity = 0;
  for (const auto& r : main_sweep()) {
    if (r.lhs_theorem != r.rhs) ++bad;
    if (!r.lambda_parity) ++parity;
  }
  return {bad == 0 && parity == 0, std::to_string(bad) + " value mismatches, " + std::to_string(parity) +
                                       " reduced products with odd powers or degree > 2s"};
}

Outcome lemma2() {
  Outcome o;
  std::size_t cells = 0;
  for (const Rational& gamma : {q("0"), q("1"), q("2"), q("-1/2"), q("3/7")})
    for (unsigned alpha = 0; alpha <= 6; ++alpha) {
      const std::size_t order = 2 * alpha;
      const TSeries direct = j_series(alpha, gamma, order);
      const TSeries closed = j_closed(alpha, gamma, order);
      const TSeries nested = nested_exp_core(gamma, order, alpha).coefficient(alpha);
      ++cells;
      if (direct != closed || direct != nested) {
        o.pass = false;
        o.detail += " mismatch at alpha=" + std::to_string(alpha) + " gamma=" + gamma.str() + ";";
      }
    }
  // alpha = 3 middle coefficient: the oracle fixes c_1 at t = 0, where
  // f = g = 1 and [w^3] f^{-gamma-1} = (c_0 + c_1)/3!.
  const Poly g = Poly::indeterminate("gamma");
  const Poly derived = -((g + Rational(1)) * (g * Rational(3) + Rational(5)));
  const Poly printed = -((g + Rational(1)) * (g * Rational(3) + Rational(2)));
  const CkTable t3 = ck_expansion(3);
  bool derived_ok = t3.entries[1] == derived;
  bool printed_rejected = true;
  for (const Rational& gamma : {q("0"), q("1"), q("2"), q("-1/2"), q("3/7")}) {
    const Rational oracle_c1 = nested_exp_core(gamma, 0, 3).coefficient(3)[0] * factorial(3) - t3.entries[0].eval(gamma);
    derived_ok = derived_ok && oracle_c1 == derived.eval(gamma);
    if (oracle_c1 == printed.eval(gamma)) printed_rejected = false;
  }
  bool integer = true;
  for (unsigned alpha = 0; alpha <= 10; ++alpha)
    for (const auto& p : ck_expansion(alpha).entries) integer = integer && p.has_integer_coefficients();
  o.pass = o.pass && derived_ok && printed_rejected && integer;
  o.detail = std::to_string(cells) + " (alpha, gamma) cells, three routes equal to t-order 2 alpha;" + o.detail +
             " c_1 for alpha=3 is -(gamma+1)(3gamma+5) by the oracle (" + (derived_ok ? "confirmed" : "NOT confirmed") +
             "); discrepancy note: the printed form -(gamma+1)(3gamma+2) is " +
             (printed_rejected ? "rejected" : "NOT rejected") + " by the oracle; integer coefficients for alpha<=10: " +
             (integer ? "yes" : "no");
  return o;
}

Outcome lemma3() {
  bool ok = true;
  for (unsigned s = 0; s <= 12; ++s) ok = ok && lemma3_J(s) == Rational(4).pow(s);
  std::size_t zeros = 0;
  for (unsigned s = 1; s <= 10; ++s)
    for (unsigned m = 1; m <= s; ++m) {
      ok = ok && lemma3_Jk(s, 2 * m).is_zero();
      ++zeros;
    }
  std::string witness;
  for (unsigned s = 1; s <= 4; ++s) {
    const Rational j1 = lemma3_Jk(s, 1);
    ok = ok && j1 == Rational(binomial_count(2 * s, s)) && !j1.is_zero();
    witness += " J_1(s=" + std::to_string(s) + ")=" + j1.str();
  }
  return {ok, "J(s)=4^s for s<=12; " + std::to_string(zeros) +
                  " even-k residues vanish; odd-k witnesses (nonzero, = binomial(2s,s)):" + witness};
}

Outcome poly_gamma() {
  std::size_t checks = 0, bad = 0;
  for (unsigned s = 0; s <= 2; ++s)
    for (unsigned d = 0; d <= 2; ++d)
      for (const auto& alpha : compositions(2 * s + 1, d + 1))
        for (std::size_t i = 0; i <= d; ++i)
          for (unsigned mask = 0; mask < (1U << d); ++mask) {
            std::vector<Rational> gamma(d + 1, Rational(0));
            unsigned bit = 0;
            for (std::size_t k = 0; k <= d; ++k) {
              if (k == i) continue;
              gamma[k] = Rational((mask >> bit++) & 1U);
            }
            ++checks;
            if (!verify_poly_gamma(IdentityInstance::make(s, alpha, gamma), i).equal) ++bad;
          }
  return {bad == 0, std::to_string(checks) + " polynomial certificates, " + std::to_string(bad) + " unequal"};
}

Outcome properties() {
  constexpr int kCases = 1000;
  oracle::Generator gen(20261014);
  std::size_t fail_ring = 0, fail_inverse = 0, fail_power = 0, fail_pascal = 0, fail_palindrome = 0;
  for (int i = 0; i < kCases; ++i) {
    const std::size_t order = static_cast<std::size_t>(gen.integer(0, 6));
    const TSeries a = gen.series(order), b = gen.series(order), c = gen.series(order);
    if (!((a * b) * c == a * (b * c) && a * b == b * a && a * (b + c) == a * b + a * c && (a + b) + c == a + (b + c)))
      ++fail_ring;

    const TSeries u = gen.unit_series(order);
    if (!(u * u.inverse() == TSeries::one(order))) ++fail_inverse;

    const TSeries m = gen.monic_series(order);
    const Rational r = gen.rational(7, 5);
    const long n = gen.integer(-3, 4);
    TSeries repeated = TSeries::one(order);
    for (long k = 0; k < std::abs(n); ++k) repeated *= m;
    if (n < 0) repeated = repeated.inverse();
    const Rational cc = gen.rational(5, 3), r1 = gen.rational(9, 4), r2 = gen.rational(9, 4);
    if (!(series_pow_rational(m, r) * series_pow_rational(m, -r) == TSeries::one(order) &&
          series_pow_rational(m, Rational(n)) == repeated &&
          binomial_series(cc, r1 + r2, order) == binomial_series(cc, r1, order) * binomial_series(cc, r2, order)))
      ++fail_power;

    const Rational x = gen.rational(40, 11);
    const long bb = gen.integer(1, 9);
    if (binomial(x, bb) != binomial(x - Rational(1), bb) + binomial(x - Rational(1), bb - 1)) ++fail_pascal;

    const unsigned s = static_cast<unsigned>(gen.integer(0, 9));
    const unsigned k = static_cast<unsigned>(gen.integer(1, 2 * s + 1));
    const std::vector<Rational> coeffs = lemma3_kernel_polynomial(s, k);
    const Rational sign = k % 2 == 1 ? Rational(1) : Rational(-1);
    for (unsigned j = 0; j <= 2 * s; ++j)
      if (coeffs[j] != sign * coeffs[2 * s - j]) {
        ++fail_palindrome;
        break;
      }
  }
  const std::size_t total = fail_ring + fail_inverse + fail_power + fail_pascal + fail_palindrome;
  return {total == 0, std::to_string(kCases) + " cases each; failures: ring " + std::to_string(fail_ring) + ", inverse " +
                          std::to_string(fail_inverse) + ", power laws " + std::to_string(fail_power) + ", Pascal " +
                          std::to_string(fail_pascal) + ", palindromic antisymmetry " + std::to_string(fail_palindrome)};
}

Outcome bench() {
  std::ostringstream out, err;
  const int code = cli::main_entry(
      {"bench", "--max-s", "6", "--max-d", "3", "--gamma-set", "0,1", "--jobs", std::to_string(worker_count())}, out,
      err);
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  std::size_t rows = 0, bad = 0;
  while (std::getline(lines, line)) {
    // s,d,"alpha","gamma",direct_terms,...
    unsigned s = 0, d = 0;
    std::sscanf(line.c_str(), "%u,%u", &s, &d);
    std::size_t quote = line.find('"');
    quote = line.find('"', quote + 1);
    quote = line.find('"', quote + 1);
    quote = line.find('"', quote + 1);
    const unsigned long long terms = std::stoull(line.substr(quote + 2));
    mpz_class expected = 0;
    for (unsigned j = 0; j <= s; ++j) expected += binomial_count(s - j + d, d);
    if (expected != static_cast<unsigned long>(terms)) ++bad;
    ++rows;
  }
  return {code == 0 && rows > 0 && bad == 0, std::to_string(rows) + " rows, exit code " + std::to_string(code) + ", " +
                                                 std::to_string(bad) + " direct-term counters off the closed count"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 identity sweep (lhs_direct = rhs)", identity_sweep},
      {"2 residue route (lhs_residue = lhs_direct)", residue_route},
      {"3 theorem route (lhs_theorem = rhs, even-only reduced product)", theorem_route},
      {"4 derivative-expansion coefficients and J series routes", lemma2},
      {"5 residues J and J_k", lemma3},
      {"6 polynomial-in-gamma certification", poly_gamma},
      {"7 randomized property suite", properties},
      {"8 bench counters", bench},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << ": " << o.detail << " (" << ms << " ms)" << std::endl;
    if (!o.pass) ++failures;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
