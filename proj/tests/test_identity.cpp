#include <gtest/gtest.h>

#include <set>
#include <utility>

#include "moc/identity.hpp"
#include "moc/report.hpp"
#include "oracle.hpp"

namespace moc {
namespace {

Rational q(const char* text) { return Rational::parse(text); }

IdentityInstance inst(unsigned s, std::vector<unsigned> alpha, std::vector<Rational> gamma) {
  return IdentityInstance::make(s, std::move(alpha), std::move(gamma));
}

TEST(IdentityInstance, Validation) {
  EXPECT_THROW(inst(1, {1, 1}, {0, 0}), InvalidInstance);
  EXPECT_THROW(inst(1, {1, 2}, {0}), InvalidInstance);
  EXPECT_THROW(inst(0, {}, {}), InvalidInstance);
  EXPECT_NO_THROW(inst(2, {0, 5, 0}, {0, q("1/2"), 3}));
  IdentityInstance broken{1, 1, {1, 2}, {0, 0, 0}};
  EXPECT_THROW(verify(broken), InvalidInstance);
}

TEST(SJ, Examples) {
  const IdentityInstance a = inst(1, {1, 2}, {0, 0});
  EXPECT_EQ(s_j(a, 0), Rational(6));
  EXPECT_EQ(s_j(a, 1), q("1/2"));
  EXPECT_THROW(s_j(a, 2), UsageError);
  // j = s: one composition, prod_i (gamma_i+1)^{alpha_i}/alpha_i!
  const IdentityInstance b = inst(2, {2, 3}, {q("1/2"), 2});
  EXPECT_EQ(s_j(b, 2), q("3/2").pow(2) / Rational(2) * Rational(27) / Rational(6));
}

TEST(LhsDirect, Examples) {
  EXPECT_EQ(lhs_direct(inst(0, {1}, {0})), Rational(1));
  EXPECT_EQ(lhs_direct(inst(1, {1, 2}, {0, 0})), Rational(4));
  EXPECT_EQ(lhs_direct(inst(1, {3}, {0})), Rational(4));
}

TEST(LhsDirect, MatchesBoxSumOracle) {
  oracle::Generator gen(21);
  for (int i = 0; i < 150; ++i) {
    const unsigned s = static_cast<unsigned>(gen.integer(0, 3));
    const unsigned d = static_cast<unsigned>(gen.integer(0, 2));
    const auto all = compositions(2 * s + 1, d + 1);
    std::vector<unsigned> alpha = all[static_cast<std::size_t>(gen.integer(0, static_cast<long>(all.size()) - 1))];
    std::vector<Rational> gamma;
    for (unsigned k = 0; k <= d; ++k) gamma.push_back(gen.rational(5, 4));
    EXPECT_EQ(lhs_direct(inst(s, alpha, gamma)), oracle::brute_force_lhs(s, alpha, gamma));
  }
}

TEST(RhsClosed, Examples) {
  EXPECT_EQ(rhs_closed(inst(0, {1}, {0})), Rational(1));
  EXPECT_EQ(rhs_closed(inst(1, {1, 2}, {0, 0})), Rational(4));
  EXPECT_EQ(rhs_closed(inst(0, {1}, {q("1/2")})), q("3/2"));
}

TEST(LhsResidue, Examples) {
  EXPECT_EQ(lhs_residue(inst(0, {1}, {0})), Rational(1));
  EXPECT_EQ(lhs_residue(inst(1, {3}, {0})), Rational(4));
  EXPECT_EQ(lhs_residue(inst(1, {1, 2}, {0, 0})), lhs_direct(inst(1, {1, 2}, {0, 0})));
}

TEST(LhsTheorem, UnitAlphasNeedNoCorrection) {
  const IdentityInstance a = inst(1, {1, 1, 1}, {q("1/3"), 2, q("-1/2")});
  const ReducedProduct r = reduced_product(a);
  EXPECT_EQ(r.weights.degree(), 0);
  EXPECT_EQ(r.value, rhs_closed(a));
}

TEST(LhsTheorem, SingleAlphaThree) {
  const IdentityInstance a = inst(1, {3}, {0});
  const ReducedProduct r = reduced_product(a);
  ASSERT_EQ(r.lambda.size(), 3U);
  EXPECT_EQ(r.lambda[0], Rational(1));
  EXPECT_EQ(r.lambda[1], Rational(0));
  EXPECT_EQ(r.lambda[2], q("-5/6"));
  EXPECT_EQ(lhs_theorem(a), Rational(4));
}

TEST(LhsTheorem, RegressionValue) {
  const IdentityInstance a = inst(2, {2, 3}, {1, 0});
  // 4^2 binomial(3,2) binomial(3,3) = 48, confirmed by the box-sum oracle
  EXPECT_EQ(oracle::brute_force_lhs(2, {2, 3}, {1, 0}), Rational(48));
  EXPECT_EQ(lhs_theorem(a), Rational(48));
  EXPECT_EQ(rhs_closed(a), Rational(48));
}

TEST(LhsTheorem, LambdaParityAndDegree) {
  oracle::Generator gen(22);
  for (int i = 0; i < 200; ++i) {
    const unsigned s = static_cast<unsigned>(gen.integer(0, 4));
    const unsigned d = static_cast<unsigned>(gen.integer(0, 3));
    const auto all = compositions(2 * s + 1, d + 1);
    std::vector<unsigned> alpha = all[static_cast<std::size_t>(gen.integer(0, static_cast<long>(all.size()) - 1))];
    std::vector<Rational> gamma;
    for (unsigned k = 0; k <= d; ++k) gamma.push_back(gen.rational(6, 5));
    const ReducedProduct r = reduced_product(inst(s, alpha, gamma));
    EXPECT_TRUE(r.even_only);
    EXPECT_TRUE(r.degree_bound);
    EXPECT_LE(r.weights.degree(), static_cast<long>(2 * s));
  }
}

TEST(LhsTheorem, BinomialPoleInGamma) {
  // gamma_0 = -2 kills binomial(alpha_0 + gamma_0, alpha_0) for alpha_0 >= 2
  const IdentityInstance a = inst(2, {3, 2}, {-2, q("1/2")});
  const ReducedProduct r = reduced_product(a);
  EXPECT_TRUE(r.binomial_product.is_zero());
  EXPECT_TRUE(r.lambda.empty());
  EXPECT_EQ(r.value, Rational(0));
  EXPECT_TRUE(verify(a).all_equal);
}

TEST(Verify, Examples) {
  const VerificationReport r = verify(inst(1, {1, 2}, {0, 0}));
  EXPECT_EQ(r.lhs_direct, Rational(4));
  EXPECT_EQ(r.lhs_residue, Rational(4));
  EXPECT_EQ(r.lhs_theorem, Rational(4));
  EXPECT_EQ(r.rhs, Rational(4));
  EXPECT_TRUE(r.all_equal);
  EXPECT_TRUE(r.lambda_parity);

  const VerificationReport z = verify(inst(0, {1, 0, 0}, {1, 2, 3}));
  EXPECT_TRUE(z.all_equal);
  EXPECT_EQ(z.rhs, Rational(2));
}

TEST(Verify, DirectTermCountIsCompositionTotal) {
  for (unsigned s = 0; s <= 4; ++s)
    for (unsigned d = 0; d <= 3; ++d) {
      std::vector<unsigned> alpha(d + 1, 0);
      alpha[0] = 2 * s + 1;
      const VerificationReport r = verify(inst(s, alpha, std::vector<Rational>(d + 1, Rational(0))));
      mpz_class expected = 0;
      for (unsigned j = 0; j <= s; ++j) expected += binomial_count(s - j + d, d);
      EXPECT_EQ(mpz_class(static_cast<unsigned long>(r.costs.direct_terms)), expected) << s << " " << d;
      EXPECT_GT(r.costs.residue_ops, 0U);
    }
}

TEST(VerifyPolyGamma, SingleCoordinate) {
  const PolyCertificate c = verify_poly_gamma(inst(0, {1}, {0}), 0);
  const Poly expected = Poly::indeterminate("gamma") + Rational(1);
  EXPECT_EQ(c.lhs, expected);
  EXPECT_EQ(c.rhs, expected);
  EXPECT_TRUE(c.equal);
  EXPECT_THROW(verify_poly_gamma(inst(0, {1}, {0}), 1), UsageError);
}

TEST(VerifyPolyGamma, SpecializationMatchesPointwise) {
  oracle::Generator gen(23);
  const IdentityInstance a = inst(2, {2, 1, 2}, {q("1/2"), 0, 1});
  for (std::size_t i = 0; i <= a.d; ++i) {
    const PolyCertificate c = verify_poly_gamma(a, i);
    EXPECT_TRUE(c.equal);
    EXPECT_EQ(c.lhs.degree(), static_cast<long>(a.alpha[i]));
    for (int trial = 0; trial < 10; ++trial) {
      IdentityInstance b = a;
      b.gamma[i] = gen.rational(7, 5);
      const VerificationReport r = verify(b);
      EXPECT_EQ(c.lhs.eval(b.gamma[i]), r.lhs_direct);
      EXPECT_EQ(c.rhs.eval(b.gamma[i]), r.rhs);
    }
  }
}

TEST(Sweep, SmallEnumerations) {
  const auto a = sweep_instances(SweepSpec{1, 0, {0}, std::nullopt, false});
  ASSERT_EQ(a.size(), 2U);
  EXPECT_EQ(a[0].alpha, std::vector<unsigned>{1});
  EXPECT_EQ(a[1].alpha, std::vector<unsigned>{3});

  const auto b = sweep_instances(SweepSpec{1, 1, {0}, std::nullopt, false});
  std::vector<std::vector<unsigned>> alphas;
  for (const auto& x : b) alphas.push_back(x.alpha);
  EXPECT_EQ(alphas, (std::vector<std::vector<unsigned>>{{1}, {0, 1}, {1, 0}, {3}, {0, 3}, {1, 2}, {2, 1}, {3, 0}}));
}

TEST(Sweep, SizeMatchesEnumeration) {
  const SweepSpec spec{2, 2, {0, q("1/2"), 2}, std::nullopt, false};
  EXPECT_EQ(mpz_class(static_cast<unsigned long>(sweep_instances(spec).size())), sweep_size(spec));
}

TEST(Sweep, CapIsDeterministicAndSpansEveryBlock) {
  const SweepSpec spec{4, 3, {0, 1, 2, q("1/2")}, 500, false};
  const auto a = sweep_instances(spec);
  const auto b = sweep_instances(spec);
  ASSERT_EQ(a.size(), 500U);
  EXPECT_EQ(a, b);
  std::set<std::pair<unsigned, unsigned>> blocks;
  for (const auto& x : a) blocks.insert({x.s, x.d});
  EXPECT_EQ(blocks.size(), 20U);
  // strictly increasing in enumeration order
  const auto full = sweep_instances(SweepSpec{4, 3, {0, 1, 2, q("1/2")}, std::nullopt, false});
  std::size_t pos = 0;
  for (const auto& x : a) {
    while (pos < full.size() && !(full[pos] == x)) ++pos;
    ASSERT_LT(pos, full.size());
    ++pos;
  }
}

TEST(Sweep, CapLargerThanTotalIsNoOp) {
  const auto a = sweep_instances(SweepSpec{1, 1, {0, 1}, 10000, false});
  const auto b = sweep_instances(SweepSpec{1, 1, {0, 1}, std::nullopt, false});
  EXPECT_EQ(a, b);
}

TEST(Sweep, ParallelOrderMatchesSequential) {
  const SweepSpec spec{3, 2, {0, q("1/2")}, std::nullopt, false};
  const auto seq = sweep(spec, 1);
  const auto par = sweep(spec, 4);
  ASSERT_EQ(seq.size(), par.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    EXPECT_EQ(to_json(seq[i], {false}), to_json(par[i], {false}));
    EXPECT_TRUE(par[i].all_equal);
  }
}

TEST(Sweep, EvenWeightProbeDoesNotBuildInstances) {
  EXPECT_THROW(sweep_instances(SweepSpec{2, 1, {0}, std::nullopt, true}), UsageError);
  std::size_t n = 0;
  for_each_sweep_selection(SweepSpec{2, 1, {0}, std::nullopt, true},
                           [&](unsigned s, const std::vector<unsigned>& alpha, std::vector<Rational> gamma) {
                             const ProbeResult p = probe_unchecked(s, alpha, std::move(gamma));
                             EXPECT_EQ(p.lhs_direct, p.lhs_residue);
                             ++n;
                           });
  EXPECT_EQ(n, 1U + 3U + 1U + 5U);  // s=1: (2),(0,2),(1,1),(2,0); s=2: (4),(0,4)..(4,0)
}

TEST(Report, JsonFieldsAndK1Form) {
  const VerificationReport r = verify(inst(1, {1, 2}, {0, 0}));
  const ordered_json j = to_json(r, {false});
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, report_fields());
  EXPECT_EQ(j["lhs_direct"], "4");
  EXPECT_EQ(j["k1_lhs"], "8");  // alpha! = 1! 2!
  EXPECT_EQ(j["gamma"], ordered_json::array({"0", "0"}));
  EXPECT_EQ(j["direct_us"], 0);
  const std::string csv = to_csv(r, {false});
  EXPECT_EQ(csv.rfind("1,1,\"1,2\",\"0,0\",4,4,4,4,true,true,8,8,0,0,0,", 0), 0U) << csv;
}

}  // namespace
}  // namespace moc
