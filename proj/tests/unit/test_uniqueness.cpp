#include <gtest/gtest.h>

#include "bpp/errors.hpp"
#include "bpp/payments.hpp"
#include "bpp/uniqueness.hpp"

using namespace bpp;

namespace {

PaymentFunction affine(double lambda, const std::array<double, 4>& mu) {
  std::array<double, 8> u{};
  for (int si : {-1, 1})
    for (int sj : {-1, 1})
      for (int sk : {-1, 1})
        u[TripleDistribution::index(si, sj, sk)] = lambda * bpp::bpp(si, sj, sk) + mu[PairTable::index(sj, sk)];
  return PaymentFunction(u);
}

PaymentFunction si_sj() {
  std::array<double, 8> u{};
  for (int si : {-1, 1})
    for (int sj : {-1, 1})
      for (int sk : {-1, 1}) u[TripleDistribution::index(si, sj, sk)] = si * sj;
  return PaymentFunction(u);
}

}  // namespace

TEST(Decomposition, Recomposes) {
  const auto u = PaymentFunction::parse("1,-2,3,0.5,7,1,-1,2");
  const auto back = decompose(u).recompose();
  for (std::size_t c = 0; c < 8; ++c) EXPECT_DOUBLE_EQ(back.cells()[c], u.cells()[c]);
  EXPECT_THROW(PaymentFunction::parse("1,2,3"), ValidationError);
  EXPECT_THROW(PaymentFunction::parse("1,2,3,4,5,6,7,8,9"), ValidationError);
}

TEST(AffineBpp, CertifiesBppAndTransforms) {
  const auto f = is_affine_bpp(PaymentFunction::bpp());
  ASSERT_TRUE(f);
  EXPECT_DOUBLE_EQ(f->lambda, 1.0);
  for (double m : f->mu.v) EXPECT_DOUBLE_EQ(m, 0.0);

  const auto g = is_affine_bpp(affine(2.5, {1, -3, 0.25, 4}));
  ASSERT_TRUE(g);
  EXPECT_NEAR(g->lambda, 2.5, 1e-12);
  EXPECT_NEAR(g->mu(1, -1), 0.25, 1e-12);
  EXPECT_NEAR(g->mu(-1, 1), -3.0, 1e-12);

  EXPECT_FALSE(is_affine_bpp(affine(-1.0, {0, 0, 0, 0})));
  EXPECT_FALSE(is_affine_bpp(si_sj()));
}

TEST(Witness, Families) {
  const auto p1 = witness_p1(0.1);
  EXPECT_NEAR(p1.cond_j(1, 1) - p1.cond_k(1, 1), 0.2, 1e-15);
  EXPECT_NEAR(p1.marginal_i(1), 0.5, 1e-15);
  const auto p2 = witness_p2(0.2);
  const auto d = is_uniformly_dominant(p2);
  EXPECT_NEAR(d.delta_plus, 0.1, 1e-15);
  EXPECT_NEAR(d.delta_minus, 0.1, 1e-15);
  const auto mir = witness_p2_mirror(0.2);
  EXPECT_DOUBLE_EQ(mir.at(-1, -1, -1), p2.at(1, 1, 1));
  EXPECT_THROW(witness_p1(0.0), ValidationError);
  EXPECT_THROW(witness_p2(1.5), ValidationError);
}

TEST(TruthfulnessAudit, SiSjViolatedOnP2) {
  const auto v = truthfulness_audit(si_sj(), witness_p2(0.2));
  EXPECT_EQ(v.overall, Truthfulness::Violated);
  EXPECT_EQ(v.on_minus, Truthfulness::Violated);
  EXPECT_EQ(truthfulness_audit(PaymentFunction::bpp(), witness_p2(0.2)).overall, Truthfulness::Strict);
}

TEST(TruthfulnessAudit, MuInvariant) {
  Rng rng(3);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int t = 0; t < 100; ++t) {
    std::array<double, 8> base{};
    for (double& x : base) x = u(rng);
    auto shifted = base;
    std::array<double, 4> mu{u(rng), u(rng), u(rng), u(rng)};
    for (int si : {-1, 1})
      for (int sj : {-1, 1})
        for (int sk : {-1, 1}) shifted[TripleDistribution::index(si, sj, sk)] += mu[PairTable::index(sj, sk)];
    const auto p = random_dominant_triple(rng);
    const auto a = truthfulness_audit(PaymentFunction(base), p);
    const auto b = truthfulness_audit(PaymentFunction(shifted), p);
    EXPECT_EQ(a.overall, b.overall);
    EXPECT_NEAR(a.gap_plus, b.gap_plus, 1e-12);
    EXPECT_NEAR(a.gap_minus, b.gap_minus, 1e-12);
  }
}

TEST(Search, CertificateAndCounterexamples) {
  const auto cert = uniqueness_search(affine(0.7, {1, 2, 3, 4}));
  EXPECT_EQ(cert.outcome, SearchOutcome::Certificate);
  ASSERT_TRUE(cert.certificate);
  EXPECT_NEAR(cert.certificate->lambda, 0.7, 1e-12);

  const auto ref = uniqueness_search(si_sj());
  EXPECT_EQ(ref.outcome, SearchOutcome::Counterexample);
  ASSERT_TRUE(ref.counterexample);
  EXPECT_TRUE(is_uniformly_dominant(*ref.counterexample).dominant);
  EXPECT_NE(truthfulness_audit(si_sj(), *ref.counterexample).overall, Truthfulness::Strict);

  // Small perturbations of bpp are still refuted.
  Rng rng(4);
  std::uniform_real_distribution<double> u(-1e-3, 1e-3);
  SearchOptions opt;
  opt.random_trials = 200;
  for (int t = 0; t < 50; ++t) {
    auto cells = PaymentFunction::bpp().cells();
    for (double& x : cells) x += u(rng);
    const PaymentFunction pf(cells);
    if (is_affine_bpp(pf)) continue;
    const auto r = uniqueness_search(pf, opt);
    EXPECT_EQ(r.outcome, SearchOutcome::Counterexample) << t;
  }
}
