#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "bpp/errors.hpp"
#include "bpp/strategies.hpp"
#include "bpp/uniqueness.hpp"
#include "oracles.hpp"

using namespace bpp;

namespace {

void sigma_table(const Strategy& s, double out[2][2]) {
  for (int a : {-1, 1})
    for (int b : {-1, 1}) out[a > 0][b > 0] = s(a, b);
}

}  // namespace

TEST(Strategy, Basics) {
  EXPECT_DOUBLE_EQ(Strategy::truthful()(1, 1), 1.0);
  EXPECT_DOUBLE_EQ(Strategy::truthful()(-1, 1), 0.0);
  EXPECT_DOUBLE_EQ(Strategy::flip()(1, -1), 1.0);
  EXPECT_DOUBLE_EQ(Strategy(0.3, 0.6)(-1, -1), 0.4);
  EXPECT_THROW(Strategy(1.2, 0.0), ValidationError);
  EXPECT_EQ(classify(Strategy::truthful()), StrategyClass::Truthful);
  EXPECT_EQ(classify(Strategy::flip()), StrategyClass::Flip);
  EXPECT_EQ(classify(Strategy::uninformed(0.3)), StrategyClass::Uninformed);
  EXPECT_EQ(classify(Strategy(0.7, 0.2)), StrategyClass::OtherInformed);
}

TEST(ConditionalPayments, MatchBruteForceOracle) {
  Rng rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const auto p = random_dominant_triple(rng, 0.0);
    const Strategy sj(u(rng), u(rng)), sk(u(rng), u(rng));
    double tj[2][2], tk[2][2];
    sigma_table(sj, tj);
    sigma_table(sk, tk);
    const auto c = conditional_payments(p, sj, sk);
    for (int s : {-1, 1})
      for (int r : {-1, 1}) EXPECT_NEAR(c(s, r), oracle::conditional_payment(p.cells(), tj, tk, s, r), 1e-12);
  }
}

TEST(ConditionalPayments, ConditionalClosedForm) {
  Rng rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const auto p = random_dominant_triple(rng, 0.0);
    const Strategy s(u(rng), u(rng));
    const auto c = conditional_payments(p, s, s);
    for (int sig : {-1, 1})
      for (int r : {-1, 1}) EXPECT_NEAR(c(sig, r), lemma4_conditional(p, s, sig, r), 1e-12);
  }
}

TEST(ConditionalPayments, UninformedPeersPayZero) {
  const auto p = witness_p2(0.3);
  for (double q : {0.0, 0.2, 0.5, 1.0}) {
    const auto c = conditional_payments(p, Strategy::uninformed(q), Strategy::uninformed(q));
    for (int s : {-1, 1})
      for (int r : {-1, 1}) EXPECT_NEAR(c(s, r), 0.0, 1e-12);
  }
}

TEST(ExpectedPayment, TruthEqualsTwiceWeightedMargins) {
  Rng rng(13);
  for (int t = 0; t < 100; ++t) {
    const auto p = random_dominant_triple(rng);
    const auto d = is_uniformly_dominant(p);
    const double truth = expected_payment(p, Strategy::truthful(), Strategy::truthful(), Strategy::truthful());
    EXPECT_NEAR(truth, 2.0 * (p.marginal_i(1) * d.delta_plus + p.marginal_i(-1) * d.delta_minus), 1e-12);
    EXPECT_GT(truth, 0.0);
    EXPECT_NEAR(expected_payment(p, Strategy::flip(), Strategy::flip(), Strategy::flip()), truth, 1e-12);
  }
}

TEST(BestResponse, TruthAgainstTruthfulPeers) {
  const auto p = witness_p1(0.2);
  const BestResponse b = best_response(p, Strategy::truthful());
  EXPECT_EQ(b(1), std::optional<int>(1));
  EXPECT_EQ(b(-1), std::optional<int>(-1));
  const BestResponse f = best_response(p, Strategy::flip());
  EXPECT_EQ(f(1), std::optional<int>(-1));
  const BestResponse n = best_response(p, Strategy::uninformed(0.4));
  EXPECT_FALSE(n(1));
  EXPECT_FALSE(n(-1));

  std::array<double, 8> flat{};
  flat.fill(0.125);
  EXPECT_THROW(best_response(TripleDistribution(flat), Strategy::truthful()), ValidationError);
}

TEST(Equilibria, ClassificationOnWitness) {
  const auto rep = classify_symmetric_equilibria(witness_p2(0.4), 21);
  EXPECT_EQ(rep.rows.size(), 21u * 21u);
  EXPECT_TRUE(rep.only_permutation_or_uninformed);
  std::size_t truth = 0, flip = 0, uninformed = 0;
  for (const auto& r : rep.rows) {
    if (!r.is_equilibrium) continue;
    truth += r.classification == StrategyClass::Truthful;
    flip += r.classification == StrategyClass::Flip;
    uninformed += r.classification == StrategyClass::Uninformed;
    if (r.classification == StrategyClass::Uninformed) EXPECT_NEAR(r.expected_payment, 0.0, 1e-12);
  }
  EXPECT_EQ(truth, 1u);
  EXPECT_EQ(flip, 1u);
  EXPECT_EQ(uninformed, 21u);
  EXPECT_NEAR(rep.truth_payment, rep.flip_payment, 1e-12);
  EXPECT_NEAR(rep.truth_payment, 0.4, 1e-12);

  std::ostringstream csv;
  write_equilibria_csv(csv, rep);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "sigma_11,sigma_m11,is_eq,classification,expected_payment");
  EXPECT_THROW(classify_symmetric_equilibria(witness_p2(0.4), 1), ValidationError);
}

TEST(StronglyTruthful, PassesOnDominantTriples) {
  Rng rng(14);
  for (int t = 0; t < 50; ++t) EXPECT_TRUE(strongly_truthful_audit(random_dominant_triple(rng)).pass);
  std::array<double, 8> flat{};
  flat.fill(0.125);
  EXPECT_FALSE(strongly_truthful_audit(TripleDistribution(flat)).pass);
}

TEST(GeneralStrategies, BinaryMatchesTwoSignalPayment) {
  // bpp equals 2(1[r=R_j] - 1[r=R_k]) so the general payment reduces to the binary one.
  Rng rng(15);
  for (int t = 0; t < 50; ++t) {
    const auto p = random_dominant_triple(rng);
    const auto g = GeneralTriple::from_binary(p);
    EXPECT_NEAR(general_expected_payment(g, GeneralStrategy::truthful(2)),
                expected_payment(p, Strategy::truthful(), Strategy::truthful(), Strategy::truthful()), 1e-12);
    const auto c = conditional_payments(p, Strategy::truthful(), Strategy::truthful());
    for (std::size_t s = 0; s < 2; ++s)
      for (std::size_t r = 0; r < 2; ++r)
        EXPECT_NEAR(general_conditional_payment(g, GeneralStrategy::truthful(2), s, r),
                    c(s ? 1 : -1, r ? 1 : -1), 1e-12);
  }
}

TEST(GeneralStrategies, StrategySetAndAudit) {
  const auto set = default_strategy_set(3, 50, 1);
  // 50 random + 3 constants + 27 deterministic maps.
  EXPECT_EQ(set.size(), 80u);
  for (const auto& s : set)
    for (std::size_t a = 0; a < 3; ++a) {
      double row = 0.0;
      for (std::size_t b = 0; b < 3; ++b) row += s(a, b);
      EXPECT_NEAR(row, 1.0, 1e-12);
    }
  EXPECT_TRUE(GeneralStrategy::constant(3, 1).is_uninformed());
  EXPECT_FALSE(GeneralStrategy::truthful(3).is_uninformed());
  EXPECT_THROW(GeneralStrategy(2, {0.5, 0.6, 0.5, 0.5}), ValidationError);

  std::vector<double> p(27);
  for (std::size_t si = 0; si < 3; ++si)
    for (std::size_t sj = 0; sj < 3; ++sj)
      for (std::size_t sk = 0; sk < 3; ++sk) p[(si * 3 + sj) * 3 + sk] = (sj == si ? 0.6 : 0.2) / 9.0;
  const auto audit = informed_truthfulness_audit_general(GeneralTriple(3, p), set);
  EXPECT_TRUE(audit.pass) << audit.diagnostic;
  EXPECT_NEAR(audit.max_abs_uninformed_payment, 0.0, 1e-12);
  EXPECT_EQ(audit.strategies_checked, set.size());
}
