#include <gtest/gtest.h>

#include <cmath>

#include "bpp/errors.hpp"
#include "bpp/ising.hpp"
#include "oracles.hpp"

using namespace bpp;

namespace {

IsingModel random_model(Rng& rng, std::size_t n, double edge_p, double bmax, double amax) {
  std::vector<Edge> edges;
  std::bernoulli_distribution keep(edge_p);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (keep(rng)) edges.emplace_back(u, v);
  IsingModel m;
  m.graph = Graph(n, edges);
  std::uniform_real_distribution<double> b(0.0, bmax), a(0.0, amax);
  for (std::size_t e = 0; e < m.graph.edge_count(); ++e) m.beta.push_back(b(rng));
  for (std::size_t v = 0; v < n; ++v) m.alpha.push_back(amax > 0.0 ? a(rng) : 0.0);
  return m;
}

}  // namespace

TEST(Ising, ExactJointMatchesDirectSummation) {
  Rng rng(1);
  for (int t = 0; t < 10; ++t) {
    const auto m = random_model(rng, 3 + t % 6, 0.4, 1.0, 0.5);
    const auto table = exact_joint(m);
    const auto direct = oracle::ising_table(m.graph.size(), m.graph.edges(), m.beta, m.alpha);
    ASSERT_EQ(table.probs().size(), direct.size());
    for (std::size_t c = 0; c < direct.size(); ++c) EXPECT_NEAR(table.prob(static_cast<Config>(c)), direct[c], 1e-12);
  }
}

TEST(Ising, SingleEdgeRatio) {
  for (double beta : {0.1, 0.5, 1.3}) {
    const auto m = IsingModel::uniform(path_graph(2), beta);
    const auto t = exact_joint(m);
    EXPECT_NEAR(t.ratio(0, {{1, 1}}), std::exp(2 * beta), 1e-10);
    EXPECT_NEAR(tree_ratio(m, 0, {{1, 1}}), std::exp(2 * beta), 1e-12);
    EXPECT_NEAR(tree_ratio(m, 0, {{1, -1}}), std::exp(-2 * beta), 1e-12);
  }
}

TEST(Ising, PathConditional) {
  // beta = 0.5 on a 3-path: Pr[S_0 = 1 | S_1 = 1] = e / (1 + e).
  const auto t = exact_joint(IsingModel::uniform(path_graph(3), 0.5));
  EXPECT_NEAR(t.conditional(0, {{1, 1}}), std::exp(1.0) / (1.0 + std::exp(1.0)), 1e-12);
  EXPECT_NEAR(t.mean(0), 0.0, 1e-15);
  EXPECT_NEAR(t.correlation(0, 1), std::tanh(0.5), 1e-12);
  EXPECT_NEAR(t.correlation(0, 2), std::tanh(0.5) * std::tanh(0.5), 1e-12);
}

TEST(Ising, TreeRatioMatchesExact) {
  Rng rng(2);
  const Graph tree(7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {5, 6}});
  for (int t = 0; t < 20; ++t) {
    IsingModel m;
    m.graph = tree;
    std::uniform_real_distribution<double> b(0.0, 1.0), a(0.0, 0.5);
    for (std::size_t e = 0; e < tree.edge_count(); ++e) m.beta.push_back(b(rng));
    for (std::size_t v = 0; v < 7; ++v) m.alpha.push_back(a(rng));
    const auto table = exact_joint(m);
    EXPECT_NEAR(tree_ratio(m, 0), table.ratio(0), 1e-10);
    EXPECT_NEAR(tree_ratio(m, 1, {{6, 1}, {4, -1}}), table.ratio(1, {{6, 1}, {4, -1}}), 1e-10);
  }
  EXPECT_THROW(tree_ratio(IsingModel::uniform(cycle_graph(4), 0.3), 0), ValidationError);
  EXPECT_THROW(tree_ratio(IsingModel::uniform(path_graph(3), 0.3), 0, {{0, 1}}), ValidationError);
}

TEST(Ising, EdgeRatioLowerBound) {
  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    const auto m = random_model(rng, 7, 0.5, 1.0, 0.0);
    if (m.graph.edge_count() == 0) continue;
    const auto table = exact_joint(m);
    for (const auto& [u, v] : m.graph.edges())
      EXPECT_GE(table.ratio(u, {{v, 1}}), std::exp(2 * m.beta_min()) * (1 - 1e-12));
  }
}

TEST(Ising, CouplingCondition) {
  const auto c = theorem4_condition(0.1, 0.1, 2);
  EXPECT_TRUE(c.holds);
  EXPECT_NEAR(c.lhs, 0.1, 1e-15);
  // ln((e^{0.6} + 1) / (e^{0.2} + e^{0.4})) by hand.
  EXPECT_NEAR(c.rhs, std::log((std::exp(0.6) + 1) / (std::exp(0.2) + std::exp(0.4))), 1e-14);
  EXPECT_NEAR(c.rhs, 0.0394, 1e-4);
  EXPECT_FALSE(theorem4_condition(0.2, 0.2, 6).holds);
  EXPECT_TRUE(theorem4_condition(0.2, 0.2, 2).holds);
  // Large beta stays finite in the log domain.
  EXPECT_TRUE(std::isfinite(theorem4_condition(400.0, 400.0, 3).rhs));
  EXPECT_NEAR(dary_upper_bound(0.1, 2), std::exp(2 * c.rhs), 1e-12);
  EXPECT_THROW(theorem4_condition(0.1, 0.1, 0), ValidationError);
}

TEST(Ising, UniformDominanceNetwork) {
  const auto m = IsingModel::uniform(path_graph(4), 0.5);
  EXPECT_TRUE(uniform_dominance_network(m, 1, 0, 3).dominant);
  EXPECT_TRUE(uniform_dominance_network(m, 0, 1, 3).dominant);

  const auto bad = IsingModel::uniform(counterexample_graph(10), 0.8);
  EXPECT_FALSE(bad.graph.has_edge(0, 9));
  EXPECT_EQ(bad.graph.degree(0), 8u);
  EXPECT_FALSE(uniform_dominance_network(bad, 0, 1, 9).dominant);
}

TEST(Ising, GlauberMatchesExactMarginals) {
  IsingModel m = IsingModel::uniform(cycle_graph(6), 0.4);
  m.alpha = {0.3, 0, 0, 0.2, 0, 0};
  const auto table = exact_joint(m);
  const auto samples = glauber_sample(m, 40000, 200, 7, 2);
  double m0 = 0.0, c01 = 0.0;
  for (const auto& s : samples) {
    m0 += s[0];
    c01 += s[0] * s[1];
  }
  EXPECT_NEAR(m0 / samples.size(), table.mean(0), 0.02);
  EXPECT_NEAR(c01 / samples.size(), table.correlation(0, 1), 0.02);
}

TEST(Ising, FlipSymmetryWithoutBias) {
  Rng rng(5);
  const auto m = random_model(rng, 8, 0.4, 1.0, 0.0);
  const auto t = exact_joint(m);
  const Config all = (Config{1} << 8) - 1;
  for (Config c = 0; c <= all; ++c) EXPECT_NEAR(t.prob(c), t.prob(all ^ c), 1e-15);
  for (std::size_t v = 0; v < 8; ++v) EXPECT_NEAR(t.conditional(v), 0.5, 1e-12);
}

TEST(Ising, GriffithsMonotonicity) {
  Rng rng(6);
  std::uniform_real_distribution<double> bump(0.05, 0.5);
  for (int t = 0; t < 30; ++t) {
    auto m = random_model(rng, 4 + t % 5, 0.5, 0.8, 0.3);
    const auto before = exact_joint(m);
    if (m.graph.edge_count() > 0 && t % 2 == 0) m.beta[static_cast<std::size_t>(t) % m.beta.size()] += bump(rng);
    else m.alpha[static_cast<std::size_t>(t) % m.alpha.size()] += bump(rng);
    const auto after = exact_joint(m);
    for (std::size_t v = 0; v < m.graph.size(); ++v) EXPECT_GE(after.mean(v), before.mean(v) - 1e-12);
  }
}

TEST(Ising, Validation) {
  IsingModel m = IsingModel::uniform(path_graph(3), 0.5);
  m.beta[0] = -0.1;
  EXPECT_THROW(m.validate(), ValidationError);
  m = IsingModel::uniform(path_graph(3), 0.5);
  m.alpha.pop_back();
  EXPECT_THROW(m.validate(), ValidationError);
  EXPECT_THROW(exact_joint(IsingModel::uniform(path_graph(kExactIsingLimit + 1), 0.1)), ValidationError);
}
