#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "bpp/datasets.hpp"
#include "bpp/ecdf.hpp"
#include "bpp/errors.hpp"
#include "bpp/experiments.hpp"
#include "bpp/model_config.hpp"

using namespace bpp;

namespace {

std::string data(const std::string& name) { return std::string(BPP_TEST_DATA_DIR) + "/" + name; }

double mean(const std::vector<double>& x) { return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size()); }

}  // namespace

TEST(Datasets, LoadRankings) {
  const auto d = load_rankings(data("rankings_small.csv"));
  EXPECT_EQ(d.size(), 3u);
  EXPECT_EQ(d.n_items, 4u);
  EXPECT_TRUE(d.rankings[1].prefers(1, 0));
  try {
    load_rankings(data("rankings_repeat.csv"));
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("rankings_repeat.csv:3"), std::string::npos) << e.what();
  }
}

TEST(Datasets, LoadNetwork) {
  const auto n = load_network(data("edges_small.csv"), data("labels_small.csv"));
  EXPECT_EQ(n.graph.size(), 5u);
  EXPECT_EQ(n.graph.edge_count(), 5u);
  EXPECT_TRUE(n.warnings.empty());
  EXPECT_DOUBLE_EQ(n.prior(), 0.6);

  const auto b = load_network(data("edges_small.csv"), data("labels_binary.csv"));
  EXPECT_EQ(b.labels[1], -1);
  EXPECT_EQ(b.warnings.size(), 1u);
}

TEST(Datasets, Synthetic) {
  const auto a = synthetic_mallows_dataset(2.0, 50, 6, 9);
  const auto b = synthetic_mallows_dataset(2.0, 50, 6, 9);
  ASSERT_EQ(a.size(), 50u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.rankings[i].order(), b.rankings[i].order());

  const Graph g = random_cycle_graph(30, 4);
  EXPECT_EQ(g.edge_count(), 30u);
  EXPECT_EQ(g.max_degree(), 2u);
  const Graph r = random_graph(40, 0.3, 2, 5);
  EXPECT_LE(r.max_degree(), 5u);
}

TEST(Ecdf, Basics) {
  const Ecdf c({2.0, 2.0, 2.0});
  EXPECT_DOUBLE_EQ(c(1.999), 0.0);
  EXPECT_DOUBLE_EQ(c(2.0), 1.0);
  EXPECT_EQ(c.steps().size(), 1u);
  EXPECT_THROW(Ecdf({}), ValidationError);

  const std::vector<double> x{-1.0, 0.5, 0.0, 2.0};
  std::vector<double> shifted = x;
  for (double& v : shifted) v += 1.0;
  const auto same = dominance_test(Ecdf(x), Ecdf(x));
  EXPECT_TRUE(same.dominated);
  EXPECT_TRUE(same.equal);
  const auto up = dominance_test(Ecdf(shifted), Ecdf(x));
  EXPECT_TRUE(up.dominated);
  EXPECT_FALSE(up.equal);
  EXPECT_FALSE(dominance_test(Ecdf(x), Ecdf(shifted)).dominated);

  std::ostringstream out;
  write_ecdf_csv(out, Ecdf({0.0, 1.0}));
  EXPECT_EQ(out.str(), "payment,cdf\n0,0.5\n1,1\n");
}

TEST(Summary, Examples) {
  const auto s = summarize({2.0, 0.0, -2.0});
  EXPECT_DOUBLE_EQ(s.mean, 0.0);
  EXPECT_DOUBLE_EQ(s.fraction_positive, 1.0 / 3.0);
  const auto t = summarize({2.0, 2.0});
  EXPECT_DOUBLE_EQ(t.mean, 2.0);
  EXPECT_DOUBLE_EQ(t.fraction_positive, 1.0);
  EXPECT_THROW(summarize({}), ValidationError);
}

TEST(Experiments, ComparisonSettings) {
  const auto d = synthetic_mallows_dataset(2.0, 250, 10, 1);
  ComparisonOptions opt;
  opt.seed = 5;
  opt.check_orientation = true;
  const auto truth = experiment_comparison(d, Setting::Truth, opt);
  const auto unin = experiment_comparison(d, Setting::Uninformed, opt);
  const auto dev = experiment_comparison(d, Setting::Deviation, opt);
  EXPECT_GT(mean(truth), 0.0);
  EXPECT_GT(mean(truth), mean(dev));
  const double sigma = std::sqrt(2.0 / (250.0 * 100.0));
  EXPECT_LT(std::abs(mean(unin)), 3.0 * sigma);
  EXPECT_EQ(experiment_comparison(d, Setting::Truth, opt), truth);

  RankingDataset tiny = d;
  tiny.rankings.resize(2);
  tiny.agent_ids.resize(2);
  EXPECT_THROW(experiment_comparison(tiny, Setting::Truth, opt), ValidationError);
  EXPECT_THROW(parse_setting("honest"), ValidationError);
}

TEST(Experiments, NetworkSkipsAndSettings) {
  const auto n = load_network(data("edges_small.csv"), data("labels_small.csv"));
  const auto r = experiment_network(n, Setting::Truth, {});
  EXPECT_EQ(r.agents.size() + r.skipped.size(), 5u);

  Graph star = star_graph(5);
  NetworkDataset s{star, {1, 1, 1, -1, -1}, {}};
  const auto rs = experiment_network(s, Setting::Truth, {});
  EXPECT_EQ(rs.skipped, std::vector<std::size_t>{0});

  const auto model = IsingModel::uniform(random_cycle_graph(200, 3), 0.2);
  IsingExperimentOptions opt;
  opt.seed = 2;
  const auto truth = experiment_network_model(model, Setting::Truth, opt);
  const auto unin = experiment_network_model(model, Setting::Uninformed, opt);
  EXPECT_GT(mean(truth.payments), 0.0);
  EXPECT_GT(summarize(truth.payments).fraction_positive, 0.5);
  EXPECT_LT(std::abs(mean(unin.payments)), 3.0 * std::sqrt(2.0 / (200.0 * 100.0)));
}

TEST(Transitivity, Examples) {
  RankingDataset same;
  same.n_items = 5;
  for (std::size_t i = 0; i < 4; ++i) {
    same.agent_ids.push_back(i);
    same.rankings.push_back(Ranking::identity(5));
  }
  const auto s = empirical_transitivity(same);
  EXPECT_DOUBLE_EQ(s.weak_fraction, 1.0);
  // p_{a>a''} = max(p_{a>a'}, p_{a'>a''}) = 1, so the strict strong test never fires.
  EXPECT_DOUBLE_EQ(s.strong_fraction, 0.0);
  EXPECT_DOUBLE_EQ(s.mean_gap, 0.0);
  EXPECT_EQ(s.triples, 10u);

  const auto m = empirical_transitivity(synthetic_mallows_dataset(1.0, 500, 10, 3));
  EXPECT_GE(m.weak_fraction, 0.99);

  // Two opposite rankings tie every pair.
  RankingDataset tie;
  tie.n_items = 3;
  tie.agent_ids = {0, 1};
  tie.rankings = {Ranking::identity(3), Ranking::from_order({2, 1, 0})};
  const auto t = empirical_transitivity(tie);
  EXPECT_EQ(t.ties, 1u);
  EXPECT_DOUBLE_EQ(t.weak_fraction, 0.0);
}

TEST(Output, SettingPayments) {
  std::ostringstream out;
  write_setting_payments(out, {0, 3}, {0.5, -1.0}, Setting::Deviation, 1.0, true);
  EXPECT_EQ(out.str(), "agent_id,setting,payment\n0,deviation,1.5\n3,deviation,0\n");
}

TEST(ModelConfig, Parse) {
  const auto c = load_model_config(data("model_mallows.cfg"));
  EXPECT_EQ(c.variant, "mallows");
  EXPECT_EQ(c.seed, 3u);
  EXPECT_DOUBLE_EQ(std::get<MallowsModel>(c.model).eta, 1.0);
  EXPECT_EQ(item_count(c.model), 4u);

  EXPECT_EQ(load_model_config(data("model_weak_st.cfg")).variant, "weak_st_example");
  EXPECT_THROW(parse_model_config("variant=mallows\nn_items=4\ncolor=red\n"), ValidationError);
  EXPECT_THROW(parse_model_config("n_items=4\n"), ValidationError);
  EXPECT_THROW(parse_model_config("variant=noisy_sort\nn_items=4\ngamma=0.7\n"), ValidationError);
  const auto btl = parse_model_config("variant=btl\nn_items=3\nprior=uniform\nprior_a=0\nprior_b=2\n");
  EXPECT_EQ(std::get<ParametricModel>(btl.model).prior.kind, ScorePrior::Kind::Uniform);
}
