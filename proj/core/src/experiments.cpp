#include "bpp/experiments.hpp"

#include <algorithm>
#include <array>
#include <iomanip>
#include <ostream>

#include "bpp/errors.hpp"
#include "bpp/payments.hpp"

namespace bpp {

namespace {

// Stream tags keep peer/item draws independent of report coins.
constexpr std::uint64_t kCoinStream = 0xC01Full;
constexpr std::uint64_t kChainStream = 0xC4A1ull;

int coin(Rng& rng, double p_plus) {
  std::bernoulli_distribution b(p_plus);
  return b(rng) ? 1 : -1;
}

int compare(const Ranking& r, ItemId x, ItemId y) { return r.prefers(x, y) ? 1 : -1; }

// k distinct values from 0..n-1, excluding `skip` (pass n to exclude nothing).
template <std::size_t K>
std::array<std::size_t, K> draw_distinct(std::size_t n, std::size_t skip, Rng& rng) {
  std::array<std::size_t, K> out{};
  const std::size_t pool = skip < n ? n - 1 : n;
  for (std::size_t m = 0; m < K; ++m) {
    std::uniform_int_distribution<std::size_t> pick(0, pool - 1 - m);
    std::size_t v = pick(rng);
    // Map v to the v-th value not excluded and not yet drawn, in increasing order.
    std::array<std::size_t, K + 1> taken{};
    std::size_t t = 0;
    for (std::size_t q = 0; q < m; ++q) taken[t++] = out[q];
    if (skip < n) taken[t++] = skip;
    std::sort(taken.begin(), taken.begin() + static_cast<std::ptrdiff_t>(t));
    for (std::size_t q = 0; q < t; ++q)
      if (v >= taken[q]) ++v;
    out[m] = v;
  }
  return out;
}

struct PeerDraw {
  std::size_t j = 0;
  std::size_t k = 0;
};

PeerDraw draw_network_peers(const Graph& g, std::size_t i, Rng& rng) {
  const PeerTuple t = select_peers_network(g, i, &rng);
  return PeerDraw{t.j, t.k};
}

}  // namespace

std::string to_string(Setting s) {
  switch (s) {
    case Setting::Truth: return "truth";
    case Setting::Uninformed: return "uninformed";
    case Setting::Deviation: return "deviation";
  }
  return "unknown";
}

Setting parse_setting(const std::string& text) {
  if (text == "truth") return Setting::Truth;
  if (text == "uninformed") return Setting::Uninformed;
  if (text == "deviation") return Setting::Deviation;
  throw ValidationError("unknown setting '" + text + "' (expected truth, uninformed, or deviation)");
}

std::vector<double> experiment_comparison(const RankingDataset& data, Setting setting, const ComparisonOptions& options) {
  data.validate();
  if (data.size() < 3) throw ValidationError("comparison experiment needs at least 3 agents");
  if (data.n_items < 3) throw ValidationError("comparison experiment needs at least 3 items");
  if (options.trials == 0) throw ValidationError("trial count must be positive");
  const std::uint64_t coin_seed = derive_seed(options.seed, kCoinStream);

  std::vector<double> out(data.size(), 0.0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    double total = 0.0;
    for (std::size_t t = 0; t < options.trials; ++t) {
      Rng rng(derive_seed(options.seed, i, t));
      const auto items = draw_distinct<3>(data.n_items, data.n_items, rng);
      const auto peers = draw_distinct<2>(data.size(), i, rng);
      const ItemId a = items[0], a1 = items[1], a2 = items[2];
      const Ranking& ri = data.rankings[i];
      const Ranking& rj = data.rankings[peers[0]];
      const Ranking& rk = data.rankings[peers[1]];

      int si = compare(ri, a, a1);
      int sj = compare(rj, a2, a1);
      int sk = compare(rk, a2, a);
      if (options.check_orientation) {
        const int lhs = nae(compare(ri, a, a1), compare(rj, a1, a2), compare(rk, a2, a));
        const double rhs = 0.25 * bpp(si, sj, sk) + 0.75 + 0.25 * sj * sk;
        if (static_cast<double>(lhs) != rhs) throw RuntimeError("comparison triple violates the NAE identity");
      }
      Rng coins(derive_seed(coin_seed, i, t));
      if (setting != Setting::Truth) si = fair_sign(coins);
      if (setting == Setting::Uninformed) {
        sj = fair_sign(coins);
        sk = fair_sign(coins);
      }
      total += bpp(si, sj, sk);
    }
    out[i] = total / static_cast<double>(options.trials);
  }
  return out;
}

namespace {

template <class LabelsFor>
NetworkPayments network_payments(const Graph& g, Setting setting, std::size_t trials, std::uint64_t seed,
                                 double prior, LabelsFor&& labels_for_trial) {
  if (trials == 0) throw ValidationError("trial count must be positive");
  if (!(prior >= 0.0 && prior <= 1.0)) throw ValidationError("prior must lie in [0, 1]");
  NetworkPayments out;
  for (std::size_t v = 0; v < g.size(); ++v) {
    const bool ok = g.degree(v) > 0 && g.degree(v) + 1 < g.size();
    (ok ? out.agents : out.skipped).push_back(v);
  }
  out.payments.assign(out.agents.size(), 0.0);
  const std::uint64_t coin_seed = derive_seed(seed, kCoinStream);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::vector<int>& labels = labels_for_trial(t);
    for (std::size_t idx = 0; idx < out.agents.size(); ++idx) {
      const std::size_t i = out.agents[idx];
      Rng rng(derive_seed(seed, i, t));
      const PeerDraw p = draw_network_peers(g, i, rng);
      int ri = labels[i], rj = labels[p.j], rk = labels[p.k];
      Rng coins(derive_seed(coin_seed, i, t));
      if (setting == Setting::Deviation) ri = fair_sign(coins);
      if (setting == Setting::Uninformed) {
        ri = coin(coins, prior);
        rj = coin(coins, prior);
        rk = coin(coins, prior);
      }
      out.payments[idx] += bpp(ri, rj, rk);
    }
  }
  for (double& x : out.payments) x /= static_cast<double>(trials);
  return out;
}

}  // namespace

NetworkPayments experiment_network(const NetworkDataset& data, Setting setting, const NetworkOptions& options) {
  data.validate();
  const double prior = options.prior.value_or(data.prior());
  return network_payments(data.graph, setting, options.trials, options.seed, prior,
                          [&](std::size_t) -> const std::vector<int>& { return data.labels; });
}

NetworkPayments experiment_network_model(const IsingModel& model, Setting setting,
                                         const IsingExperimentOptions& options) {
  if (options.thin == 0) throw ValidationError("thinning must be at least 1 sweep");
  GlauberChain chain(model, derive_seed(options.seed, kChainStream));
  chain.run(options.burn_in);
  return network_payments(model.graph, setting, options.trials, options.seed, options.prior.value_or(0.5),
                          [&](std::size_t) -> const std::vector<int>& {
                            chain.run(options.thin);
                            return chain.state();
                          });
}

TransitivityStats empirical_transitivity(const RankingDataset& data) {
  data.validate();
  const std::size_t n = data.n_items;
  if (n < 3) throw ValidationError("transitivity needs at least 3 items");
  if (data.size() == 0) throw ValidationError("transitivity needs at least one ranking");

  // wins[x][y] = number of rankings with x above y.
  std::vector<std::vector<std::size_t>> wins(n, std::vector<std::size_t>(n, 0));
  for (const auto& r : data.rankings)
    for (ItemId x = 0; x < n; ++x)
      for (ItemId y = 0; y < n; ++y)
        if (x != y && r.prefers(x, y)) ++wins[x][y];
  const double m = static_cast<double>(data.size());
  auto p = [&](ItemId x, ItemId y) { return static_cast<double>(wins[x][y]) / m; };
  auto tied = [&](ItemId x, ItemId y) { return 2 * wins[x][y] == data.size(); };

  TransitivityStats s;
  double gap_total = 0.0;
  for (ItemId x = 0; x < n; ++x)
    for (ItemId y = x + 1; y < n; ++y)
      for (ItemId z = y + 1; z < n; ++z) {
        ++s.triples;
        if (tied(x, y) || tied(y, z) || tied(x, z)) {
          ++s.ties;
          continue;
        }
        std::array<ItemId, 3> t{x, y, z};
        do {
          const ItemId a = t[0], b = t[1], c = t[2];
          if (p(a, b) > 0.5 && p(b, c) > 0.5 && p(a, c) > 0.5) {
            ++s.weak;
            const double gap = p(a, c) - std::max(p(a, b), p(b, c));
            gap_total += gap;
            if (gap > 0.0) ++s.strong;
            break;
          }
        } while (std::next_permutation(t.begin(), t.end()));
      }
  const std::size_t counted = s.triples - s.ties;
  if (counted > 0) {
    s.weak_fraction = static_cast<double>(s.weak) / static_cast<double>(counted);
    s.strong_fraction = static_cast<double>(s.strong) / static_cast<double>(counted);
  }
  if (s.weak > 0) s.mean_gap = gap_total / static_cast<double>(s.weak);
  return s;
}

void write_setting_payments(std::ostream& out, const std::vector<std::size_t>& agents,
                            const std::vector<double>& payments, Setting setting, double shift, bool header) {
  if (agents.size() != payments.size()) throw ValidationError("one payment per agent required");
  if (header) out << "agent_id,setting,payment\n";
  out << std::setprecision(12);
  for (std::size_t n = 0; n < agents.size(); ++n)
    out << agents[n] << ',' << to_string(setting) << ',' << payments[n] + shift << '\n';
}

}  // namespace bpp
