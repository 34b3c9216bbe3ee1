#include "bpp/datasets.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "bpp/csv.hpp"
#include "bpp/errors.hpp"

namespace bpp {

void RankingDataset::validate() const {
  if (agent_ids.size() != rankings.size()) throw ValidationError("one agent id per ranking required");
  for (const auto& r : rankings)
    if (r.size() != n_items) throw ValidationError("every ranking must cover all items");
}

double NetworkDataset::prior() const {
  if (labels.empty()) return 0.0;
  const auto plus = std::count(labels.begin(), labels.end(), 1);
  return static_cast<double>(plus) / static_cast<double>(labels.size());
}

void NetworkDataset::validate() const {
  if (labels.size() != graph.size()) throw ValidationError("one label per node required");
  for (int s : labels)
    if (s != 1 && s != -1) throw ValidationError("labels must be -1 or 1");
}

RankingDataset load_rankings(const std::string& path) {
  const auto rows = read_csv(path);
  RankingDataset out;
  std::set<std::size_t> seen_agents;
  bool have_size = false;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (r == 0 && looks_like_header(row)) continue;
    const std::string where = location(path, row.line);
    if (row.fields.size() < 2) throw ValidationError(where + ": expected 'agent_id,item_0,...'");
    const long long agent = parse_integer(row.fields[0], where);
    if (agent < 0) throw ValidationError(where + ": negative agent id");
    if (!seen_agents.insert(static_cast<std::size_t>(agent)).second)
      throw ValidationError(where + ": duplicate agent id " + std::to_string(agent));
    const std::size_t n = row.fields.size() - 1;
    if (!have_size) {
      out.n_items = n;
      have_size = true;
    } else if (n != out.n_items) {
      throw ValidationError(where + ": expected " + std::to_string(out.n_items) + " items, got " + std::to_string(n));
    }
    std::vector<ItemId> order(n);
    std::vector<bool> used(n, false);
    for (std::size_t pos = 0; pos < n; ++pos) {
      const long long item = parse_integer(row.fields[pos + 1], where);
      if (item < 0 || static_cast<std::size_t>(item) >= n)
        throw ValidationError(where + ": item " + std::to_string(item) + " outside 0.." + std::to_string(n - 1));
      if (used[static_cast<std::size_t>(item)])
        throw ValidationError(where + ": item " + std::to_string(item) + " repeated");
      used[static_cast<std::size_t>(item)] = true;
      order[pos] = static_cast<ItemId>(item);
    }
    out.agent_ids.push_back(static_cast<std::size_t>(agent));
    out.rankings.push_back(Ranking::from_order(order));
  }
  if (out.rankings.empty()) throw ValidationError(path + ": no rankings");
  return out;
}

NetworkDataset load_network(const std::string& edge_path, const std::string& label_path) {
  const auto label_rows = read_csv(label_path);
  std::map<std::size_t, long long> raw;
  bool has_zero = false, has_minus = false;
  for (std::size_t r = 0; r < label_rows.size(); ++r) {
    const auto& row = label_rows[r];
    if (r == 0 && looks_like_header(row)) continue;
    const std::string where = location(label_path, row.line);
    if (row.fields.size() != 2) throw ValidationError(where + ": expected 'agent_id,label'");
    const long long agent = parse_integer(row.fields[0], where);
    const long long label = parse_integer(row.fields[1], where);
    if (agent < 0) throw ValidationError(where + ": negative agent id");
    if (label != 1 && label != -1 && label != 0) throw ValidationError(where + ": label must be -1 or 1");
    has_zero = has_zero || label == 0;
    has_minus = has_minus || label == -1;
    if (!raw.emplace(static_cast<std::size_t>(agent), label).second)
      throw ValidationError(where + ": duplicate agent id " + std::to_string(agent));
  }
  if (has_zero && has_minus) throw ValidationError(label_path + ": labels mix 0 and -1");
  if (raw.empty()) throw ValidationError(label_path + ": no labels");

  const std::size_t n_labels = raw.rbegin()->first + 1;
  Graph edges = load_edge_list(edge_path, n_labels);
  NetworkDataset out;
  out.labels.assign(edges.size(), 0);
  for (auto [agent, label] : raw) out.labels[agent] = label == 0 ? -1 : static_cast<int>(label);
  for (std::size_t v = 0; v < out.labels.size(); ++v)
    if (out.labels[v] == 0) throw ValidationError(label_path + ": node " + std::to_string(v) + " has no label");
  if (has_zero) out.warnings.push_back(label_path + ": labels given as {0,1}; 0 read as -1");
  out.graph = std::move(edges);
  return out;
}

RankingDataset synthetic_mallows_dataset(double eta, std::size_t n_agents, std::size_t n_items, std::uint64_t seed,
                                         bool random_reference) {
  if (n_items < 2) throw ValidationError("synthetic dataset needs at least 2 items");
  Rng ref_rng(derive_seed(seed, 0xfeedULL));
  Ranking reference = Ranking::identity(n_items);
  if (random_reference) {
    std::vector<ItemId> order(n_items);
    std::iota(order.begin(), order.end(), ItemId{0});
    std::shuffle(order.begin(), order.end(), ref_rng);
    reference = Ranking::from_order(order);
  }
  RankingDataset out;
  out.n_items = n_items;
  for (std::size_t a = 0; a < n_agents; ++a) {
    Rng rng(derive_seed(seed, a, 1));
    out.agent_ids.push_back(a);
    out.rankings.push_back(sample_mallows_ranking(eta, reference, rng));
  }
  return out;
}

NetworkDataset synthetic_ising_dataset(const IsingModel& model, std::uint64_t seed, std::size_t burn_in) {
  GlauberChain chain(model, seed);
  chain.run(burn_in);
  NetworkDataset out;
  out.graph = model.graph;
  out.labels = chain.state();
  return out;
}

Graph random_cycle_graph(std::size_t n, std::uint64_t seed) {
  if (n < 3) throw ValidationError("cycle needs at least 3 nodes");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Edge> edges;
  for (std::size_t t = 0; t < n; ++t) edges.emplace_back(order[t], order[(t + 1) % n]);
  return Graph(n, edges);
}

Graph random_graph(std::size_t n, double p, std::uint64_t seed, std::size_t max_degree) {
  Rng rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<std::size_t> degree(n, 0);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) {
      if (!coin(rng)) continue;
      if (degree[u] >= max_degree || degree[v] >= max_degree) continue;
      ++degree[u];
      ++degree[v];
      edges.emplace_back(u, v);
    }
  return Graph(n, edges);
}

}  // namespace bpp
