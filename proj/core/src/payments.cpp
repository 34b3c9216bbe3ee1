#include "bpp/payments.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>

#include "bpp/csv.hpp"
#include "bpp/dominance.hpp"
#include "bpp/errors.hpp"

namespace bpp {

double bpp(int si, int sj, int sk) {
  require_sign(si);
  require_sign(sj);
  require_sign(sk);
  return static_cast<double>(si * sj - si * sk);
}

int nae(int w1, int w2, int w3) {
  require_sign(w1);
  require_sign(w2);
  require_sign(w3);
  return (3 - (w1 * w2 + w1 * w3 + w2 * w3)) / 4;
}

void Assignment::add(AgentId agent, ItemPair pair) {
  if (pair.first == pair.second) throw ValidationError("assigned pair compares an item with itself");
  if (!entries.emplace(agent, pair).second)
    throw ValidationError("agent " + std::to_string(agent) + " already has a pair");
}

PairSet Assignment::pairs() const {
  PairSet out;
  for (const auto& [agent, pair] : entries) out.insert(pair);
  return out;
}

namespace {

std::vector<ItemId> pivots_for(const PairSet& pairs, ItemPair e) {
  std::vector<ItemId> out;
  // Candidates are the first items of pairs ending in e.second.
  for (const auto& p : pairs) {
    if (p.second != e.second || p.first == e.first) continue;
    if (pairs.count(ItemPair{p.first, e.first})) out.push_back(p.first);
  }
  return out;
}

}  // namespace

std::optional<ItemPair> check_admissible(const PairSet& pairs) {
  for (const auto& e : pairs)
    if (pivots_for(pairs, e).empty()) return e;
  return std::nullopt;
}

PairSet make_admissible(const PairSet& base, std::size_t n_items, Rng* rng) {
  if (n_items < 3) throw ValidationError("admissible closure needs at least 3 items");
  PairSet out = base;
  for (const auto& e : base) {
    if (e.first == e.second || e.first >= n_items || e.second >= n_items)
      throw ValidationError("pair outside the item range");
    ItemId pivot = 0;
    if (rng) {
      std::uniform_int_distribution<std::size_t> pick(0, n_items - 3);
      pivot = pick(*rng);
      // Skip over the two excluded items, keeping the draw uniform on the rest.
      const ItemId lo = std::min(e.first, e.second);
      const ItemId hi = std::max(e.first, e.second);
      if (pivot >= lo) ++pivot;
      if (pivot >= hi) ++pivot;
    } else {
      while (pivot == e.first || pivot == e.second) ++pivot;
    }
    const ItemId a = e.first, b = e.second, c = pivot;
    for (ItemPair p : {ItemPair{a, b}, ItemPair{b, a}, ItemPair{a, c}, ItemPair{c, a}, ItemPair{b, c}, ItemPair{c, b}})
      out.insert(p);
  }
  return out;
}

PeerTuple select_peers_comparison(const Assignment& assignment, AgentId i, Rng* rng) {
  const auto it = assignment.entries.find(i);
  if (it == assignment.entries.end()) throw ValidationError("agent " + std::to_string(i) + " has no pair");
  const ItemPair e = it->second;

  // Holders of each pair, excluding i, in ascending agent order.
  std::map<ItemPair, std::vector<AgentId>> holders;
  for (const auto& [agent, pair] : assignment.entries)
    if (agent != i) holders[pair].push_back(agent);

  std::vector<PeerTuple> valid;
  std::set<ItemId> pivots;
  for (const auto& [pair, agents] : holders)
    if (pair.second == e.second && pair.first != e.first) pivots.insert(pair.first);
  for (ItemId c : pivots) {
    const auto js = holders.find(ItemPair{c, e.second});
    const auto ks = holders.find(ItemPair{c, e.first});
    if (js == holders.end() || ks == holders.end()) continue;
    if (!rng) return PeerTuple{js->second.front(), ks->second.front(), c};
    for (AgentId j : js->second)
      for (AgentId k : ks->second) valid.push_back(PeerTuple{j, k, c});
  }
  if (valid.empty())
    throw RuntimeError("no pivot and peer pair for agent " + std::to_string(i) + " holding (" +
                       std::to_string(e.first) + "," + std::to_string(e.second) + ")");
  std::uniform_int_distribution<std::size_t> pick(0, valid.size() - 1);
  return valid[pick(*rng)];
}

PeerTuple select_peers_network(const Graph& graph, std::size_t i, Rng* rng) {
  if (i >= graph.size()) throw ValidationError("node out of range");
  const auto& friends = graph.neighbors(i);
  if (friends.empty()) throw RuntimeError("node " + std::to_string(i) + " has no friend");
  const std::size_t non_friends = graph.size() - 1 - friends.size();
  if (non_friends == 0) throw RuntimeError("node " + std::to_string(i) + " has no non-friend");

  // The r-th non-friend in increasing node order.
  auto nth_non_friend = [&](std::size_t r) {
    for (std::size_t v = 0; v < graph.size(); ++v) {
      if (v == i || graph.has_edge(i, v)) continue;
      if (r == 0) return v;
      --r;
    }
    throw RuntimeError("non-friend enumeration out of range");
  };
  if (!rng) return PeerTuple{friends.front(), nth_non_friend(0), std::nullopt};
  std::uniform_int_distribution<std::size_t> pick_j(0, friends.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_k(0, non_friends - 1);
  const std::size_t j = friends[pick_j(*rng)];
  return PeerTuple{j, nth_non_friend(pick_k(*rng)), std::nullopt};
}

std::map<AgentId, double> pay_all(const std::map<AgentId, int>& reports, const PeerSelection& selection) {
  auto report_of = [&](AgentId a) {
    const auto it = reports.find(a);
    if (it == reports.end()) throw ValidationError("missing report for agent " + std::to_string(a));
    return it->second;
  };
  std::map<AgentId, double> out;
  for (const auto& [i, tuples] : selection) {
    if (tuples.empty()) throw ValidationError("agent " + std::to_string(i) + " has no peer tuple");
    double total = 0.0;
    for (const auto& t : tuples) total += bpp(report_of(i), report_of(t.j), report_of(t.k));
    out[i] = total / static_cast<double>(tuples.size());
  }
  return out;
}

MajorityVote neighbor_majority(const Graph& graph, const std::vector<int>& reports, std::size_t i) {
  if (reports.size() != graph.size()) throw ValidationError("one report per node required");
  const auto& friends = graph.neighbors(i);
  if (friends.empty()) throw RuntimeError("node " + std::to_string(i) + " has no friend");
  int sum = 0;
  for (std::size_t v : friends) {
    require_sign(reports[v]);
    sum += reports[v];
  }
  if (sum == 0) return MajorityVote{1, true};
  return MajorityVote{sum > 0 ? 1 : -1, false};
}

double pay_network_majority(const Graph& graph, const std::vector<int>& reports, std::size_t i, std::size_t k) {
  if (k == i || graph.has_edge(i, k)) throw ValidationError("penalty peer must be a non-friend");
  return bpp(reports.at(i), neighbor_majority(graph, reports, i).value, reports.at(k));
}

Assignment load_assignment(const std::string& path) {
  Assignment out;
  const auto rows = read_csv(path);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (r == 0 && looks_like_header(row)) continue;
    const std::string where = location(path, row.line);
    if (row.fields.size() != 3) throw ValidationError(where + ": expected 'agent_id,item_u,item_v'");
    const long long agent = parse_integer(row.fields[0], where);
    const long long u = parse_integer(row.fields[1], where);
    const long long v = parse_integer(row.fields[2], where);
    if (agent < 0 || u < 0 || v < 0) throw ValidationError(where + ": negative id");
    try {
      out.add(static_cast<AgentId>(agent), ItemPair{static_cast<ItemId>(u), static_cast<ItemId>(v)});
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
  return out;
}

std::map<AgentId, int> load_reports(const std::string& path) {
  std::map<AgentId, int> out;
  const auto rows = read_csv(path);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (r == 0 && looks_like_header(row)) continue;
    const std::string where = location(path, row.line);
    if (row.fields.size() != 2) throw ValidationError(where + ": expected 'agent_id,report'");
    const long long agent = parse_integer(row.fields[0], where);
    const long long s = parse_integer(row.fields[1], where);
    if (agent < 0) throw ValidationError(where + ": negative agent id");
    if (s != 1 && s != -1) throw ValidationError(where + ": report must be -1 or 1");
    if (!out.emplace(static_cast<AgentId>(agent), static_cast<int>(s)).second)
      throw ValidationError(where + ": duplicate agent");
  }
  return out;
}

void write_payments(std::ostream& out, const std::map<AgentId, double>& payments, double shift) {
  out << "agent_id,payment\n" << std::setprecision(12);
  for (const auto& [agent, value] : payments) out << agent << ',' << value + shift << '\n';
}

}  // namespace bpp
