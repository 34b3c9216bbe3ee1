#pragma once

// The bonus-penalty payment, the not-all-equal functional, admissible assignments,
// and peer selection for comparison and network data.

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bpp/graph.hpp"
#include "bpp/rng.hpp"
#include "bpp/sst_models.hpp"

namespace bpp {

/// s_i s_j - s_i s_k. Throws ValidationError on inputs outside {-1, 1}.
double bpp(int si, int sj, int sk);

/// 3/4 - (w1 w2 + w1 w3 + w2 w3)/4: 1 iff the inputs are not all equal.
int nae(int w1, int w2, int w3);

/// Ordered pair; the signal on (first, second) is +1 when `first` is preferred.
struct ItemPair {
  ItemId first = 0;
  ItemId second = 0;
  friend auto operator<=>(const ItemPair&, const ItemPair&) = default;
};

using AgentId = std::size_t;
using PairSet = std::set<ItemPair>;

struct Assignment {
  std::map<AgentId, ItemPair> entries;

  /// Throws ValidationError on a pair with equal items.
  void add(AgentId agent, ItemPair pair);
  PairSet pairs() const;
};

/// First pair (a, a') with no pivot a'' such that (a'', a') and (a'', a) are both present.
std::optional<ItemPair> check_admissible(const PairSet& pairs);

/// Adds, for every (a, a') in `base`, all six ordered pairs on {a, a', a''}. The pivot is the
/// smallest valid index, or uniform among valid indices when `rng` is given.
PairSet make_admissible(const PairSet& base, std::size_t n_items, Rng* rng = nullptr);

struct PeerTuple {
  AgentId j = 0;
  AgentId k = 0;
  std::optional<ItemId> pivot;  ///< set in comparison mode
};

using PeerSelection = std::map<AgentId, std::vector<PeerTuple>>;

/// Agent i holds (a, a'); finds a'' and agents j != i holding (a'', a') and k != i holding (a'', a).
/// Deterministic mode takes the smallest pivot, then the smallest agent ids; with `rng` the tuple is
/// uniform among all valid ones. Throws RuntimeError when none exists.
PeerTuple select_peers_comparison(const Assignment& assignment, AgentId i, Rng* rng = nullptr);

/// A friend j and a non-friend k != i. Throws RuntimeError for isolated or fully connected nodes.
PeerTuple select_peers_network(const Graph& graph, std::size_t i, Rng* rng = nullptr);

/// M_i = mean over i's tuples of bpp(r_i, r_j, r_k). Throws ValidationError on a missing report
/// or an agent with no tuples.
std::map<AgentId, double> pay_all(const std::map<AgentId, int>& reports, const PeerSelection& selection);

struct MajorityVote {
  int value = 1;
  bool tie = false;  ///< even split, broken toward +1
};

/// Majority of the reports of i's neighbors.
MajorityVote neighbor_majority(const Graph& graph, const std::vector<int>& reports, std::size_t i);

/// bpp(r_i, majority of neighbors, r_k) for a non-friend k.
double pay_network_majority(const Graph& graph, const std::vector<int>& reports, std::size_t i, std::size_t k);

/// Reads `agent_id,item_u,item_v` rows (optional header).
Assignment load_assignment(const std::string& path);

/// Reads `agent_id,report` rows with report in {-1, 1}.
std::map<AgentId, int> load_reports(const std::string& path);

/// Writes `agent_id,payment` with 12 significant digits, adding `shift` to each payment.
void write_payments(std::ostream& out, const std::map<AgentId, double>& payments, double shift = 0.0);

}  // namespace bpp
