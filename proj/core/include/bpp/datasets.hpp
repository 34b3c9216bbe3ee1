#pragma once

// Ranking and social-network datasets: loaders and synthetic generators.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bpp/graph.hpp"
#include "bpp/ising.hpp"
#include "bpp/sst_models.hpp"

namespace bpp {

struct RankingDataset {
  std::vector<std::size_t> agent_ids;
  std::vector<Ranking> rankings;  ///< one complete ranking per agent
  std::size_t n_items = 0;

  std::size_t size() const noexcept { return rankings.size(); }
  /// Throws ValidationError on inconsistent sizes or item universes.
  void validate() const;
};

struct NetworkDataset {
  Graph graph;
  std::vector<int> labels;  ///< +1 or -1 per node
  std::vector<std::string> warnings;

  /// Fraction of +1 labels.
  double prior() const;
  void validate() const;
};

/// `agent_id,item_0,item_1,...` rows listing items best-to-worst, optional header line.
RankingDataset load_rankings(const std::string& path);

/// Edge list `u,v` plus labels `agent_id,label`. Labels in {0, 1} are mapped 0 -> -1 with a warning.
NetworkDataset load_network(const std::string& edge_path, const std::string& label_path);

/// `n_agents` independent Mallows draws around one reference ranking (identity unless
/// `random_reference`, in which case it is drawn uniformly from the seed).
RankingDataset synthetic_mallows_dataset(double eta, std::size_t n_agents, std::size_t n_items, std::uint64_t seed,
                                         bool random_reference = false);

/// Labels from one Glauber configuration after `burn_in` sweeps.
NetworkDataset synthetic_ising_dataset(const IsingModel& model, std::uint64_t seed, std::size_t burn_in = 200);

/// A single Hamiltonian cycle through all n nodes in a seeded random order (max degree 2).
Graph random_cycle_graph(std::size_t n, std::uint64_t seed);

/// Erdos-Renyi G(n, p) with every node's degree capped at `max_degree` (edges exceeding the cap are dropped).
Graph random_graph(std::size_t n, double p, std::uint64_t seed, std::size_t max_degree = static_cast<std::size_t>(-1));

}  // namespace bpp
