#pragma once

// Ising models on graphs: exact tables for small graphs, Glauber sampling, and the
// correlation bounds behind the network mechanism.

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "bpp/dominance.hpp"
#include "bpp/graph.hpp"
#include "bpp/rng.hpp"

namespace bpp {

/// Pr[s] proportional to exp(sum_e beta_e s_u s_v + sum_v alpha_v s_v).
struct IsingModel {
  Graph graph;
  std::vector<double> beta;   ///< one coupling per entry of graph.edges()
  std::vector<double> alpha;  ///< one bias per node

  static IsingModel uniform(Graph graph, double beta, double alpha = 0.0);

  /// Throws ValidationError on size mismatches or negative / non-finite parameters.
  void validate() const;
  double beta_min() const;
  double beta_max() const;
  bool unbiased() const;
};

/// Largest node count accepted by exact_joint.
inline constexpr std::size_t kExactIsingLimit = 22;

/// Configuration bit v set means s_v = +1.
using Config = std::uint32_t;

inline int spin(Config c, std::size_t v) { return (c >> v) & 1u ? 1 : -1; }

double energy(const IsingModel& model, Config c);

/// Partial assignment of spins.
using Condition = std::vector<std::pair<std::size_t, int>>;

class JointTable {
 public:
  JointTable(std::size_t n_nodes, std::vector<double> probs);

  std::size_t size() const noexcept { return n_; }
  double prob(Config c) const { return p_[c]; }
  const std::vector<double>& probs() const noexcept { return p_; }

  /// Pr[condition holds].
  double event_prob(const Condition& condition) const;
  /// Pr[S_i = 1 | condition]; throws ValidationError on a zero-probability condition.
  double conditional(std::size_t i, const Condition& condition = {}) const;
  /// Pr[S_i = 1 | condition] / Pr[S_i = -1 | condition].
  double ratio(std::size_t i, const Condition& condition = {}) const;
  /// E[S_i].
  double mean(std::size_t i) const;
  /// E[S_i S_j].
  double correlation(std::size_t i, std::size_t j) const;
  TripleDistribution triple(std::size_t i, std::size_t j, std::size_t k) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> p_;
};

/// Exact normalized table (log-sum-exp). Throws ValidationError above kExactIsingLimit nodes.
JointTable exact_joint(const IsingModel& model);

/// Single-site heat-bath chain with systematic sweeps over nodes 0..n-1.
class GlauberChain {
 public:
  /// Starts from a configuration of fair coins drawn from `seed`.
  GlauberChain(const IsingModel& model, std::uint64_t seed);

  void sweep();
  void run(std::size_t sweeps);
  const std::vector<int>& state() const noexcept { return s_; }

 private:
  const IsingModel* model_;
  Rng rng_;
  std::vector<int> s_;
  std::vector<std::vector<std::pair<std::size_t, double>>> nbr_;  // (neighbor, coupling)
};

/// `samples` configurations taken every `thin` sweeps after `burn_in` sweeps.
std::vector<std::vector<int>> glauber_sample(const IsingModel& model, std::size_t samples, std::size_t burn_in,
                                             std::uint64_t seed, std::size_t thin = 1);

struct Theorem4Check {
  bool holds = false;
  double lhs = 0.0;  ///< 2 beta_min / d
  double rhs = 0.0;  ///< ln((e^{2(d+1)b} + 1) / (e^{2b} + e^{2db})) at b = beta_max
};

Theorem4Check theorem4_condition(double beta_min, double beta_max, std::size_t d);

/// ((e^{2(d+1)b} + 1) / (e^{2b} + e^{2db}))^d.
double dary_upper_bound(double beta_max, std::size_t d);

/// Pr[S_root = 1 | boundary] / Pr[S_root = -1 | boundary] on an acyclic graph by the child-ratio
/// recursion. Fixed leaves contribute e^{+-2 beta}. Throws ValidationError on a cycle or a fixed root.
double tree_ratio(const IsingModel& model, std::size_t root, const std::map<std::size_t, int>& boundary = {});

/// Dominance of S_j (friend) over S_k (non-friend) for S_i, from the exact table. Requires alpha = 0.
DominanceReport uniform_dominance_network(const IsingModel& model, std::size_t i, std::size_t j, std::size_t k);
DominanceReport uniform_dominance_network(const IsingModel& model, const JointTable& table, std::size_t i,
                                          std::size_t j, std::size_t k);

/// v_0 and v_{n-1} joined through n-2 common neighbors, with no direct edge.
Graph counterexample_graph(std::size_t n);

}  // namespace bpp
