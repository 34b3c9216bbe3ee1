#pragma once

// Payment experiments on ranking and network data under truthful, uninformed, and
// unilateral-deviation report settings, plus empirical transitivity statistics.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bpp/datasets.hpp"
#include "bpp/ising.hpp"

namespace bpp {

enum class Setting { Truth, Uninformed, Deviation };

std::string to_string(Setting s);
/// Accepts "truth", "uninformed", "deviation".
Setting parse_setting(const std::string& text);

struct ComparisonOptions {
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  /// Recheck every trial's signal orientation against the not-all-equal identity.
  bool check_orientation = false;
};

/// Per agent, the mean over trials of bpp(s_i, s_j, s_k) where items a, a', a'' and peers j, k are
/// drawn uniformly, s_i = i's comparison of (a, a'), s_j = j's comparison of (a'', a'), and
/// s_k = k's comparison of (a'', a). Items and peers for (agent, trial) depend only on the seed,
/// so settings are matched draw for draw.
std::vector<double> experiment_comparison(const RankingDataset& data, Setting setting,
                                          const ComparisonOptions& options = {});

struct NetworkOptions {
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  /// Pr[report = 1] for uninformed reports; defaults to the label fraction.
  std::optional<double> prior;
};

struct NetworkPayments {
  std::vector<std::size_t> agents;   ///< agents paid
  std::vector<double> payments;      ///< aligned with `agents`
  std::vector<std::size_t> skipped;  ///< no friend or no non-friend
};

/// Fixed labels; a random friend and non-friend per trial.
NetworkPayments experiment_network(const NetworkDataset& data, Setting setting, const NetworkOptions& options = {});

struct IsingExperimentOptions {
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::size_t burn_in = 200;  ///< sweeps before the first trial
  std::size_t thin = 10;      ///< sweeps between trials
  std::optional<double> prior;  ///< uninformed Pr[report = 1]; 1/2 by default
};

/// As experiment_network, but every trial uses a fresh configuration from a Glauber chain on the model.
NetworkPayments experiment_network_model(const IsingModel& model, Setting setting,
                                         const IsingExperimentOptions& options = {});

struct TransitivityStats {
  std::size_t triples = 0;  ///< all unordered triples
  std::size_t ties = 0;     ///< triples with some pairwise proportion exactly 1/2 (excluded)
  std::size_t weak = 0;
  std::size_t strong = 0;
  double weak_fraction = 0.0;    ///< weak / (triples - ties)
  double strong_fraction = 0.0;  ///< strong / (triples - ties)
  double mean_gap = 0.0;         ///< mean of p(a>a'') - max(p(a>a'), p(a'>a'')) over weak triples
};

TransitivityStats empirical_transitivity(const RankingDataset& data);

/// One `agent_id,setting,payment` row per agent (12 significant digits), adding `shift`.
void write_setting_payments(std::ostream& out, const std::vector<std::size_t>& agents,
                            const std::vector<double>& payments, Setting setting, double shift = 0.0,
                            bool header = true);

}  // namespace bpp
