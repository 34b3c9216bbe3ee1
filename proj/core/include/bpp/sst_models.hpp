#pragma once

// Bayesian strongly-stochastically-transitive (SST) comparison models.
//
// A model is a prior over a latent state theta together with, for every theta,
// a pairwise comparison law Pr[T_theta(a, a') = 1]. Comparisons are drawn
// independently given theta. Four families are provided: parametric link
// models (BTL, Thurstone, tabulated), Mallows, noisy sorting, and arbitrary
// finite mixtures of pairwise matrices.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "bpp/rng.hpp"

namespace bpp {

using ItemId = std::size_t;

/// Items above this count are rejected by model validation.
inline constexpr std::size_t kMaxItems = 10'000;

/// Largest item count for which the ranking prior is enumerated exactly (7! = 5040).
inline constexpr std::size_t kExactRankingLimit = 7;

/// Q(a, a') = E[T_theta(a, a') | theta] for a fixed theta. Antisymmetric, entries in [-1, 1],
/// diagonal unused and held at zero. Dense row-major storage.
class PairwiseMatrix {
 public:
  PairwiseMatrix() = default;
  explicit PairwiseMatrix(std::size_t n_items);

  /// Build from a function giving Q(a, b) for a < b; the lower triangle is mirrored.
  static PairwiseMatrix from_upper(std::size_t n_items, const std::function<double(ItemId, ItemId)>& q_upper);

  std::size_t size() const noexcept { return n_; }
  double q(ItemId a, ItemId b) const { return q_[a * n_ + b]; }

  /// Pr[T(a, b) = 1] = (1 + Q(a, b)) / 2; the a > b half is the exact complement.
  double prob(ItemId a, ItemId b) const;

  /// Sets Q(a, b) = value and Q(b, a) = -value.
  void set(ItemId a, ItemId b, double value);

  /// Throws ValidationError unless antisymmetric with entries in [-1, 1].
  void validate() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> q_;
};

/// Strictly increasing F with F(t) = 1 - F(-t).
class LinkFunction {
 public:
  enum class Kind { Btl, Thurstone, Custom };

  static LinkFunction btl();
  static LinkFunction thurstone();
  /// Tabulated map on a grid symmetric about zero, linearly interpolated and
  /// clamped to the end values outside the grid.
  static LinkFunction custom(std::vector<double> t, std::vector<double> f);

  Kind kind() const noexcept { return kind_; }
  double operator()(double t) const;

 private:
  Kind kind_ = Kind::Btl;
  std::vector<double> t_;
  std::vector<double> f_;
};

/// Gaussian CDF.
double normal_cdf(double x);

/// Verifies F(t) + F(-t) = 1 (to 1e-10) and strict monotonicity on a symmetric grid.
bool check_link_symmetry(const LinkFunction& link, double t_max = 8.0, std::size_t points = 801);

struct ScorePrior {
  enum class Kind { Normal, Uniform };
  Kind kind = Kind::Normal;
  double a = 0.0;  ///< mean, or lower bound
  double b = 1.0;  ///< standard deviation, or upper bound
};

struct ParametricModel {
  std::size_t n_items = 0;
  LinkFunction link = LinkFunction::btl();
  ScorePrior prior{};
};

struct MallowsModel {
  double eta = 1.0;
  std::size_t n_items = 0;
};

/// Pr[T(a, a') = 1] = 1/2 + gamma whenever a is above a' in the reference ranking.
struct NoisySortModel {
  double gamma = 0.25;
  std::size_t n_items = 0;
};

struct FiniteMixtureModel {
  std::vector<PairwiseMatrix> thetas;
  std::vector<double> weights;
};

using ComparisonModel = std::variant<ParametricModel, MallowsModel, NoisySortModel, FiniteMixtureModel>;

/// A ranking stored as item -> position, position 0 being the most preferred item.
class Ranking {
 public:
  Ranking() = default;
  /// Throws ValidationError unless `rank` is a permutation of 0..n-1.
  explicit Ranking(std::vector<std::size_t> rank);
  static Ranking identity(std::size_t n);
  /// From a best-to-worst list of items.
  static Ranking from_order(const std::vector<ItemId>& order);

  std::size_t size() const noexcept { return rank_.size(); }
  std::size_t position(ItemId a) const { return rank_[a]; }
  bool prefers(ItemId a, ItemId b) const { return rank_[a] < rank_[b]; }
  std::vector<ItemId> order() const;
  const std::vector<std::size_t>& positions() const noexcept { return rank_; }

  friend bool operator==(const Ranking&, const Ranking&) = default;

 private:
  std::vector<std::size_t> rank_;
};

struct ScoreVector {
  std::vector<double> scores;
};

struct MixtureIndex {
  std::size_t index = 0;
};

using Theta = std::variant<ScoreVector, Ranking, MixtureIndex>;

void validate(const ComparisonModel& model);
std::size_t item_count(const ComparisonModel& model);

Theta sample_theta(const ComparisonModel& model, Rng& rng);

/// Pr[T_theta(a, b) = 1]. Evaluated directly for a < b; the other orientation is the complement.
double pairwise_prob(const ComparisonModel& model, const Theta& theta, ItemId a, ItemId b);

PairwiseMatrix pairwise_matrix(const ComparisonModel& model, const Theta& theta);

/// One independent ±1 draw of T_theta(a, b).
int sample_comparison(const ComparisonModel& model, const Theta& theta, ItemId a, ItemId b, Rng& rng);

/// h(x) = x / (1 - exp(-eta x)).
double h_eta(double eta, double x);

/// Probability that an item `rank_gap` places above another in the Mallows reference
/// is also placed above it in a draw: h(g + 1) - h(g).
double mallows_pairwise_marginal(double eta, std::size_t rank_gap);

/// Number of item pairs ordered differently by the two rankings.
std::size_t kendall_tau(const Ranking& x, const Ranking& y);

/// Exact Mallows draw (repeated insertion): Pr(phi) proportional to exp(-eta * kendall_tau(reference, phi)).
Ranking sample_mallows_ranking(double eta, const Ranking& reference, Rng& rng);

using ItemTriple = std::array<ItemId, 3>;

/// First (a, a', a'') with Pr[a>a'] > 1/2, Pr[a'>a''] > 1/2 and Pr[a>a''] <= max of the two.
std::optional<ItemTriple> check_sst(const PairwiseMatrix& q);

/// As check_sst, but only requires Pr[a>a''] > 1/2.
std::optional<ItemTriple> check_weak_st(const PairwiseMatrix& q);

struct AprioriReport {
  bool pass = true;
  bool exact = true;
  std::optional<std::pair<ItemId, ItemId>> pair;  ///< offending pair on failure
  double residual = 0.0;                          ///< |E_theta Q(a, b)|, or the zero Q on ex-post failure
  std::size_t samples = 0;                        ///< Monte Carlo sample count (0 in exact mode)
};

/// Exact when the theta support is finite and enumerable; otherwise Monte Carlo with
/// `mc_samples` draws and a 3-sigma band.
AprioriReport check_apriori_similar(const ComparisonModel& model, std::size_t mc_samples = 20'000,
                                    std::uint64_t seed = 0);

/// First x in 1..x_max where the gap h(x+1) - h(x) is not above 1/2 or fails to increase.
std::optional<int> h_eta_claim_check(double eta, int x_max);

struct WeightedMatrix {
  double weight = 0.0;
  PairwiseMatrix q;
};

bool has_finite_support(const ComparisonModel& model);

/// Every theta with its prior weight. Throws ValidationError for parametric models
/// and ranking models above kExactRankingLimit items.
std::vector<WeightedMatrix> finite_support(const ComparisonModel& model);

/// Calls `fn` with every permutation of 0..n-1 in lexicographic order.
void for_each_permutation(std::size_t n, const std::function<void(const std::vector<std::size_t>&)>& fn);

/// Uniform prior over all reference rankings of n items, where an item `g` places above
/// another wins with probability `prob_for_gap(g)`.
FiniteMixtureModel ranking_mixture(std::size_t n_items, const std::function<double(std::size_t)>& prob_for_gap);

/// Three items, uniform reference ranking; adjacent pairs won with 0.9, the extreme pair with 0.6.
/// Weakly but not strongly transitive.
FiniteMixtureModel weak_st_counterexample();

}  // namespace bpp
