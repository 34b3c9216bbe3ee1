#include "bpp/sst_models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "bpp/errors.hpp"

namespace bpp {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_distinct(ItemId a, ItemId b, std::size_t n) {
  if (a == b) throw ValidationError("pairwise comparison of an item with itself");
  if (a >= n || b >= n) throw ValidationError("item index out of range");
}

std::size_t factorial(std::size_t n) {
  std::size_t f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return f;
}

// Pr[a above b] under a ranking-indexed comparison law.
double ranked_prob(const Ranking& ref, ItemId a, ItemId b, const std::function<double(std::size_t)>& gap_prob) {
  const std::size_t pa = ref.position(a);
  const std::size_t pb = ref.position(b);
  if (pa < pb) return gap_prob(pb - pa);
  return 1.0 - gap_prob(pa - pb);
}

double mallows_or_noisy_gap(const ComparisonModel& model, std::size_t gap) {
  if (const auto* m = std::get_if<MallowsModel>(&model)) return mallows_pairwise_marginal(m->eta, gap);
  return 0.5 + std::get<NoisySortModel>(model).gamma;
}

Ranking uniform_ranking(std::size_t n, Rng& rng) {
  std::vector<std::size_t> rank(n);
  std::iota(rank.begin(), rank.end(), std::size_t{0});
  std::shuffle(rank.begin(), rank.end(), rng);
  return Ranking(std::move(rank));
}

}  // namespace

// ---------------------------------------------------------------- PairwiseMatrix

PairwiseMatrix::PairwiseMatrix(std::size_t n_items) : n_(n_items), q_(n_items * n_items, 0.0) {}

PairwiseMatrix PairwiseMatrix::from_upper(std::size_t n_items, const std::function<double(ItemId, ItemId)>& q_upper) {
  PairwiseMatrix m(n_items);
  for (ItemId a = 0; a < n_items; ++a)
    for (ItemId b = a + 1; b < n_items; ++b) m.set(a, b, q_upper(a, b));
  return m;
}

double PairwiseMatrix::prob(ItemId a, ItemId b) const {
  if (a < b) return 0.5 * (1.0 + q(a, b));
  return 1.0 - 0.5 * (1.0 + q(b, a));
}

void PairwiseMatrix::set(ItemId a, ItemId b, double value) {
  if (a == b) throw ValidationError("pairwise matrix diagonal is unused");
  q_[a * n_ + b] = value;
  q_[b * n_ + a] = -value;
}

void PairwiseMatrix::validate() const {
  for (ItemId a = 0; a < n_; ++a) {
    for (ItemId b = 0; b < n_; ++b) {
      const double v = q(a, b);
      if (!std::isfinite(v) || v < -1.0 || v > 1.0) throw ValidationError("pairwise entry outside [-1, 1]");
      if (a != b && v != -q(b, a)) throw ValidationError("pairwise matrix is not antisymmetric");
    }
  }
}

// ---------------------------------------------------------------- LinkFunction

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

LinkFunction LinkFunction::btl() {
  LinkFunction f;
  f.kind_ = Kind::Btl;
  return f;
}

LinkFunction LinkFunction::thurstone() {
  LinkFunction f;
  f.kind_ = Kind::Thurstone;
  return f;
}

LinkFunction LinkFunction::custom(std::vector<double> t, std::vector<double> f) {
  if (t.size() != f.size() || t.size() < 2) throw ValidationError("custom link needs matching grids of size >= 2");
  const std::size_t n = t.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(t[i] < t[i + 1])) throw ValidationError("custom link grid must be strictly increasing");
    if (!(f[i] < f[i + 1])) throw ValidationError("custom link values must be strictly increasing");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(t[i] + t[n - 1 - i]) > 1e-12) throw ValidationError("custom link grid must be symmetric about 0");
    if (std::abs(f[i] + f[n - 1 - i] - 1.0) > 1e-10) throw ValidationError("custom link violates F(t) = 1 - F(-t)");
    if (f[i] < 0.0 || f[i] > 1.0) throw ValidationError("custom link values must lie in [0, 1]");
  }
  LinkFunction link;
  link.kind_ = Kind::Custom;
  link.t_ = std::move(t);
  link.f_ = std::move(f);
  return link;
}

double LinkFunction::operator()(double t) const {
  switch (kind_) {
    case Kind::Btl:
      return t >= 0 ? 1.0 / (1.0 + std::exp(-t)) : std::exp(t) / (1.0 + std::exp(t));
    case Kind::Thurstone:
      return normal_cdf(t);
    case Kind::Custom: {
      if (t <= t_.front()) return f_.front();
      if (t >= t_.back()) return f_.back();
      const auto it = std::upper_bound(t_.begin(), t_.end(), t);
      const std::size_t hi = static_cast<std::size_t>(it - t_.begin());
      const std::size_t lo = hi - 1;
      const double w = (t - t_[lo]) / (t_[hi] - t_[lo]);
      return f_[lo] + w * (f_[hi] - f_[lo]);
    }
  }
  return 0.5;
}

bool check_link_symmetry(const LinkFunction& link, double t_max, std::size_t points) {
  if (points < 3) return true;
  double prev = -1.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double t = -t_max + 2.0 * t_max * static_cast<double>(i) / static_cast<double>(points - 1);
    const double v = link(t);
    if (std::abs(v + link(-t) - 1.0) > 1e-10) return false;
    if (i > 0 && !(v > prev) && link.kind() == LinkFunction::Kind::Custom) return false;
    prev = v;
  }
  return true;
}

// ---------------------------------------------------------------- Ranking

Ranking::Ranking(std::vector<std::size_t> rank) : rank_(std::move(rank)) {
  std::vector<bool> seen(rank_.size(), false);
  for (std::size_t r : rank_) {
    if (r >= rank_.size() || seen[r]) throw ValidationError("ranking is not a permutation");
    seen[r] = true;
  }
}

Ranking Ranking::identity(std::size_t n) {
  std::vector<std::size_t> rank(n);
  std::iota(rank.begin(), rank.end(), std::size_t{0});
  return Ranking(std::move(rank));
}

Ranking Ranking::from_order(const std::vector<ItemId>& order) {
  std::vector<std::size_t> rank(order.size(), order.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    if (order[pos] >= order.size() || rank[order[pos]] != order.size())
      throw ValidationError("ranking is not a permutation");
    rank[order[pos]] = pos;
  }
  return Ranking(std::move(rank));
}

std::vector<ItemId> Ranking::order() const {
  std::vector<ItemId> out(rank_.size());
  for (ItemId a = 0; a < rank_.size(); ++a) out[rank_[a]] = a;
  return out;
}

std::size_t kendall_tau(const Ranking& x, const Ranking& y) {
  if (x.size() != y.size()) throw ValidationError("kendall_tau: rankings differ in size");
  std::size_t d = 0;
  for (ItemId a = 0; a < x.size(); ++a)
    for (ItemId b = a + 1; b < x.size(); ++b)
      if (x.prefers(a, b) != y.prefers(a, b)) ++d;
  return d;
}

// ---------------------------------------------------------------- models

void validate(const ComparisonModel& model) {
  std::visit(Overloaded{
                 [](const ParametricModel& m) {
                   if (m.n_items < 2 || m.n_items > kMaxItems) throw ValidationError("n_items out of range");
                   if (m.prior.kind == ScorePrior::Kind::Normal && !(m.prior.b > 0.0))
                     throw ValidationError("normal score prior needs a positive standard deviation");
                   if (m.prior.kind == ScorePrior::Kind::Uniform && !(m.prior.b > m.prior.a))
                     throw ValidationError("uniform score prior needs lower < upper");
                 },
                 [](const MallowsModel& m) {
                   if (!(m.eta > 0.0) || !std::isfinite(m.eta)) throw ValidationError("Mallows eta must be positive");
                   if (m.n_items < 2 || m.n_items > kMaxItems) throw ValidationError("n_items out of range");
                 },
                 [](const NoisySortModel& m) {
                   if (!(m.gamma > 0.0 && m.gamma < 0.5)) throw ValidationError("noisy-sort gamma must lie in (0, 1/2)");
                   if (m.n_items < 2 || m.n_items > kMaxItems) throw ValidationError("n_items out of range");
                 },
                 [](const FiniteMixtureModel& m) {
                   if (m.thetas.empty() || m.thetas.size() != m.weights.size())
                     throw ValidationError("mixture needs one weight per component");
                   double total = 0.0;
                   for (double w : m.weights) {
                     if (!(w >= 0.0)) throw ValidationError("mixture weights must be nonnegative");
                     total += w;
                   }
                   if (std::abs(total - 1.0) > 1e-12) throw ValidationError("mixture weights must sum to 1");
                   for (const auto& q : m.thetas) {
                     if (q.size() != m.thetas.front().size()) throw ValidationError("mixture components differ in size");
                     q.validate();
                   }
                 },
             },
             model);
}

std::size_t item_count(const ComparisonModel& model) {
  return std::visit(Overloaded{
                        [](const ParametricModel& m) { return m.n_items; },
                        [](const MallowsModel& m) { return m.n_items; },
                        [](const NoisySortModel& m) { return m.n_items; },
                        [](const FiniteMixtureModel& m) { return m.thetas.empty() ? 0 : m.thetas.front().size(); },
                    },
                    model);
}

Theta sample_theta(const ComparisonModel& model, Rng& rng) {
  return std::visit(Overloaded{
                        [&](const ParametricModel& m) -> Theta {
                          std::vector<double> s(m.n_items);
                          std::vector<double> sorted;
                          do {
                            if (m.prior.kind == ScorePrior::Kind::Normal) {
                              std::normal_distribution<double> dist(m.prior.a, m.prior.b);
                              for (double& x : s) x = dist(rng);
                            } else {
                              std::uniform_real_distribution<double> dist(m.prior.a, m.prior.b);
                              for (double& x : s) x = dist(rng);
                            }
                            sorted = s;
                            std::sort(sorted.begin(), sorted.end());
                          } while (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end());
                          return ScoreVector{std::move(s)};
                        },
                        [&](const MallowsModel& m) -> Theta { return uniform_ranking(m.n_items, rng); },
                        [&](const NoisySortModel& m) -> Theta { return uniform_ranking(m.n_items, rng); },
                        [&](const FiniteMixtureModel& m) -> Theta {
                          std::discrete_distribution<std::size_t> pick(m.weights.begin(), m.weights.end());
                          return MixtureIndex{pick(rng)};
                        },
                    },
                    model);
}

double pairwise_prob(const ComparisonModel& model, const Theta& theta, ItemId a, ItemId b) {
  require_distinct(a, b, item_count(model));
  if (a > b) return 1.0 - pairwise_prob(model, theta, b, a);

  if (const auto* m = std::get_if<ParametricModel>(&model)) {
    const auto& s = std::get<ScoreVector>(theta).scores;
    return m->link(s.at(a) - s.at(b));
  }
  if (const auto* m = std::get_if<FiniteMixtureModel>(&model)) {
    return m->thetas.at(std::get<MixtureIndex>(theta).index).prob(a, b);
  }
  const auto& ref = std::get<Ranking>(theta);
  return ranked_prob(ref, a, b, [&](std::size_t g) { return mallows_or_noisy_gap(model, g); });
}

PairwiseMatrix pairwise_matrix(const ComparisonModel& model, const Theta& theta) {
  if (const auto* m = std::get_if<FiniteMixtureModel>(&model)) return m->thetas.at(std::get<MixtureIndex>(theta).index);
  return PairwiseMatrix::from_upper(item_count(model),
                                    [&](ItemId a, ItemId b) { return 2.0 * pairwise_prob(model, theta, a, b) - 1.0; });
}

int sample_comparison(const ComparisonModel& model, const Theta& theta, ItemId a, ItemId b, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return u(rng) < pairwise_prob(model, theta, a, b) ? 1 : -1;
}

// ---------------------------------------------------------------- Mallows

double h_eta(double eta, double x) {
  if (!(eta > 0.0)) throw ValidationError("h_eta requires eta > 0");
  return x / -std::expm1(-eta * x);
}

double mallows_pairwise_marginal(double eta, std::size_t rank_gap) {
  if (rank_gap < 1) throw ValidationError("rank gap must be at least 1");
  if (!(eta > 0.0)) throw ValidationError("Mallows eta must be positive");
  const double g = static_cast<double>(rank_gap);
  return h_eta(eta, g + 1.0) - h_eta(eta, g);
}

Ranking sample_mallows_ranking(double eta, const Ranking& reference, Rng& rng) {
  if (!(eta > 0.0)) throw ValidationError("Mallows eta must be positive");
  const std::vector<ItemId> ref_order = reference.order();
  const double q = std::exp(-eta);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Insert the i-th reference item into a list of i items; landing `t` slots above the
  // bottom creates exactly t new inversions, so t ~ truncated geometric(q) on 0..i.
  std::vector<ItemId> order;
  order.reserve(ref_order.size());
  for (std::size_t i = 0; i < ref_order.size(); ++i) {
    std::size_t t = 0;
    if (i > 0 && q > 0.0) {
      const double mass = -std::expm1(static_cast<double>(i + 1) * std::log(q));  // 1 - q^{i+1}
      const double u = unit(rng);
      const double x = std::log1p(-u * mass) / std::log(q);
      t = std::min<std::size_t>(i, static_cast<std::size_t>(std::floor(std::max(0.0, x))));
    }
    order.insert(order.begin() + static_cast<std::ptrdiff_t>(i - t), ref_order[i]);
  }
  return Ranking::from_order(order);
}

// ---------------------------------------------------------------- transitivity

std::optional<ItemTriple> check_sst(const PairwiseMatrix& q) {
  const std::size_t n = q.size();
  for (ItemId a = 0; a < n; ++a)
    for (ItemId b = 0; b < n; ++b) {
      if (b == a || !(q.prob(a, b) > 0.5)) continue;
      for (ItemId c = 0; c < n; ++c) {
        if (c == a || c == b || !(q.prob(b, c) > 0.5)) continue;
        if (!(q.prob(a, c) > std::max(q.prob(a, b), q.prob(b, c)))) return ItemTriple{a, b, c};
      }
    }
  return std::nullopt;
}

std::optional<ItemTriple> check_weak_st(const PairwiseMatrix& q) {
  const std::size_t n = q.size();
  for (ItemId a = 0; a < n; ++a)
    for (ItemId b = 0; b < n; ++b) {
      if (b == a || !(q.prob(a, b) > 0.5)) continue;
      for (ItemId c = 0; c < n; ++c) {
        if (c == a || c == b || !(q.prob(b, c) > 0.5)) continue;
        if (!(q.prob(a, c) > 0.5)) return ItemTriple{a, b, c};
      }
    }
  return std::nullopt;
}

// ---------------------------------------------------------------- finite support

void for_each_permutation(std::size_t n, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  do {
    fn(p);
  } while (std::next_permutation(p.begin(), p.end()));
}

bool has_finite_support(const ComparisonModel& model) {
  if (std::holds_alternative<FiniteMixtureModel>(model)) return true;
  if (std::holds_alternative<ParametricModel>(model)) return false;
  return item_count(model) <= kExactRankingLimit;
}

std::vector<WeightedMatrix> finite_support(const ComparisonModel& model) {
  validate(model);
  if (const auto* m = std::get_if<FiniteMixtureModel>(&model)) {
    std::vector<WeightedMatrix> out;
    for (std::size_t k = 0; k < m->thetas.size(); ++k) out.push_back({m->weights[k], m->thetas[k]});
    return out;
  }
  if (!has_finite_support(model))
    throw ValidationError("theta support is not enumerable for this model; use Monte Carlo mode");

  const std::size_t n = item_count(model);
  std::vector<double> gap_prob(n, 0.5);
  for (std::size_t g = 1; g < n; ++g) gap_prob[g] = mallows_or_noisy_gap(model, g);

  std::vector<WeightedMatrix> out;
  const double w = 1.0 / static_cast<double>(factorial(n));
  for_each_permutation(n, [&](const std::vector<std::size_t>& rank) {
    const Ranking ref(rank);
    out.push_back({w, PairwiseMatrix::from_upper(n, [&](ItemId a, ItemId b) {
                     return 2.0 * ranked_prob(ref, a, b, [&](std::size_t g) { return gap_prob[g]; }) - 1.0;
                   })});
  });
  return out;
}

FiniteMixtureModel ranking_mixture(std::size_t n_items, const std::function<double(std::size_t)>& prob_for_gap) {
  if (n_items < 2 || n_items > kExactRankingLimit) throw ValidationError("ranking_mixture: n_items out of range");
  FiniteMixtureModel m;
  const double w = 1.0 / static_cast<double>(factorial(n_items));
  for_each_permutation(n_items, [&](const std::vector<std::size_t>& rank) {
    const Ranking ref(rank);
    m.thetas.push_back(PairwiseMatrix::from_upper(
        n_items, [&](ItemId a, ItemId b) { return 2.0 * ranked_prob(ref, a, b, prob_for_gap) - 1.0; }));
    m.weights.push_back(w);
  });
  // Renormalize so the weights sum to 1 within rounding of a single division.
  const double total = std::accumulate(m.weights.begin(), m.weights.end(), 0.0);
  for (double& x : m.weights) x /= total;
  return m;
}

FiniteMixtureModel weak_st_counterexample() {
  return ranking_mixture(3, [](std::size_t gap) { return gap == 1 ? 0.9 : 0.6; });
}

// ---------------------------------------------------------------- a-priori similarity

AprioriReport check_apriori_similar(const ComparisonModel& model, std::size_t mc_samples, std::uint64_t seed) {
  validate(model);
  const std::size_t n = item_count(model);
  AprioriReport report;

  if (has_finite_support(model)) {
    const auto support = finite_support(model);
    for (ItemId a = 0; a < n; ++a)
      for (ItemId b = a + 1; b < n; ++b) {
        double mean = 0.0;
        for (const auto& [w, q] : support) {
          if (w > 0.0 && q.q(a, b) == 0.0) {
            report.pass = false;
            report.pair = {a, b};
            report.residual = 0.0;
            return report;
          }
          mean += w * q.q(a, b);
        }
        if (std::abs(mean) > 1e-10 && std::abs(mean) > std::abs(report.residual)) {
          report.pass = false;
          report.pair = {a, b};
          report.residual = mean;
        }
      }
    if (report.pass) report.residual = 0.0;
    else report.residual = std::abs(report.residual);
    return report;
  }

  report.exact = false;
  report.samples = mc_samples;
  if (mc_samples < 2) throw ValidationError("Monte Carlo a-priori check needs at least 2 samples");
  const std::size_t pairs = n * (n - 1) / 2;
  std::vector<double> sum(pairs, 0.0);
  std::vector<double> sum_sq(pairs, 0.0);
  Rng rng(seed);
  for (std::size_t s = 0; s < mc_samples; ++s) {
    const Theta theta = sample_theta(model, rng);
    std::size_t idx = 0;
    for (ItemId a = 0; a < n; ++a)
      for (ItemId b = a + 1; b < n; ++b, ++idx) {
        const double q = 2.0 * pairwise_prob(model, theta, a, b) - 1.0;
        if (q == 0.0) {
          report.pass = false;
          report.pair = {a, b};
          return report;
        }
        sum[idx] += q;
        sum_sq[idx] += q * q;
      }
  }
  const double count = static_cast<double>(mc_samples);
  double worst = 0.0;
  std::size_t idx = 0;
  for (ItemId a = 0; a < n; ++a)
    for (ItemId b = a + 1; b < n; ++b, ++idx) {
      const double mean = sum[idx] / count;
      const double var = std::max(0.0, sum_sq[idx] / count - mean * mean) * count / (count - 1.0);
      const double se = std::sqrt(var / count);
      const double z = se > 0.0 ? std::abs(mean) / se : (mean == 0.0 ? 0.0 : INFINITY);
      if (z > 3.0 && z > worst) {
        worst = z;
        report.pass = false;
        report.pair = {a, b};
        report.residual = std::abs(mean);
      }
    }
  return report;
}

// ---------------------------------------------------------------- h_eta claim

std::optional<int> h_eta_claim_check(double eta, int x_max) {
  if (!(eta > 0.0)) throw ValidationError("h_eta claim requires eta > 0");
  if (x_max < 2) throw ValidationError("h_eta claim requires x_max >= 2");
  // gap(x) = 1 - c(x) with c(x) = g(x) - g(x+1), g(x) = x / (e^{eta x} - 1); compared via log c
  // so that gaps within rounding of 1 stay distinguishable.
  auto log_g = [eta](double x) { return std::log(x) - eta * x - std::log1p(-std::exp(-eta * x)); };
  auto log_c = [&](double x) {
    const double lg = log_g(x);
    return lg + std::log1p(-std::exp(log_g(x + 1.0) - lg));
  };
  double prev = 0.0;
  for (int x = 1; x <= x_max; ++x) {
    const double lc = log_c(static_cast<double>(x));
    if (!(lc < std::log(0.5))) return x;
    if (x > 1 && !(lc < prev)) return x;
    prev = lc;
  }
  return std::nullopt;
}

}  // namespace bpp
