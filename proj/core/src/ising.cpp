#include "bpp/ising.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bpp/errors.hpp"

namespace bpp {

namespace {

// log(e^x + e^y)
double log_add_exp(double x, double y) {
  const double hi = std::max(x, y);
  return hi + std::log1p(std::exp(std::min(x, y) - hi));
}

Config condition_mask(const Condition& condition, std::size_t n, Config& want) {
  Config mask = 0;
  want = 0;
  for (auto [v, s] : condition) {
    if (v >= n) throw ValidationError("conditioned node out of range");
    require_sign(s);
    const Config bit = Config{1} << v;
    if ((mask & bit) && (((want & bit) != 0) != (s > 0))) throw ValidationError("contradictory condition");
    mask |= bit;
    if (s > 0) want |= bit;
  }
  return mask;
}

}  // namespace

IsingModel IsingModel::uniform(Graph graph, double beta, double alpha) {
  IsingModel m;
  m.beta.assign(graph.edge_count(), beta);
  m.alpha.assign(graph.size(), alpha);
  m.graph = std::move(graph);
  m.validate();
  return m;
}

void IsingModel::validate() const {
  if (beta.size() != graph.edge_count()) throw ValidationError("one coupling per edge required");
  if (alpha.size() != graph.size()) throw ValidationError("one bias per node required");
  for (double b : beta)
    if (!std::isfinite(b) || b < 0.0) throw ValidationError("couplings must be finite and nonnegative");
  for (double a : alpha)
    if (!std::isfinite(a) || a < 0.0) throw ValidationError("biases must be finite and nonnegative");
}

double IsingModel::beta_min() const { return beta.empty() ? 0.0 : *std::min_element(beta.begin(), beta.end()); }
double IsingModel::beta_max() const { return beta.empty() ? 0.0 : *std::max_element(beta.begin(), beta.end()); }
bool IsingModel::unbiased() const {
  return std::all_of(alpha.begin(), alpha.end(), [](double a) { return a == 0.0; });
}

double energy(const IsingModel& model, Config c) {
  double h = 0.0;
  const auto& edges = model.graph.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) h += model.beta[e] * spin(c, edges[e].first) * spin(c, edges[e].second);
  for (std::size_t v = 0; v < model.alpha.size(); ++v) h += model.alpha[v] * spin(c, v);
  return h;
}

// ---------------------------------------------------------------- JointTable

JointTable::JointTable(std::size_t n_nodes, std::vector<double> probs) : n_(n_nodes), p_(std::move(probs)) {
  if (n_ > kExactIsingLimit) throw ValidationError("joint table too large");
  if (p_.size() != (std::size_t{1} << n_)) throw ValidationError("joint table needs 2^n entries");
}

double JointTable::event_prob(const Condition& condition) const {
  Config want = 0;
  const Config mask = condition_mask(condition, n_, want);
  double total = 0.0;
  for (Config c = 0; c < p_.size(); ++c)
    if ((c & mask) == want) total += p_[c];
  return total;
}

double JointTable::conditional(std::size_t i, const Condition& condition) const {
  if (i >= n_) throw ValidationError("node out of range");
  Config want = 0;
  const Config mask = condition_mask(condition, n_, want);
  const Config bit = Config{1} << i;
  double up = 0.0, total = 0.0;
  for (Config c = 0; c < p_.size(); ++c) {
    if ((c & mask) != want) continue;
    total += p_[c];
    if (c & bit) up += p_[c];
  }
  if (!(total > 0.0)) throw ValidationError("conditioning event has probability zero");
  return up / total;
}

double JointTable::ratio(std::size_t i, const Condition& condition) const {
  if (i >= n_) throw ValidationError("node out of range");
  Config want = 0;
  const Config mask = condition_mask(condition, n_, want);
  const Config bit = Config{1} << i;
  double up = 0.0, down = 0.0;
  for (Config c = 0; c < p_.size(); ++c) {
    if ((c & mask) != want) continue;
    (c & bit ? up : down) += p_[c];
  }
  if (!(up + down > 0.0)) throw ValidationError("conditioning event has probability zero");
  return up / down;
}

double JointTable::mean(std::size_t i) const {
  double m = 0.0;
  for (Config c = 0; c < p_.size(); ++c) m += spin(c, i) * p_[c];
  return m;
}

double JointTable::correlation(std::size_t i, std::size_t j) const {
  double m = 0.0;
  for (Config c = 0; c < p_.size(); ++c) m += spin(c, i) * spin(c, j) * p_[c];
  return m;
}

TripleDistribution JointTable::triple(std::size_t i, std::size_t j, std::size_t k) const {
  if (i >= n_ || j >= n_ || k >= n_) throw ValidationError("node out of range");
  std::array<double, 8> t{};
  for (Config c = 0; c < p_.size(); ++c) t[TripleDistribution::index(spin(c, i), spin(c, j), spin(c, k))] += p_[c];
  const double total = std::accumulate(t.begin(), t.end(), 0.0);
  for (double& x : t) x /= total;
  return TripleDistribution(t);
}

JointTable exact_joint(const IsingModel& model) {
  model.validate();
  const std::size_t n = model.graph.size();
  if (n > kExactIsingLimit) throw ValidationError("exact_joint supports at most 22 nodes");
  const std::size_t states = std::size_t{1} << n;
  std::vector<double> h(states);
  double log_z = -INFINITY;
  for (Config c = 0; c < states; ++c) {
    h[c] = energy(model, c);
    log_z = log_add_exp(log_z, h[c]);
  }
  for (double& x : h) x = std::exp(x - log_z);
  const double total = std::accumulate(h.begin(), h.end(), 0.0);
  for (double& x : h) x /= total;
  return JointTable(n, std::move(h));
}

// ---------------------------------------------------------------- Glauber

GlauberChain::GlauberChain(const IsingModel& model, std::uint64_t seed)
    : model_(&model), rng_(seed), s_(model.graph.size()), nbr_(model.graph.size()) {
  model.validate();
  const auto& edges = model.graph.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    nbr_[edges[e].first].emplace_back(edges[e].second, model.beta[e]);
    nbr_[edges[e].second].emplace_back(edges[e].first, model.beta[e]);
  }
  for (int& x : s_) x = fair_sign(rng_);
}

void GlauberChain::sweep() {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t v = 0; v < s_.size(); ++v) {
    double field = model_->alpha[v];
    for (auto [w, b] : nbr_[v]) field += b * s_[w];
    const double p_up = 1.0 / (1.0 + std::exp(-2.0 * field));
    s_[v] = unit(rng_) < p_up ? 1 : -1;
  }
}

void GlauberChain::run(std::size_t sweeps) {
  for (std::size_t t = 0; t < sweeps; ++t) sweep();
}

std::vector<std::vector<int>> glauber_sample(const IsingModel& model, std::size_t samples, std::size_t burn_in,
                                             std::uint64_t seed, std::size_t thin) {
  if (samples == 0 || burn_in == 0 || thin == 0) throw ValidationError("samples, burn-in and thinning must be >= 1");
  GlauberChain chain(model, seed);
  chain.run(burn_in);
  std::vector<std::vector<int>> out;
  out.reserve(samples);
  for (std::size_t t = 0; t < samples; ++t) {
    chain.run(thin);
    out.push_back(chain.state());
  }
  return out;
}

// ---------------------------------------------------------------- bounds

Theorem4Check theorem4_condition(double beta_min, double beta_max, std::size_t d) {
  if (!(beta_min >= 0.0) || !(beta_max >= beta_min) || !std::isfinite(beta_max))
    throw ValidationError("need 0 <= beta_min <= beta_max");
  if (d < 1) throw ValidationError("max degree must be at least 1");
  const double dd = static_cast<double>(d);
  Theorem4Check r;
  r.lhs = 2.0 * beta_min / dd;
  r.rhs = log_add_exp(2.0 * (dd + 1.0) * beta_max, 0.0) - log_add_exp(2.0 * beta_max, 2.0 * dd * beta_max);
  r.holds = r.lhs > r.rhs;
  return r;
}

double dary_upper_bound(double beta_max, std::size_t d) {
  if (!(beta_max >= 0.0) || !std::isfinite(beta_max)) throw ValidationError("beta_max must be nonnegative");
  if (d < 1) throw ValidationError("d must be at least 1");
  const double dd = static_cast<double>(d);
  const double log_ratio =
      log_add_exp(2.0 * (dd + 1.0) * beta_max, 0.0) - log_add_exp(2.0 * beta_max, 2.0 * dd * beta_max);
  return std::exp(dd * log_ratio);
}

double tree_ratio(const IsingModel& model, std::size_t root, const std::map<std::size_t, int>& boundary) {
  model.validate();
  const Graph& g = model.graph;
  if (root >= g.size()) throw ValidationError("root out of range");
  if (boundary.count(root)) throw ValidationError("the root cannot carry a boundary condition");
  for (auto [v, s] : boundary) {
    if (v >= g.size()) throw ValidationError("boundary node out of range");
    require_sign(s);
  }

  // Union-find over all edges detects any cycle.
  std::vector<std::size_t> parent(g.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (auto [u, v] : g.edges()) {
    const std::size_t ru = find(u), rv = find(v);
    if (ru == rv) throw ValidationError("tree_ratio needs an acyclic graph");
    parent[ru] = rv;
  }

  // Post-order over the component of root; fixed nodes stop the descent.
  std::vector<std::size_t> order, up(g.size(), g.size());
  std::vector<std::size_t> stack{root};
  up[root] = root;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    order.push_back(v);
    if (boundary.count(v)) continue;
    for (std::size_t w : g.neighbors(v))
      if (w != up[v]) {
        up[w] = v;
        stack.push_back(w);
      }
  }
  std::vector<double> rho(g.size(), 1.0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t v = *it;
    if (boundary.count(v)) continue;
    double r = std::exp(2.0 * model.alpha[v]);
    for (std::size_t w : g.neighbors(v)) {
      if (w == up[v] && v != root) continue;
      const double e2b = std::exp(2.0 * model.beta[g.edge_index(v, w)]);
      const auto fixed = boundary.find(w);
      if (fixed != boundary.end()) r *= fixed->second > 0 ? e2b : 1.0 / e2b;
      else r *= (rho[w] * e2b + 1.0) / (e2b + rho[w]);
    }
    rho[v] = r;
  }
  return rho[root];
}

DominanceReport uniform_dominance_network(const IsingModel& model, const JointTable& table, std::size_t i,
                                          std::size_t j, std::size_t k) {
  const Graph& g = model.graph;
  if (i >= g.size() || j >= g.size() || k >= g.size()) throw ValidationError("node out of range");
  if (!model.unbiased()) throw ValidationError("network dominance check requires zero biases");
  if (!g.has_edge(i, j)) throw ValidationError("j must be a friend of i");
  if (k == i || g.has_edge(i, k)) throw ValidationError("k must be a non-friend of i");
  return is_uniformly_dominant(table.triple(i, j, k));
}

DominanceReport uniform_dominance_network(const IsingModel& model, std::size_t i, std::size_t j, std::size_t k) {
  return uniform_dominance_network(model, exact_joint(model), i, j, k);
}

Graph counterexample_graph(std::size_t n) {
  if (n < 4) throw ValidationError("counterexample graph needs n >= 4");
  std::vector<Edge> e;
  for (std::size_t l = 1; l + 1 < n; ++l) {
    e.emplace_back(0, l);
    e.emplace_back(l, n - 1);
  }
  return Graph(n, e);
}

}  // namespace bpp
