#include "bpp/dominance.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "bpp/errors.hpp"

namespace bpp {

void require_sign(int s) {
  if (s != 1 && s != -1) throw ValidationError("signal must be -1 or 1, got " + std::to_string(s));
}

TripleDistribution::TripleDistribution(const std::array<double, 8>& p) : p_(p) {
  double total = 0.0;
  for (double x : p_) {
    if (!std::isfinite(x) || x < 0.0) throw ValidationError("triple distribution has a negative or non-finite cell");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-12) throw ValidationError("triple distribution does not sum to 1");
}

std::size_t TripleDistribution::index(int si, int sj, int sk) {
  require_sign(si);
  require_sign(sj);
  require_sign(sk);
  return (si > 0 ? 4u : 0u) | (sj > 0 ? 2u : 0u) | (sk > 0 ? 1u : 0u);
}

TripleDistribution TripleDistribution::parse(const std::string& text) {
  std::array<double, 8> p{};
  std::stringstream ss(text);
  std::string field;
  std::size_t count = 0;
  while (std::getline(ss, field, ',')) {
    if (count == 8) throw ValidationError("expected 8 comma-separated probabilities, got more");
    try {
      std::size_t used = 0;
      p[count] = std::stod(field, &used);
      if (field.find_first_not_of(" \t\r\n", used) != std::string::npos) throw std::invalid_argument(field);
    } catch (const std::logic_error&) {
      throw ValidationError("not a number: '" + field + "'");
    }
    ++count;
  }
  if (count != 8) throw ValidationError("expected 8 comma-separated probabilities, got " + std::to_string(count));
  return TripleDistribution(p);
}

double TripleDistribution::marginal_i(int si) const {
  double m = 0.0;
  for (int sj : {-1, 1})
    for (int sk : {-1, 1}) m += at(si, sj, sk);
  return m;
}

double TripleDistribution::cond_j(int si, int sj) const {
  const double m = marginal_i(si);
  if (!(m > 0.0)) throw ValidationError("conditioning on a signal of S_i with probability zero");
  return (at(si, sj, -1) + at(si, sj, 1)) / m;
}

double TripleDistribution::cond_k(int si, int sk) const {
  const double m = marginal_i(si);
  if (!(m > 0.0)) throw ValidationError("conditioning on a signal of S_i with probability zero");
  return (at(si, -1, sk) + at(si, 1, sk)) / m;
}

TripleDistribution TripleDistribution::flipped() const {
  std::array<double, 8> q{};
  for (std::size_t c = 0; c < 8; ++c) q[7 - c] = p_[c];
  return TripleDistribution(q);
}

std::string TripleDistribution::to_string() const {
  std::ostringstream os;
  os << std::setprecision(12);
  for (std::size_t c = 0; c < 8; ++c) os << (c ? "," : "") << p_[c];
  return os.str();
}

DominanceReport is_uniformly_dominant(const TripleDistribution& p) {
  DominanceReport r;
  r.delta_plus = p.cond_j(1, 1) - p.cond_k(1, 1);
  r.delta_minus = p.cond_j(-1, -1) - p.cond_k(-1, -1);
  r.dominant = r.delta_plus > kDominanceTolerance && r.delta_minus > kDominanceTolerance;
  return r;
}

namespace {

void require_distinct_triple(const ComparisonModel& model, ItemId a, ItemId a1, ItemId a2) {
  const std::size_t n = item_count(model);
  if (a >= n || a1 >= n || a2 >= n) throw ValidationError("item index out of range");
  if (a == a1 || a == a2 || a1 == a2) throw ValidationError("triple items must be distinct");
}

}  // namespace

TripleDistribution triple_from_model(const ComparisonModel& model, ItemId a, ItemId a1, ItemId a2) {
  require_distinct_triple(model, a, a1, a2);
  if (!has_finite_support(model))
    throw ValidationError("exact triple needs a finite-support model; use the sampled variant");
  std::array<double, 8> p{};
  for (const auto& [w, q] : finite_support(model)) {
    const double pi = q.prob(a, a1);
    const double pj = q.prob(a2, a1);
    const double pk = q.prob(a2, a);
    for (int si : {-1, 1})
      for (int sj : {-1, 1})
        for (int sk : {-1, 1})
          p[TripleDistribution::index(si, sj, sk)] +=
              w * (si > 0 ? pi : 1.0 - pi) * (sj > 0 ? pj : 1.0 - pj) * (sk > 0 ? pk : 1.0 - pk);
  }
  double total = 0.0;
  for (double x : p) total += x;
  for (double& x : p) x /= total;
  return TripleDistribution(p);
}

SampledTriple triple_from_model_sampled(const ComparisonModel& model, ItemId a, ItemId a1, ItemId a2,
                                        std::size_t samples, std::uint64_t seed) {
  require_distinct_triple(model, a, a1, a2);
  if (samples == 0) throw ValidationError("sample budget must be positive");
  validate(model);
  Rng rng(seed);
  std::array<double, 8> counts{};
  for (std::size_t s = 0; s < samples; ++s) {
    const Theta theta = sample_theta(model, rng);
    const int si = sample_comparison(model, theta, a, a1, rng);
    const int sj = sample_comparison(model, theta, a2, a1, rng);
    const int sk = sample_comparison(model, theta, a2, a, rng);
    counts[TripleDistribution::index(si, sj, sk)] += 1.0;
  }
  std::array<double, 8> p{};
  for (std::size_t c = 0; c < 8; ++c) p[c] = counts[c] / static_cast<double>(samples);

  SampledTriple out;
  out.samples = samples;
  // Renormalize against rounding in the divisions.
  double total = 0.0;
  for (double x : p) total += x;
  for (double& x : p) x /= total;
  out.p = TripleDistribution(p);

  // Given S_i = s, D = 1[S_j = s] - 1[S_k = s] has mean delta_s and E[D^2] = Pr[S_j != S_k | S_i = s].
  auto band = [&](int s, double& delta, double& half) {
    const double n_s = counts[TripleDistribution::index(s, -1, -1)] + counts[TripleDistribution::index(s, -1, 1)] +
                       counts[TripleDistribution::index(s, 1, -1)] + counts[TripleDistribution::index(s, 1, 1)];
    if (n_s == 0.0) {
      delta = 0.0;
      half = INFINITY;
      return;
    }
    const double agree_j_only = counts[TripleDistribution::index(s, s, -s)];
    const double agree_k_only = counts[TripleDistribution::index(s, -s, s)];
    delta = (agree_j_only - agree_k_only) / n_s;
    const double second = (agree_j_only + agree_k_only) / n_s;
    half = 1.96 * std::sqrt(std::max(0.0, second - delta * delta) / n_s);
  };
  band(1, out.delta_plus, out.delta_plus_halfwidth);
  band(-1, out.delta_minus, out.delta_minus_halfwidth);
  return out;
}

ClaimVerdict claim_transitive_check(const PairwiseMatrix& q, ItemId a, ItemId a1, ItemId a2) {
  if (a == a1 || a == a2 || a1 == a2) throw ValidationError("triple items must be distinct");
  const double lead = q.q(a, a1);
  if (lead == 0.0) return ClaimVerdict::Degenerate;
  return lead * q.q(a2, a1) > lead * q.q(a2, a) ? ClaimVerdict::Pass : ClaimVerdict::Fail;
}

GeneralTriple::GeneralTriple(std::size_t omega, std::vector<double> p) : m_(omega), p_(std::move(p)) {
  if (m_ < 2) throw ValidationError("signal domain needs at least 2 values");
  if (p_.size() != m_ * m_ * m_) throw ValidationError("general triple needs |Omega|^3 cells");
  double total = 0.0;
  for (double x : p_) {
    if (!std::isfinite(x) || x < 0.0) throw ValidationError("general triple has a negative or non-finite cell");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-12) throw ValidationError("general triple does not sum to 1");
}

double GeneralTriple::marginal_i(std::size_t si) const {
  double m = 0.0;
  for (std::size_t sj = 0; sj < m_; ++sj)
    for (std::size_t sk = 0; sk < m_; ++sk) m += at(si, sj, sk);
  return m;
}

double GeneralTriple::cond_j(std::size_t si, std::size_t sj) const {
  const double m = marginal_i(si);
  if (!(m > 0.0)) throw ValidationError("conditioning on a signal of S_i with probability zero");
  double x = 0.0;
  for (std::size_t sk = 0; sk < m_; ++sk) x += at(si, sj, sk);
  return x / m;
}

double GeneralTriple::cond_k(std::size_t si, std::size_t sk) const {
  const double m = marginal_i(si);
  if (!(m > 0.0)) throw ValidationError("conditioning on a signal of S_i with probability zero");
  double x = 0.0;
  for (std::size_t sj = 0; sj < m_; ++sj) x += at(si, sj, sk);
  return x / m;
}

GeneralTriple GeneralTriple::from_binary(const TripleDistribution& p) {
  // Omega index 0 is -1, index 1 is +1; this matches the binary cell order.
  return GeneralTriple(2, std::vector<double>(p.cells().begin(), p.cells().end()));
}

GeneralDominanceReport is_uniformly_dominant_general(const GeneralTriple& p) {
  const std::size_t m = p.omega();
  GeneralDominanceReport r;
  r.dominant = true;
  r.margin.assign(m, std::vector<double>(m, 0.0));
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t t = 0; t < m; ++t) {
      const double d = p.cond_j(s, t) - p.cond_k(s, t);
      r.margin[s][t] = d;
      if (s == t ? !(d > kDominanceTolerance) : !(d < -kDominanceTolerance)) r.dominant = false;
    }
  return r;
}

}  // namespace bpp
