#include "bpp/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

#include "bpp/errors.hpp"
#include "bpp/payments.hpp"

namespace bpp {

namespace {

constexpr int kSigns[2] = {-1, 1};

void require_probability(double x, const char* what) {
  if (!std::isfinite(x) || x < 0.0 || x > 1.0) throw ValidationError(std::string(what) + " must lie in [0, 1]");
}

}  // namespace

Strategy::Strategy(double p11, double pm11) : p11_(p11), pm11_(pm11) {
  require_probability(p11, "sigma(1,1)");
  require_probability(pm11, "sigma(-1,1)");
}

double Strategy::operator()(int s, int r) const {
  require_sign(s);
  require_sign(r);
  const double up = s > 0 ? p11_ : pm11_;
  return r > 0 ? up : 1.0 - up;
}

StrategyClass classify(const Strategy& sigma) {
  if (std::abs(sigma.p11() - sigma.pm11()) <= 1e-9) return StrategyClass::Uninformed;
  if (sigma.p11() == 1.0 && sigma.pm11() == 0.0) return StrategyClass::Truthful;
  if (sigma.p11() == 0.0 && sigma.pm11() == 1.0) return StrategyClass::Flip;
  return StrategyClass::OtherInformed;
}

std::string to_string(StrategyClass c) {
  switch (c) {
    case StrategyClass::Truthful: return "truthful";
    case StrategyClass::Flip: return "flip";
    case StrategyClass::Uninformed: return "uninformed";
    case StrategyClass::OtherInformed: return "other_informed";
  }
  return "unknown";
}

ConditionalPayments conditional_payments(const TripleDistribution& p, const Strategy& sigma_j,
                                         const Strategy& sigma_k) {
  ConditionalPayments out;
  for (int s : kSigns) {
    const double mass = p.marginal_i(s);
    for (int r : kSigns) {
      if (!(mass > 0.0)) {
        out.value[s > 0][r > 0] = std::numeric_limits<double>::quiet_NaN();
        continue;
      }
      double total = 0.0;
      for (int sj : kSigns)
        for (int sk : kSigns)
          for (int rj : kSigns)
            for (int rk : kSigns) total += p.at(s, sj, sk) * sigma_j(sj, rj) * sigma_k(sk, rk) * bpp(r, rj, rk);
      out.value[s > 0][r > 0] = total / mass;
    }
  }
  return out;
}

double expected_payment(const TripleDistribution& p, const Strategy& sigma_i, const Strategy& sigma_j,
                        const Strategy& sigma_k) {
  const ConditionalPayments c = conditional_payments(p, sigma_j, sigma_k);
  double total = 0.0;
  for (int s : kSigns) {
    const double mass = p.marginal_i(s);
    if (!(mass > 0.0)) continue;
    for (int r : kSigns) total += mass * sigma_i(s, r) * c(s, r);
  }
  return total;
}

double lemma4_conditional(const TripleDistribution& p, const Strategy& sigma, int s, int r) {
  const double delta = s > 0 ? p.cond_j(1, 1) - p.cond_k(1, 1) : p.cond_j(-1, -1) - p.cond_k(-1, -1);
  return 2.0 * delta * (sigma(s, r) - sigma(-s, r));
}

BestResponse best_response(const TripleDistribution& p, const Strategy& sigma) {
  if (!is_uniformly_dominant(p).dominant) throw ValidationError("best response requires a uniformly dominant triple");
  BestResponse out;
  for (int s : kSigns) {
    const double diff = sigma(s, 1) - sigma(-s, 1);
    std::optional<int> r;
    if (diff > kEquilibriumTolerance) r = 1;
    else if (diff < -kEquilibriumTolerance) r = -1;
    (s > 0 ? out.on_plus : out.on_minus) = r;
  }
  return out;
}

EquilibriumReport classify_symmetric_equilibria(const TripleDistribution& p, std::size_t resolution) {
  if (resolution < 2) throw ValidationError("equilibrium grid needs resolution >= 2");
  EquilibriumReport report;
  report.truth_payment = expected_payment(p, Strategy::truthful(), Strategy::truthful(), Strategy::truthful());
  report.flip_payment = expected_payment(p, Strategy::flip(), Strategy::flip(), Strategy::flip());
  const double step = 1.0 / static_cast<double>(resolution - 1);
  for (std::size_t x = 0; x < resolution; ++x) {
    for (std::size_t y = 0; y < resolution; ++y) {
      const double p11 = x + 1 == resolution ? 1.0 : static_cast<double>(x) * step;
      const double pm11 = y + 1 == resolution ? 1.0 : static_cast<double>(y) * step;
      const Strategy sigma(p11, pm11);
      const ConditionalPayments c = conditional_payments(p, sigma, sigma);
      bool eq = true;
      double payment = 0.0;
      for (int s : kSigns) {
        const double mass = p.marginal_i(s);
        if (!(mass > 0.0)) continue;
        const double best = std::max(c(s, -1), c(s, 1));
        for (int r : kSigns) {
          payment += mass * sigma(s, r) * c(s, r);
          if (sigma(s, r) > 0.0 && c(s, r) < best - kEquilibriumTolerance) eq = false;
        }
      }
      EquilibriumRow row{p11, pm11, eq, classify(sigma), payment};
      if (eq) {
        if (row.classification == StrategyClass::OtherInformed) report.only_permutation_or_uninformed = false;
        if (row.classification == StrategyClass::Uninformed)
          report.max_abs_uninformed_payment = std::max(report.max_abs_uninformed_payment, std::abs(payment));
      }
      report.rows.push_back(row);
    }
  }
  return report;
}

void write_equilibria_csv(std::ostream& out, const EquilibriumReport& report) {
  out << "sigma_11,sigma_m11,is_eq,classification,expected_payment\n" << std::setprecision(12);
  for (const auto& r : report.rows)
    out << r.sigma_11 << ',' << r.sigma_m11 << ',' << (r.is_equilibrium ? 1 : 0) << ',' << to_string(r.classification)
        << ',' << r.expected_payment << '\n';
}

TruthfulAudit strongly_truthful_audit(const TripleDistribution& p) {
  TruthfulAudit a;
  const Strategy truth = Strategy::truthful();
  a.truth_payment = expected_payment(p, truth, truth, truth);
  a.flip_payment = expected_payment(p, Strategy::flip(), Strategy::flip(), Strategy::flip());
  for (double q : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const Strategy u = Strategy::uninformed(q);
    a.uninformed_payment = std::max(a.uninformed_payment, std::abs(expected_payment(p, u, u, u)));
  }
  const ConditionalPayments c = conditional_payments(p, truth, truth);
  a.truth_strict = true;
  for (int s : kSigns) {
    if (!(p.marginal_i(s) > 0.0)) continue;
    if (!(c(s, s) - c(s, -s) > kEquilibriumTolerance)) {
      a.truth_strict = false;
      a.diagnostic += "truth is not a strict best response on signal " + std::to_string(s) + "; ";
    }
  }
  if (!(a.truth_payment > kEquilibriumTolerance)) a.diagnostic += "truthful payment is not positive; ";
  if (std::abs(a.truth_payment - a.flip_payment) > 1e-10) a.diagnostic += "truthful and flip payments differ; ";
  if (a.uninformed_payment > 1e-10) a.diagnostic += "an uninformed profile has nonzero payment; ";
  a.pass = a.diagnostic.empty();
  return a;
}

// ---------------------------------------------------------------- general signal domain

GeneralStrategy::GeneralStrategy(std::size_t omega, std::vector<double> sigma) : m_(omega), sigma_(std::move(sigma)) {
  if (m_ < 2) throw ValidationError("signal domain needs at least 2 values");
  if (sigma_.size() != m_ * m_) throw ValidationError("strategy needs |Omega|^2 entries");
  for (std::size_t s = 0; s < m_; ++s) {
    double row = 0.0;
    for (std::size_t r = 0; r < m_; ++r) {
      require_probability((*this)(s, r), "strategy entry");
      row += (*this)(s, r);
    }
    if (std::abs(row - 1.0) > 1e-12) throw ValidationError("strategy rows must sum to 1");
  }
}

GeneralStrategy GeneralStrategy::truthful(std::size_t omega) {
  std::vector<std::size_t> f(omega);
  for (std::size_t s = 0; s < omega; ++s) f[s] = s;
  return deterministic(f);
}

GeneralStrategy GeneralStrategy::constant(std::size_t omega, std::size_t r) {
  return deterministic(std::vector<std::size_t>(omega, r));
}

GeneralStrategy GeneralStrategy::deterministic(const std::vector<std::size_t>& f) {
  const std::size_t m = f.size();
  std::vector<double> sigma(m * m, 0.0);
  for (std::size_t s = 0; s < m; ++s) {
    if (f[s] >= m) throw ValidationError("deterministic map leaves the signal domain");
    sigma[s * m + f[s]] = 1.0;
  }
  return GeneralStrategy(m, std::move(sigma));
}

GeneralStrategy GeneralStrategy::random(std::size_t omega, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> sigma(omega * omega);
  for (std::size_t s = 0; s < omega; ++s) {
    double total = 0.0;
    for (std::size_t r = 0; r < omega; ++r) total += sigma[s * omega + r] = expo(rng);
    for (std::size_t r = 0; r < omega; ++r) sigma[s * omega + r] /= total;
    // Push the rounding residue into the largest cell so the row sums to 1.
    double row = 0.0;
    for (std::size_t r = 0; r < omega; ++r) row += sigma[s * omega + r];
    auto first = sigma.begin() + static_cast<std::ptrdiff_t>(s * omega);
    *std::max_element(first, first + static_cast<std::ptrdiff_t>(omega)) += 1.0 - row;
  }
  return GeneralStrategy(omega, std::move(sigma));
}

bool GeneralStrategy::is_uninformed(double tol) const {
  for (std::size_t s = 1; s < m_; ++s)
    for (std::size_t r = 0; r < m_; ++r)
      if (std::abs((*this)(s, r) - (*this)(0, r)) > tol) return false;
  return true;
}

double general_conditional_payment(const GeneralTriple& p, const GeneralStrategy& sigma, std::size_t s, std::size_t r) {
  if (sigma.omega() != p.omega()) throw ValidationError("strategy and distribution domains differ");
  double total = 0.0;
  for (std::size_t x = 0; x < p.omega(); ++x) total += (p.cond_j(s, x) - p.cond_k(s, x)) * sigma(x, r);
  return 2.0 * total;
}

double general_expected_payment(const GeneralTriple& p, const GeneralStrategy& sigma) {
  double total = 0.0;
  for (std::size_t s = 0; s < p.omega(); ++s) {
    const double mass = p.marginal_i(s);
    if (!(mass > 0.0)) continue;
    for (std::size_t r = 0; r < p.omega(); ++r)
      if (sigma(s, r) > 0.0) total += mass * sigma(s, r) * general_conditional_payment(p, sigma, s, r);
  }
  return total;
}

std::vector<GeneralStrategy> default_strategy_set(std::size_t omega, std::size_t n_random, std::uint64_t seed) {
  std::vector<GeneralStrategy> out;
  Rng rng(seed);
  for (std::size_t n = 0; n < n_random; ++n) out.push_back(GeneralStrategy::random(omega, rng));
  for (std::size_t r = 0; r < omega; ++r) out.push_back(GeneralStrategy::constant(omega, r));
  if (omega <= 4) {
    std::vector<std::size_t> f(omega, 0);
    while (true) {
      out.push_back(GeneralStrategy::deterministic(f));
      std::size_t pos = 0;
      while (pos < omega && ++f[pos] == omega) f[pos++] = 0;
      if (pos == omega) break;
    }
  }
  return out;
}

GeneralAudit informed_truthfulness_audit_general(const GeneralTriple& p, const std::vector<GeneralStrategy>& strategies) {
  const std::size_t m = p.omega();
  GeneralAudit a;
  const GeneralStrategy truth = GeneralStrategy::truthful(m);
  a.truth_payment = general_expected_payment(p, truth);
  a.truth_strict = true;
  for (std::size_t s = 0; s < m; ++s) {
    if (!(p.marginal_i(s) > 0.0)) continue;
    const double own = general_conditional_payment(p, truth, s, s);
    for (std::size_t r = 0; r < m; ++r)
      if (r != s && !(own - general_conditional_payment(p, truth, s, r) > kEquilibriumTolerance)) {
        a.truth_strict = false;
        a.diagnostic += "truth is not a strict best response on signal " + std::to_string(s) + "; ";
        break;
      }
  }
  a.best_other_payment = -INFINITY;
  for (const auto& sigma : strategies) {
    const double pay = general_expected_payment(p, sigma);
    a.best_other_payment = std::max(a.best_other_payment, pay);
    if (sigma.is_uninformed()) a.max_abs_uninformed_payment = std::max(a.max_abs_uninformed_payment, std::abs(pay));
    ++a.strategies_checked;
  }
  if (a.best_other_payment > a.truth_payment + 1e-12) a.diagnostic += "a sampled strategy pays more than truth; ";
  if (a.max_abs_uninformed_payment > 1e-12) a.diagnostic += "an uninformed strategy has nonzero payment; ";
  if (!(a.truth_payment > kEquilibriumTolerance)) a.diagnostic += "truthful payment is not positive; ";
  a.pass = a.diagnostic.empty();
  return a;
}

}  // namespace bpp
