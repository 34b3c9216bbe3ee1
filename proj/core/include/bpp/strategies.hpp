#pragma once

// Report strategies, expected payments, best responses, and symmetric-equilibrium audits.

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bpp/dominance.hpp"

namespace bpp {

/// sigma(s, r) = Pr[report r | signal s] for s, r in {-1, 1}.
class Strategy {
 public:
  /// Defaults to truth-telling.
  Strategy() : Strategy(1.0, 0.0) {}
  /// sigma(1, 1) = p11 and sigma(-1, 1) = pm11; the other column is the complement.
  Strategy(double p11, double pm11);

  static Strategy truthful() { return Strategy(1.0, 0.0); }
  static Strategy flip() { return Strategy(0.0, 1.0); }
  /// Reports 1 with probability q regardless of the signal.
  static Strategy uninformed(double q) { return Strategy(q, q); }

  double operator()(int s, int r) const;
  double p11() const noexcept { return p11_; }
  double pm11() const noexcept { return pm11_; }

 private:
  double p11_ = 1.0;
  double pm11_ = 0.0;
};

enum class StrategyClass { Truthful, Flip, Uninformed, OtherInformed };

/// Uninformed when both rows agree within 1e-9.
StrategyClass classify(const Strategy& sigma);
std::string to_string(StrategyClass c);

/// value[s][r] = E[bpp(r, R_j, R_k) | S_i = s] with row/column 0 for -1 and 1 for +1, where peers
/// report through sigma_j and sigma_k. NaN in a row whose signal has probability zero.
struct ConditionalPayments {
  std::array<std::array<double, 2>, 2> value{};
  double operator()(int s, int r) const { return value[s > 0][r > 0]; }
};

/// Exact, by enumerating the 8 signal outcomes and both peers' report randomization.
ConditionalPayments conditional_payments(const TripleDistribution& p, const Strategy& sigma_j,
                                         const Strategy& sigma_k);

/// E[bpp(R_i, R_j, R_k)] with every agent reporting through its own strategy.
double expected_payment(const TripleDistribution& p, const Strategy& sigma_i, const Strategy& sigma_j,
                        const Strategy& sigma_k);

/// 2 delta_s (sigma(s, r) - sigma(-s, r)), the conditional payment under a symmetric peer strategy.
double lemma4_conditional(const TripleDistribution& p, const Strategy& sigma, int s, int r);

/// Best report per signal; nullopt means indifferent (difference within 1e-9).
struct BestResponse {
  std::optional<int> on_minus;
  std::optional<int> on_plus;
  std::optional<int> operator()(int s) const { return s > 0 ? on_plus : on_minus; }
};

/// Throws ValidationError when `p` is not uniformly dominant.
BestResponse best_response(const TripleDistribution& p, const Strategy& sigma);

struct EquilibriumRow {
  double sigma_11 = 0.0;
  double sigma_m11 = 0.0;
  bool is_equilibrium = false;
  StrategyClass classification = StrategyClass::OtherInformed;
  double expected_payment = 0.0;
};

struct EquilibriumReport {
  std::vector<EquilibriumRow> rows;
  /// Every equilibrium found is Truthful, Flip, or Uninformed.
  bool only_permutation_or_uninformed = true;
  double truth_payment = 0.0;
  double flip_payment = 0.0;
  double max_abs_uninformed_payment = 0.0;  ///< over uninformed equilibria on the grid
};

inline constexpr double kEquilibriumTolerance = 1e-9;

/// Sweeps (sigma(1,1), sigma(-1,1)) over a resolution x resolution grid on [0,1]^2 (corners included).
/// A point is an equilibrium when every report in the support of sigma(s, .) is a best response.
EquilibriumReport classify_symmetric_equilibria(const TripleDistribution& p, std::size_t resolution = 101);

void write_equilibria_csv(std::ostream& out, const EquilibriumReport& report);

struct TruthfulAudit {
  bool pass = false;
  double truth_payment = 0.0;
  double flip_payment = 0.0;
  double uninformed_payment = 0.0;  ///< largest |payment| over uninformed profiles checked
  bool truth_strict = false;
  std::string diagnostic;
};

/// E[truth] > 0, E[truth] = E[flip], uninformed profiles pay 0, and truth is a strict best response
/// to truthful peers.
TruthfulAudit strongly_truthful_audit(const TripleDistribution& p);

/// sigma(s, r) over Omega = {0..m-1}, row-stochastic.
class GeneralStrategy {
 public:
  GeneralStrategy() = default;
  GeneralStrategy(std::size_t omega, std::vector<double> sigma);

  static GeneralStrategy truthful(std::size_t omega);
  /// Always reports r.
  static GeneralStrategy constant(std::size_t omega, std::size_t r);
  /// Deterministic map s -> f[s].
  static GeneralStrategy deterministic(const std::vector<std::size_t>& f);
  /// Rows drawn uniformly from the simplex.
  static GeneralStrategy random(std::size_t omega, Rng& rng);

  std::size_t omega() const noexcept { return m_; }
  double operator()(std::size_t s, std::size_t r) const { return sigma_[s * m_ + r]; }
  bool is_uninformed(double tol = 1e-12) const;

 private:
  std::size_t m_ = 0;
  std::vector<double> sigma_;
};

/// E[2(1[r = R_j] - 1[r = R_k]) | S_i = s] with both peers using sigma.
double general_conditional_payment(const GeneralTriple& p, const GeneralStrategy& sigma, std::size_t s,
                                   std::size_t r);

/// Every agent uses sigma.
double general_expected_payment(const GeneralTriple& p, const GeneralStrategy& sigma);

/// `n_random` seeded random strategies, every constant strategy, and every deterministic map when
/// |Omega| <= 4.
std::vector<GeneralStrategy> default_strategy_set(std::size_t omega, std::size_t n_random = 500,
                                                  std::uint64_t seed = 0);

struct GeneralAudit {
  bool pass = false;
  bool truth_strict = false;
  double truth_payment = 0.0;
  double best_other_payment = 0.0;          ///< largest payment among the supplied strategies
  double max_abs_uninformed_payment = 0.0;  ///< among supplied uninformed strategies
  std::size_t strategies_checked = 0;
  std::string diagnostic;
};

GeneralAudit informed_truthfulness_audit_general(const GeneralTriple& p, const std::vector<GeneralStrategy>& strategies);

}  // namespace bpp
