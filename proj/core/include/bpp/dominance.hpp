#pragma once

// Joint laws of three signals (S_i, S_j, S_k) and the uniform-dominance test.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bpp/sst_models.hpp"

namespace bpp {

/// Distribution over (s_i, s_j, s_k) in {-1,1}^3. Cell order is lexicographic with -1 < 1,
/// so index = 4*[s_i=1] + 2*[s_j=1] + [s_k=1].
class TripleDistribution {
 public:
  TripleDistribution() = default;
  /// Throws ValidationError on negative/non-finite cells or a total off 1 by more than 1e-12.
  explicit TripleDistribution(const std::array<double, 8>& p);

  static std::size_t index(int si, int sj, int sk);
  /// Parses 8 comma-separated probabilities.
  static TripleDistribution parse(const std::string& text);

  double at(int si, int sj, int sk) const { return p_[index(si, sj, sk)]; }
  const std::array<double, 8>& cells() const noexcept { return p_; }

  double marginal_i(int si) const;
  /// Pr[S_j = sj | S_i = si]; throws ValidationError when Pr[S_i = si] = 0.
  double cond_j(int si, int sj) const;
  double cond_k(int si, int sk) const;

  /// Law of (-S_i, -S_j, -S_k).
  TripleDistribution flipped() const;

  std::string to_string() const;

 private:
  std::array<double, 8> p_{};
};

void require_sign(int s);

struct DominanceReport {
  double delta_plus = 0.0;   ///< Pr[S_j=1|S_i=1] - Pr[S_k=1|S_i=1]
  double delta_minus = 0.0;  ///< Pr[S_j=-1|S_i=-1] - Pr[S_k=-1|S_i=-1]
  bool dominant = false;
};

/// Margin threshold for the strict inequalities in exact mode.
inline constexpr double kDominanceTolerance = 1e-9;

/// Throws ValidationError when either S_i marginal is zero.
DominanceReport is_uniformly_dominant(const TripleDistribution& p);

/// Exact joint of (S(a,a'), S(a'',a'), S(a'',a)) for a finite-support model, summing over theta
/// with the three comparisons independent given theta.
TripleDistribution triple_from_model(const ComparisonModel& model, ItemId a, ItemId a1, ItemId a2);

struct SampledTriple {
  TripleDistribution p;
  std::size_t samples = 0;
  double delta_plus = 0.0;
  double delta_minus = 0.0;
  double delta_plus_halfwidth = 0.0;   ///< 95% normal-approximation half-width
  double delta_minus_halfwidth = 0.0;
};

/// Monte Carlo version: draws theta and three comparisons `samples` times.
SampledTriple triple_from_model_sampled(const ComparisonModel& model, ItemId a, ItemId a1, ItemId a2,
                                        std::size_t samples, std::uint64_t seed);

enum class ClaimVerdict { Pass, Fail, Degenerate };

/// Q(a,a') Q(a'',a') > Q(a,a') Q(a'',a). Degenerate when Q(a,a') = 0.
ClaimVerdict claim_transitive_check(const PairwiseMatrix& q, ItemId a, ItemId a1, ItemId a2);

/// Dense law on Omega^3, Omega = {0..m-1}; index = (si*m + sj)*m + sk.
class GeneralTriple {
 public:
  GeneralTriple() = default;
  GeneralTriple(std::size_t omega, std::vector<double> p);

  std::size_t omega() const noexcept { return m_; }
  double at(std::size_t si, std::size_t sj, std::size_t sk) const { return p_[(si * m_ + sj) * m_ + sk]; }
  double marginal_i(std::size_t si) const;
  double cond_j(std::size_t si, std::size_t sj) const;
  double cond_k(std::size_t si, std::size_t sk) const;

  static GeneralTriple from_binary(const TripleDistribution& p);

 private:
  std::size_t m_ = 0;
  std::vector<double> p_;
};

struct GeneralDominanceReport {
  bool dominant = false;
  /// margin[s][s'] = Pr[S_j=s'|S_i=s] - Pr[S_k=s'|S_i=s]; positive needed on the diagonal,
  /// negative off it.
  std::vector<std::vector<double>> margin;
};

GeneralDominanceReport is_uniformly_dominant_general(const GeneralTriple& p);

}  // namespace bpp
