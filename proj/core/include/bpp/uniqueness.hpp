#pragma once

// Three-input payment functions: decomposition, the affine-BPP test, and a search for
// dominant distributions on which a payment fails to make truth a strict best response.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bpp/dominance.hpp"

namespace bpp {

/// U(s_i, s_j, s_k) in the same cell order as TripleDistribution.
class PaymentFunction {
 public:
  PaymentFunction() = default;
  explicit PaymentFunction(const std::array<double, 8>& u);

  static PaymentFunction bpp();
  /// Parses 8 comma-separated reals.
  static PaymentFunction parse(const std::string& text);

  double operator()(int si, int sj, int sk) const { return u_[TripleDistribution::index(si, sj, sk)]; }
  const std::array<double, 8>& cells() const noexcept { return u_; }

 private:
  std::array<double, 8> u_{};
};

/// Tables over (s_j, s_k) indexed by 2*[s_j=1] + [s_k=1].
struct PairTable {
  std::array<double, 4> v{};
  static std::size_t index(int sj, int sk);
  double operator()(int sj, int sk) const { return v[index(sj, sk)]; }
};

/// U(s_i, s_j, s_k) = s_i D(s_j, s_k) + mu(s_j, s_k).
struct Decomposition {
  PairTable d;
  PairTable mu;
  PaymentFunction recompose() const;
};

Decomposition decompose(const PaymentFunction& u);

struct AffineForm {
  double lambda = 0.0;
  PairTable mu;
};

inline constexpr double kUniquenessTolerance = 1e-10;

/// lambda = D(1,-1)/2 and mu when U = lambda * bpp + mu(s_j, s_k) with lambda > 0.
std::optional<AffineForm> is_affine_bpp(const PaymentFunction& u);

/// Conditional tables p^{1} and p^{-1} over (s_j, s_k), each summing to 1; S_i is a fair coin.
TripleDistribution triple_from_conditionals(const PairTable& given_plus, const PairTable& given_minus);

TripleDistribution witness_p1(double delta);
TripleDistribution witness_p2(double epsilon);
TripleDistribution witness_p2_mirror(double epsilon);

enum class Truthfulness { Strict, Weak, Violated };
std::string to_string(Truthfulness t);

struct TruthfulnessVerdict {
  Truthfulness overall = Truthfulness::Strict;
  Truthfulness on_plus = Truthfulness::Strict;
  Truthfulness on_minus = Truthfulness::Strict;
  double gap_plus = 0.0;   ///< E[U(1,..)|S_i=1] - E[U(-1,..)|S_i=1]
  double gap_minus = 0.0;  ///< E[U(-1,..)|S_i=-1] - E[U(1,..)|S_i=-1]
};

/// Strict on a signal when the truthful report wins by more than 1e-10, weak within it.
TruthfulnessVerdict truthfulness_audit(const PaymentFunction& u, const TripleDistribution& p);

/// Rejection-samples a uniformly dominant 8-cell law with both margins above `min_margin`.
TripleDistribution random_dominant_triple(Rng& rng, double min_margin = 0.05);

enum class SearchOutcome { Certificate, Counterexample, Inconclusive };

struct SearchResult {
  SearchOutcome outcome = SearchOutcome::Inconclusive;
  std::optional<AffineForm> certificate;
  std::optional<TripleDistribution> counterexample;
  std::string family;        ///< "p1", "p2", "p2_mirror" or "random"
  double parameter = 0.0;    ///< delta or epsilon for the witness families
  TruthfulnessVerdict verdict;
};

struct SearchOptions {
  std::vector<double> grid{0.5, 0.25, 0.1, 0.01, 0.001};
  std::size_t random_trials = 10'000;
  std::uint64_t seed = 0;
};

/// Certificate when is_affine_bpp succeeds; otherwise scans the witness families (grid values plus
/// parameters derived from U's decomposition), then random dominant laws.
SearchResult uniqueness_search(const PaymentFunction& u, const SearchOptions& options = {});

}  // namespace bpp
