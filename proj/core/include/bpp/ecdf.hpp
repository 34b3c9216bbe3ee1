#pragma once

// Empirical CDFs of payments and first-order dominance between them.

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

namespace bpp {

class Ecdf {
 public:
  /// Throws ValidationError on empty input.
  explicit Ecdf(std::vector<double> values);

  /// Fraction of values <= x.
  double operator()(double x) const;
  std::size_t size() const noexcept { return sorted_.size(); }
  const std::vector<double>& sorted() const noexcept { return sorted_; }
  /// (value, F(value)) at each distinct value.
  std::vector<std::pair<double, double>> steps() const;

 private:
  std::vector<double> sorted_;
};

struct DominanceTest {
  bool dominated = false;  ///< first(x) <= second(x) + 1e-12 at every support point of either
  bool equal = false;      ///< the two step functions coincide
  double max_violation = 0.0;  ///< largest first(x) - second(x)
};

/// Whether `first` lies on or below `second` everywhere, i.e. `first` is the ECDF of
/// stochastically larger values.
DominanceTest dominance_test(const Ecdf& first, const Ecdf& second);

struct SummaryStats {
  double mean = 0.0;
  double fraction_positive = 0.0;
  std::size_t count = 0;
};

SummaryStats summarize(const std::vector<double>& payments);

void write_ecdf_csv(std::ostream& out, const Ecdf& e);

}  // namespace bpp
