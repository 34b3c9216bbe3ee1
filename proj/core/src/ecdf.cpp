#include "bpp/ecdf.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>

#include "bpp/errors.hpp"

namespace bpp {

Ecdf::Ecdf(std::vector<double> values) : sorted_(std::move(values)) {
  if (sorted_.empty()) throw ValidationError("ECDF of an empty sample");
  std::sort(sorted_.begin(), sorted_.end());
}

double Ecdf::operator()(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

std::vector<std::pair<double, double>> Ecdf::steps() const {
  std::vector<std::pair<double, double>> out;
  const double n = static_cast<double>(sorted_.size());
  for (std::size_t i = 0; i < sorted_.size(); ++i)
    if (i + 1 == sorted_.size() || sorted_[i + 1] != sorted_[i]) out.emplace_back(sorted_[i], static_cast<double>(i + 1) / n);
  return out;
}

DominanceTest dominance_test(const Ecdf& first, const Ecdf& second) {
  std::vector<double> support = first.sorted();
  support.insert(support.end(), second.sorted().begin(), second.sorted().end());
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  DominanceTest t;
  t.equal = true;
  t.max_violation = -1.0;
  for (double x : support) {
    const double diff = first(x) - second(x);
    t.max_violation = std::max(t.max_violation, diff);
    if (std::abs(diff) > 1e-12) t.equal = false;
  }
  t.dominated = t.max_violation <= 1e-12;
  return t;
}

SummaryStats summarize(const std::vector<double>& payments) {
  if (payments.empty()) throw ValidationError("summary of an empty sample");
  SummaryStats s;
  s.count = payments.size();
  s.mean = std::accumulate(payments.begin(), payments.end(), 0.0) / static_cast<double>(s.count);
  const auto positive = std::count_if(payments.begin(), payments.end(), [](double x) { return x > 0.0; });
  s.fraction_positive = static_cast<double>(positive) / static_cast<double>(s.count);
  return s;
}

void write_ecdf_csv(std::ostream& out, const Ecdf& e) {
  out << "payment,cdf\n" << std::setprecision(12);
  for (auto [x, f] : e.steps()) out << x << ',' << f << '\n';
}

}  // namespace bpp
