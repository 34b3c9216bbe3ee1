#include "bpp/uniqueness.hpp"

#include <cmath>
#include <sstream>

#include "bpp/errors.hpp"
#include "bpp/payments.hpp"

namespace bpp {

namespace {

constexpr int kSigns[2] = {-1, 1};

Truthfulness grade(double gap) {
  if (gap > kUniquenessTolerance) return Truthfulness::Strict;
  if (gap >= -kUniquenessTolerance) return Truthfulness::Weak;
  return Truthfulness::Violated;
}

PairTable table(double pp, double pm, double mp, double mm) {
  PairTable t;
  t.v[PairTable::index(1, 1)] = pp;
  t.v[PairTable::index(1, -1)] = pm;
  t.v[PairTable::index(-1, 1)] = mp;
  t.v[PairTable::index(-1, -1)] = mm;
  return t;
}

}  // namespace

PaymentFunction::PaymentFunction(const std::array<double, 8>& u) : u_(u) {
  for (double x : u_)
    if (!std::isfinite(x)) throw ValidationError("payment values must be finite");
}

PaymentFunction PaymentFunction::bpp() {
  std::array<double, 8> u{};
  for (int si : kSigns)
    for (int sj : kSigns)
      for (int sk : kSigns) u[TripleDistribution::index(si, sj, sk)] = bpp::bpp(si, sj, sk);
  return PaymentFunction(u);
}

PaymentFunction PaymentFunction::parse(const std::string& text) {
  std::array<double, 8> u{};
  std::stringstream ss(text);
  std::string field;
  std::size_t count = 0;
  while (std::getline(ss, field, ',')) {
    if (count == 8) throw ValidationError("expected 8 comma-separated payment values, got more");
    try {
      std::size_t used = 0;
      u[count] = std::stod(field, &used);
      if (field.find_first_not_of(" \t\r\n", used) != std::string::npos) throw std::invalid_argument(field);
    } catch (const std::logic_error&) {
      throw ValidationError("not a number: '" + field + "'");
    }
    ++count;
  }
  if (count != 8) throw ValidationError("expected 8 comma-separated payment values, got " + std::to_string(count));
  return PaymentFunction(u);
}

std::size_t PairTable::index(int sj, int sk) {
  require_sign(sj);
  require_sign(sk);
  return (sj > 0 ? 2u : 0u) | (sk > 0 ? 1u : 0u);
}

PaymentFunction Decomposition::recompose() const {
  std::array<double, 8> u{};
  for (int si : kSigns)
    for (int sj : kSigns)
      for (int sk : kSigns) u[TripleDistribution::index(si, sj, sk)] = si * d(sj, sk) + mu(sj, sk);
  return PaymentFunction(u);
}

Decomposition decompose(const PaymentFunction& u) {
  Decomposition out;
  for (int sj : kSigns)
    for (int sk : kSigns) {
      out.d.v[PairTable::index(sj, sk)] = 0.5 * (u(1, sj, sk) - u(-1, sj, sk));
      out.mu.v[PairTable::index(sj, sk)] = 0.5 * (u(1, sj, sk) + u(-1, sj, sk));
    }
  return out;
}

std::optional<AffineForm> is_affine_bpp(const PaymentFunction& u) {
  const Decomposition dec = decompose(u);
  const auto& d = dec.d;
  if (std::abs(d(1, 1)) > kUniquenessTolerance || std::abs(d(-1, -1)) > kUniquenessTolerance) return std::nullopt;
  if (std::abs(d(1, -1) + d(-1, 1)) > kUniquenessTolerance) return std::nullopt;
  if (!(d(1, -1) > kUniquenessTolerance)) return std::nullopt;
  return AffineForm{d(1, -1) / 2.0, dec.mu};
}

TripleDistribution triple_from_conditionals(const PairTable& given_plus, const PairTable& given_minus) {
  std::array<double, 8> p{};
  for (int sj : kSigns)
    for (int sk : kSigns) {
      p[TripleDistribution::index(1, sj, sk)] = 0.5 * given_plus(sj, sk);
      p[TripleDistribution::index(-1, sj, sk)] = 0.5 * given_minus(sj, sk);
    }
  return TripleDistribution(p);
}

TripleDistribution witness_p1(double delta) {
  if (!(delta > 0.0 && delta <= 0.5)) throw ValidationError("witness_p1 needs 0 < delta <= 1/2");
  return triple_from_conditionals(table(0.0, 0.5 + delta, 0.5 - delta, 0.0), table(0.0, 0.5 - delta, 0.5 + delta, 0.0));
}

TripleDistribution witness_p2(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw ValidationError("witness_p2 needs 0 <= epsilon <= 1");
  return triple_from_conditionals(table(1.0 - epsilon, 0.75 * epsilon, 0.25 * epsilon, 0.0),
                                  table(1.0 - epsilon, 0.25 * epsilon, 0.75 * epsilon, 0.0));
}

TripleDistribution witness_p2_mirror(double epsilon) { return witness_p2(epsilon).flipped(); }

std::string to_string(Truthfulness t) {
  switch (t) {
    case Truthfulness::Strict: return "strict";
    case Truthfulness::Weak: return "weak";
    case Truthfulness::Violated: return "violated";
  }
  return "unknown";
}

TruthfulnessVerdict truthfulness_audit(const PaymentFunction& u, const TripleDistribution& p) {
  // E[U(r, S_j, S_k) | S_i = s]
  auto value = [&](int s, int r) {
    const double mass = p.marginal_i(s);
    if (!(mass > 0.0)) throw ValidationError("conditioning on a signal of S_i with probability zero");
    double total = 0.0;
    for (int sj : kSigns)
      for (int sk : kSigns) total += p.at(s, sj, sk) * u(r, sj, sk);
    return total / mass;
  };
  TruthfulnessVerdict v;
  v.gap_plus = value(1, 1) - value(1, -1);
  v.gap_minus = value(-1, -1) - value(-1, 1);
  v.on_plus = grade(v.gap_plus);
  v.on_minus = grade(v.gap_minus);
  if (v.on_plus == Truthfulness::Violated || v.on_minus == Truthfulness::Violated) v.overall = Truthfulness::Violated;
  else if (v.on_plus == Truthfulness::Weak || v.on_minus == Truthfulness::Weak) v.overall = Truthfulness::Weak;
  else v.overall = Truthfulness::Strict;
  return v;
}

TripleDistribution random_dominant_triple(Rng& rng, double min_margin) {
  std::exponential_distribution<double> expo(1.0);
  for (std::size_t attempt = 0; attempt < 1'000'000; ++attempt) {
    std::array<double, 8> p{};
    double total = 0.0;
    for (double& x : p) total += x = expo(rng);
    for (double& x : p) x /= total;
    total = 0.0;
    for (double x : p) total += x;
    p[0] += 1.0 - total;
    if (p[0] < 0.0) continue;
    const TripleDistribution t(p);
    const DominanceReport r = is_uniformly_dominant(t);
    if (r.delta_plus > min_margin && r.delta_minus > min_margin) return t;
  }
  throw RuntimeError("could not sample a dominant triple with the requested margin");
}

SearchResult uniqueness_search(const PaymentFunction& u, const SearchOptions& options) {
  SearchResult result;
  if (auto form = is_affine_bpp(u)) {
    result.outcome = SearchOutcome::Certificate;
    result.certificate = form;
    return result;
  }

  const PairTable d = decompose(u).d;
  const double a = 0.5 * (d(1, -1) + d(-1, 1));
  const double b = d(1, -1) - d(-1, 1);

  // Besides the grid, try parameters derived from D at which the witness inequality for this U
  // already fails; the fixed grid misses U whose defect is smaller than the finest grid value.
  std::vector<double> deltas = options.grid;
  if (b > 0.0 && a != 0.0) deltas.push_back(std::min(0.5, std::abs(a) / (2.0 * b)));
  std::vector<double> eps_plus = options.grid;
  std::vector<double> eps_minus = options.grid;
  const double bpos = std::max(b, 0.0);
  if (d(1, 1) != 0.0) eps_plus.push_back(std::min(1.0, std::abs(d(1, 1)) / (std::abs(d(1, 1)) + bpos)));
  if (d(-1, -1) != 0.0) eps_minus.push_back(std::min(1.0, std::abs(d(-1, -1)) / (std::abs(d(-1, -1)) + bpos)));

  auto try_family = [&](const char* name, const std::vector<double>& params, TripleDistribution (*make)(double)) {
    for (double x : params) {
      if (!(x > 0.0)) continue;
      if (std::string(name) == "p1" && x > 0.5) continue;
      if (x > 1.0) continue;
      const TripleDistribution p = make(x);
      if (!is_uniformly_dominant(p).dominant) continue;
      const TruthfulnessVerdict v = truthfulness_audit(u, p);
      if (v.overall != Truthfulness::Strict) {
        result.outcome = SearchOutcome::Counterexample;
        result.counterexample = p;
        result.family = name;
        result.parameter = x;
        result.verdict = v;
        return true;
      }
    }
    return false;
  };
  if (try_family("p1", deltas, witness_p1)) return result;
  if (try_family("p2", eps_plus, witness_p2)) return result;
  if (try_family("p2_mirror", eps_minus, witness_p2_mirror)) return result;

  Rng rng(options.seed);
  for (std::size_t t = 0; t < options.random_trials; ++t) {
    const TripleDistribution p = random_dominant_triple(rng);
    const TruthfulnessVerdict v = truthfulness_audit(u, p);
    if (v.overall != Truthfulness::Strict) {
      result.outcome = SearchOutcome::Counterexample;
      result.counterexample = p;
      result.family = "random";
      result.verdict = v;
      return result;
    }
  }
  result.outcome = SearchOutcome::Inconclusive;
  return result;
}

}  // namespace bpp
