#pragma once

// Brute-force reference computations used as independent oracles by the tests.
// Nothing here calls into the library's own inference code.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

namespace oracle {

using Perm = std::vector<std::size_t>;  // item -> position

inline std::vector<Perm> all_perms(std::size_t n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  std::vector<Perm> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline std::size_t inversions(const Perm& x, const Perm& y) {
  std::size_t d = 0;
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t b = a + 1; b < x.size(); ++b)
      if ((x[a] < x[b]) != (y[a] < y[b])) ++d;
  return d;
}

/// Exact Mallows law around the identity: permutation -> probability.
inline std::map<Perm, double> mallows_law(double eta, std::size_t n) {
  Perm id(n);
  std::iota(id.begin(), id.end(), std::size_t{0});
  std::map<Perm, double> law;
  double z = 0.0;
  for (const auto& p : all_perms(n)) z += law[p] = std::exp(-eta * static_cast<double>(inversions(id, p)));
  for (auto& [p, w] : law) w /= z;
  return law;
}

/// Pr[item a placed above item b] under the Mallows law around the identity.
inline double mallows_pair(double eta, std::size_t n, std::size_t a, std::size_t b) {
  double total = 0.0;
  for (const auto& [p, w] : mallows_law(eta, n))
    if (p[a] < p[b]) total += w;
  return total;
}

/// Triple law of (S(a,a'), S(a'',a'), S(a'',a)) for a uniform prior over reference rankings, where a
/// pair `g` apart in the reference is won by the higher item with probability win(g).
template <class Win>
std::array<double, 8> ranking_triple(std::size_t n, std::size_t a, std::size_t a1, std::size_t a2, Win win) {
  std::array<double, 8> out{};
  const auto perms = all_perms(n);
  const double w = 1.0 / static_cast<double>(perms.size());
  auto pr = [&](const Perm& ref, std::size_t x, std::size_t y) {
    if (ref[x] < ref[y]) return win(ref[y] - ref[x]);
    return 1.0 - win(ref[x] - ref[y]);
  };
  for (const auto& ref : perms) {
    const double pi = pr(ref, a, a1), pj = pr(ref, a2, a1), pk = pr(ref, a2, a);
    for (int c = 0; c < 8; ++c) {
      const bool si = c & 4, sj = c & 2, sk = c & 1;
      out[static_cast<std::size_t>(c)] +=
          w * (si ? pi : 1 - pi) * (sj ? pj : 1 - pj) * (sk ? pk : 1 - pk);
    }
  }
  return out;
}

/// Pr[s] for an Ising model by direct summation of exp(H) over all 2^n configurations.
inline std::vector<double> ising_table(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                       const std::vector<double>& beta, const std::vector<double>& alpha) {
  std::vector<double> w(std::size_t{1} << n);
  double z = 0.0;
  for (std::size_t c = 0; c < w.size(); ++c) {
    auto s = [&](std::size_t v) { return (c >> v) & 1 ? 1.0 : -1.0; };
    double h = 0.0;
    for (std::size_t e = 0; e < edges.size(); ++e) h += beta[e] * s(edges[e].first) * s(edges[e].second);
    for (std::size_t v = 0; v < n; ++v) h += alpha[v] * s(v);
    z += w[c] = std::exp(h);
  }
  for (double& x : w) x /= z;
  return w;
}

/// Expected bpp payment of an agent reporting r given S_i = s, enumerated over the 8-cell law p
/// and the peers' 2x2 strategies sigma[s][r] (index 0 = -1, 1 = +1).
inline double conditional_payment(const std::array<double, 8>& p, const double sj_sigma[2][2],
                                  const double sk_sigma[2][2], int s, int r) {
  double num = 0.0, den = 0.0;
  for (int c = 0; c < 8; ++c) {
    const int si = (c & 4) ? 1 : -1, sj = (c & 2) ? 1 : -1, sk = (c & 1) ? 1 : -1;
    if (si != s) continue;
    den += p[static_cast<std::size_t>(c)];
    for (int rj : {-1, 1})
      for (int rk : {-1, 1})
        num += p[static_cast<std::size_t>(c)] * sj_sigma[sj > 0][rj > 0] * sk_sigma[sk > 0][rk > 0] *
               static_cast<double>(r * rj - r * rk);
  }
  return num / den;
}

}  // namespace oracle
