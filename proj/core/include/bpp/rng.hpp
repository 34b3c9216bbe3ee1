#pragma once

#include <cstdint>
#include <random>

namespace bpp {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Deterministic child seed for (master, a, b). Distinct inputs give
/// statistically independent streams, so results do not depend on the order
/// in which work items are processed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) noexcept;

inline Rng make_rng(std::uint64_t seed) { return Rng{seed}; }

/// Fair ±1 coin.
int fair_sign(Rng& rng);

}  // namespace bpp
