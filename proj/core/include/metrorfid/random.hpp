#pragma once

#include <cstdint>
#include <random>

namespace metrorfid {

// Every trial owns one engine; nothing is shared across trials.
using Rng = std::mt19937_64;

// SplitMix64 finalizer. Used to derive independent per-trial seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// trial_seed = mix64(mix64(master_seed) ^ index). Depends only on the pair,
// so trials can run in any order.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
  return mix64(mix64(master_seed) ^ index);
}

}  // namespace metrorfid
