#pragma once

#include <cstdint>

#include <boost/random/mersenne_twister.hpp>

namespace biscore {

// Boost distributions are used throughout instead of <random>'s so that a
// seed reproduces the same draws on every standard library.
using Rng = boost::random::mt19937_64;

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Derives a child seed from a parent seed and a stream index.
// mix_seed(s, i) = splitmix64(splitmix64(s) ^ i): for a fixed parent the map
// i -> child is injective, so sibling streams never share a seed.
constexpr std::uint64_t mix_seed(std::uint64_t parent, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(parent) ^ index);
}

}  // namespace biscore
