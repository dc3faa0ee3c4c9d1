#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace qclaw {

// The engine is pinned; the helpers below avoid <random> distributions, whose
// output differs between standard library implementations.
using Rng = std::mt19937_64;

inline constexpr const char* kRngAlgorithm = "mt19937_64/splitmix64";

std::uint64_t splitmix64(std::uint64_t x);

// Independent stream for (seed, a, b), e.g. (seed, size, trial).
Rng make_stream(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0);

// Uniform integer in [0, n). n must be positive.
std::uint64_t uniform_below(Rng& rng, std::uint64_t n);

// Uniform double in [0, 1) with 53 random bits.
double uniform_unit(Rng& rng);

bool bernoulli(Rng& rng, double p);

template <class T>
void shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = uniform_below(rng, i);
    std::swap(items[i - 1], items[j]);
  }
}

// k distinct values from [0, n) in uniformly random order.
std::vector<std::uint64_t> sample_without_replacement(Rng& rng, std::uint64_t n, std::uint64_t k);

}  // namespace qclaw
