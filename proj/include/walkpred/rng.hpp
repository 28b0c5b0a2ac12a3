#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace walkpred {

// Order-sensitive mix of seed components; splitmix64 finaliser per component.
std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts);

// Uniform integer in [0, bound) by rejection; same sequence on every platform
// (std::uniform_int_distribution is implementation-defined).
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

// count distinct indices from [0, total), in draw order (partial Fisher-Yates).
std::vector<std::size_t> sample_without_replacement(std::size_t total, std::size_t count, std::mt19937_64& rng);

}  // namespace walkpred
