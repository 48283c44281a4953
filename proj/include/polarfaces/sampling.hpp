#pragma once

// Deterministic sample-parallel reductions. Every sample i draws from its own
// seed, so the serial and OpenMP drivers see identical samples and the merge
// (largest value, smallest index on ties) makes their results identical.

#include <cstdint>
#include <functional>
#include <limits>

namespace polar {

enum class ExecPolicy { serial, parallel };

std::uint64_t splitmix64(std::uint64_t x);

/// Seed of sample `index` in a run with base seed `seed`.
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index);

struct WorstSample {
  double value = -std::numeric_limits<double>::infinity();
  std::size_t index = std::numeric_limits<std::size_t>::max();

  bool found() const { return index != std::numeric_limits<std::size_t>::max(); }
};

/// max_i score(i) over i in [0, count) together with the first index attaining it.
WorstSample worst_sample(std::size_t count, ExecPolicy policy, const std::function<double(std::size_t)>& score);

/// Number of worker threads the parallel driver uses.
int parallel_workers();

}  // namespace polar
