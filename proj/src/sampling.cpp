#include "polarfaces/sampling.hpp"

#include <omp.h>

#include <cmath>

namespace polar {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed + 0x9E3779B97F4A7C15ull * (index + 1));
}

namespace {

void merge(WorstSample& into, WorstSample other) {
  if (!other.found()) return;
  if (std::isnan(other.value)) other.value = std::numeric_limits<double>::infinity();
  if (!into.found() || other.value > into.value || (other.value == into.value && other.index < into.index))
    into = other;
}

}  // namespace

WorstSample worst_sample(std::size_t count, ExecPolicy policy, const std::function<double(std::size_t)>& score) {
  WorstSample best;
  if (policy == ExecPolicy::serial) {
    for (std::size_t i = 0; i < count; ++i) merge(best, {score(i), i});
    return best;
  }
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel
  {
    WorstSample local;
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) merge(local, {score(static_cast<std::size_t>(i)), static_cast<std::size_t>(i)});
#pragma omp critical(polar_worst_sample)
    merge(best, local);
  }
  return best;
}

int parallel_workers() { return omp_get_max_threads(); }

}  // namespace polar
