#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <random>
#include <vector>

namespace bioassay {

/// How Monte-Carlo replicate loops run. `serial` is the reference path;
/// `parallel` distributes replicates over OpenMP threads and must produce
/// identical per-replicate results.
enum class Execution { serial, parallel };

/// SplitMix64 finalizer. Replicate i of a study seeded with s draws from
/// std::mt19937_64(derive_seed(s, i)), so results do not depend on which
/// thread ran the replicate.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::mt19937_64 replicate_engine(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(derive_seed(seed, index));
}

/// Runs fn(i) for i in [0, count) and collects the results in index order.
template <class Fn>
auto run_replicates(std::size_t count, Fn&& fn, Execution exec)
    -> std::vector<decltype(fn(std::size_t{}))> {
  using Result = decltype(fn(std::size_t{}));
  std::vector<Result> out(count);
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  const auto n = static_cast<std::int64_t>(count);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(bioassay_replicate_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace bioassay
