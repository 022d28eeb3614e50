#pragma once

// Portable seeded randomness. std::uniform_int_distribution and std::shuffle
// are implementation-defined, so generated instances would differ between
// standard libraries; these helpers only rely on the mt19937_64 bit stream.

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace playbench {

uint64_t splitmix64(uint64_t x);
uint64_t fnv1a64(std::string_view bytes, uint64_t h = 0xcbf29ce484222325ULL);

// Per-episode seed, independent of the order in which episodes run.
uint64_t episode_seed(uint64_t run_seed, std::string_view game, std::string_view experiment,
                      int64_t instance_id);

// Seed for one role inside an episode.
uint64_t role_seed(uint64_t episode_seed, std::string_view role);

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next() { return engine_(); }

  // Uniform integer in [0, n).
  uint64_t index(uint64_t n);

  // Uniform integer in [lo, hi].
  int64_t between(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(index(static_cast<uint64_t>(hi - lo) + 1));
  }

  // Uniform double in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (size_t i = items.size(); i > 1; --i) {
      size_t j = index(i);
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace playbench
