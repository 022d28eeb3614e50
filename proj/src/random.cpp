#include "playbench/random.hpp"

#include <string>

namespace playbench {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t fnv1a64(std::string_view bytes, uint64_t h) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

uint64_t episode_seed(uint64_t run_seed, std::string_view game, std::string_view experiment,
                      int64_t instance_id) {
  uint64_t h = fnv1a64(game);
  h = fnv1a64(std::string_view("\x1f", 1), h);
  h = fnv1a64(experiment, h);
  h = fnv1a64(std::string_view("\x1f", 1), h);
  h = fnv1a64(std::to_string(instance_id), h);
  return splitmix64(run_seed ^ splitmix64(h));
}

uint64_t role_seed(uint64_t episode_seed, std::string_view role) {
  return splitmix64(episode_seed ^ fnv1a64(role));
}

uint64_t Rng::index(uint64_t n) {
  if (n <= 1) return 0;
  // Rejection keeps the draw unbiased.
  const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

}  // namespace playbench
