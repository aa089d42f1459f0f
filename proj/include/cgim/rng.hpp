#pragma once

#include <cstdint>
#include <initializer_list>

namespace cgim {

/// SplitMix64 finalizer; used to derive independent substream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of substream `path` under `master`. Nested ids give nested streams,
/// e.g. derive_seed(master, {round, candidate}).
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t s = mix64(master);
  for (std::uint64_t id : path) s = mix64(s ^ mix64(id + 0x632be59bd9b4e019ULL));
  return s;
}

/// Deterministic SplitMix64 stream. Seeding is free, which matters because
/// every Monte Carlo replicate opens its own substream. Output depends only on
/// the seed, never on library-specific distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed), seed_(seed) {}

  static Rng substream(std::uint64_t master, std::uint64_t stream) {
    return Rng(derive_seed(master, {stream}));
  }

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform on (0, 1].
  double uniform01() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

  /// Uniform integer in [0, bound), bound > 0. Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t state_;
  std::uint64_t seed_;
};

}  // namespace cgim
