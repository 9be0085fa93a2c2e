#pragma once

#include <cstdint>
#include <random>

namespace pess {

// splitmix64 finalizer; used both for seed mixing and substream derivation.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seeded random stream. split() derives an independent substream from the
// original seed and a salt, regardless of how much of this stream has been
// consumed, so candidate substreams can be pre-split deterministically.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

  RngStream split(std::uint64_t salt) const {
    return RngStream(seed_ ^ mix64(salt ^ 0xd1b54a32d192ed03ULL));
  }

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  std::uint64_t next_u64() { return engine_(); }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace pess
