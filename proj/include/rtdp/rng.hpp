#pragma once

#include <cstdint>
#include <string_view>

namespace rtdp {

// Counter-based deterministic random stream.
//
// Each draw is a pure function of (seed, counter), so a stream can be
// replayed exactly from its seed. Named substreams (env / mcts / net-init /
// buffer / commit) are derived by hashing the name into the seed, which keeps
// the draw sequences of different components independent: consuming more MCTS
// randomness never shifts the environment's draws.
class RngStream {
 public:
  RngStream() = default;
  explicit RngStream(std::uint64_t seed) : seed_(seed) {}

  // Derived stream with an independent draw sequence.
  RngStream split(std::string_view name) const;

  std::uint64_t next_u64();

  // Uniform in [0, 1).
  double uniform();

  // Uniform in [lo, hi).
  double uniform(double lo, double hi);

  // Uniform integer in [0, n). Requires n >= 1.
  int uniform_int(int n);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t counter_ = 0;
};

// FNV-1a 64-bit hash; also used for manifest content hashes.
std::uint64_t fnv1a64(const void* data, std::size_t len,
                      std::uint64_t basis = 1469598103934665603ull);

}  // namespace rtdp
