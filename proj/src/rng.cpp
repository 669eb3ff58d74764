#include "rtdp/rng.hpp"

namespace rtdp {

namespace {

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

}  // namespace

std::uint64_t fnv1a64(const void* data, std::size_t len, std::uint64_t basis) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = basis;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

RngStream RngStream::split(std::string_view name) const {
  const std::uint64_t tag = fnv1a64(name.data(), name.size());
  return RngStream(mix64(seed_ ^ tag));
}

std::uint64_t RngStream::next_u64() {
  ++counter_;
  return mix64(seed_ + counter_ * kGolden);
}

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

int RngStream::uniform_int(int n) {
  // Lemire's multiply-shift; bias is negligible for the small n used here.
  const unsigned __int128 wide =
      static_cast<unsigned __int128>(next_u64()) * static_cast<unsigned __int128>(n);
  return static_cast<int>(wide >> 64);
}

}  // namespace rtdp
