#pragma once

#include <cstdint>

namespace altroot {

enum class RngStream : std::uint64_t {
  Reconsider = 1,
  Intrinsic = 2,
  BulkReassign = 3,
};

/// Stateless counter-based generator: every draw is a hash of
/// (seed, stream, step, index, extra), so results do not depend on the order
/// in which agents are visited.
class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t seed) : seed_(seed) {}

  static constexpr std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  constexpr std::uint64_t bits(RngStream stream, std::uint64_t step, std::uint64_t index,
                               std::uint64_t extra = 0) const {
    std::uint64_t h = mix(seed_);
    h = mix(h ^ static_cast<std::uint64_t>(stream));
    h = mix(h ^ step);
    h = mix(h ^ index);
    return mix(h ^ extra);
  }

  // Uniform on [0, 1) with 53 bits of precision.
  constexpr double uniform(RngStream stream, std::uint64_t step, std::uint64_t index,
                           std::uint64_t extra = 0) const {
    return static_cast<double>(bits(stream, step, index, extra) >> 11) * 0x1.0p-53;
  }

  constexpr std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

}  // namespace altroot
