#pragma once

#include <cstdint>

namespace tiltedstop {

// Identifies a reproducible stream of random draws. Equal (seed, stream_id)
// pairs give bitwise-identical draw sequences on every platform.
struct RandomSource {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  // Child stream for block `index`; used to split work without overlap.
  RandomSource substream(std::uint64_t index) const noexcept;
};

// xoshiro256** seeded from (seed, stream_id) through SplitMix64.
class Generator {
 public:
  explicit Generator(const RandomSource& source) noexcept;

  std::uint64_t next() noexcept;
  // Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t s_[4];
};

std::uint64_t splitmix64(std::uint64_t& state) noexcept;

}  // namespace tiltedstop
