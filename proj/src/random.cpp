#include "tiltedstop/random.hpp"

namespace tiltedstop {
namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

std::uint64_t mix(std::uint64_t x) noexcept {
  std::uint64_t state = x;
  return splitmix64(state);
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RandomSource RandomSource::substream(std::uint64_t index) const noexcept {
  return {seed, mix(stream_id ^ rotl(mix(index + 0x632be59bd9b4e019ULL), 17))};
}

Generator::Generator(const RandomSource& source) noexcept {
  std::uint64_t state = source.seed ^ rotl(mix(source.stream_id), 29);
  for (auto& word : s_) word = splitmix64(state);
  // All-zero state is a fixed point of xoshiro.
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

std::uint64_t Generator::next() noexcept {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

}  // namespace tiltedstop
