#include "tvsample/rng.hpp"

namespace tvsample {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RngSeed RngSeed::derive(std::uint64_t index) const {
  std::uint64_t state = stream ^ (index * 0xD1B54A32D192ED03ULL);
  return RngSeed{seed, splitmix64(state) ^ index};
}

Rng RngSeed::engine() const {
  std::uint64_t state = seed;
  const auto a = splitmix64(state);
  state ^= stream;
  const auto b = splitmix64(state);
  const auto c = splitmix64(state);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                    static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
  return Rng(seq);
}

}  // namespace tvsample
