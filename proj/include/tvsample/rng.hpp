#pragma once

#include <cstdint>
#include <random>

namespace tvsample {

using Rng = std::mt19937_64;

/// Master seed plus substream index. Substreams are derived by mixing both
/// words through splitmix64, so (seed, stream) pairs give independent-looking
/// engines. Reproducible within one build; the standard distributions used on
/// top of the engine are implementation-defined, so cross-toolchain
/// bit-exactness is not promised.
struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  /// Child substream, e.g. one per trial.
  RngSeed derive(std::uint64_t index) const;

  Rng engine() const;
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace tvsample
