// Reproducible random streams. Every Monte Carlo task derives its own engine
// from (seed, stream index), so results do not depend on how work is split
// across threads.
#pragma once

#include <cstdint>
#include <random>

namespace haloscan {

// SplitMix64 finalizer applied to the pair (seed, stream).
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream);

inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(derive_stream_seed(seed, stream));
}

}  // namespace haloscan
