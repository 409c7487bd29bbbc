#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace linkcap {

using Rng = std::mt19937_64;

/// Name recorded in trace metadata for the stream construction below.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64/splitmix64-substream";

/// One step of the SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Derives an independent seed for stream `index` under `base`.
/// Substreams nest: derive_seed(derive_seed(s, a), b).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept;

/// Engine for substream `index` of `base`.
Rng make_stream(std::uint64_t base, std::uint64_t index);

}  // namespace linkcap
