#pragma once

#include <cstdint>
#include <random>

namespace fastarma::bench {

using Engine = std::mt19937_64;

/// Replication index reserved for bootstrap resampling of a cell.
inline constexpr std::uint64_t kBootstrapStream = ~std::uint64_t(0);

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed of the (cell, replication) substream. Each replication draws from
/// its own engine, so results do not depend on how work is scheduled.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t cell, std::uint64_t rep)
{
    return splitmix64(splitmix64(splitmix64(seed) ^ cell) ^ rep);
}

inline Engine make_engine(std::uint64_t seed, std::uint64_t cell, std::uint64_t rep)
{
    std::seed_seq seq{static_cast<std::uint32_t>(substream_seed(seed, cell, rep)),
                      static_cast<std::uint32_t>(substream_seed(seed, cell, rep) >> 32),
                      static_cast<std::uint32_t>(cell), static_cast<std::uint32_t>(rep)};
    return Engine(seq);
}

}  // namespace fastarma::bench
