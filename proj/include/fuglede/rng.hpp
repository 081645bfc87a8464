#pragma once

#include <cstdint>
#include <random>

namespace fuglede {

/// SplitMix64 finalizer. Used to derive per-batch seeds so results do not depend on scheduling.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed of batch `batch` under `master`: splitmix64(splitmix64(master) ^ batch).
constexpr std::uint64_t batch_seed(std::uint64_t master, std::uint64_t batch) noexcept
{
    return splitmix64(splitmix64(master) ^ batch);
}

/// mt19937_64 with a portable bounded draw (std distributions differ between standard libraries).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, bound); bound > 0. Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t bound)
    {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x = engine_();
        while (x >= limit)
            x = engine_();
        return x % bound;
    }

    bool coin() { return (engine_() >> 63) != 0; }

private:
    std::mt19937_64 engine_;
};

} // namespace fuglede
