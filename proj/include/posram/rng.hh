#pragma once

#include <cstdint>
#include <random>

namespace posram
{
    /// Seed mixing, so one user seed can feed many independent streams.
    inline auto splitmix64(std::uint64_t x) -> std::uint64_t
    {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    inline auto derive_seed(std::uint64_t seed, std::uint64_t stream) -> std::uint64_t
    {
        return splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ull));
    }

    // std distributions are implementation-defined, so we draw from the raw
    // engine output to keep files byte-identical across standard libraries.

    /// Uniform in [0, bound), bound >= 1.
    inline auto uniform_below(std::mt19937_64 & rng, std::uint64_t bound) -> std::uint64_t
    {
        std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        for (;;) {
            auto x = rng();
            if (x < limit)
                return x % bound;
        }
    }

    inline auto bernoulli(std::mt19937_64 & rng, double p) -> bool
    {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
    }

    inline auto coin(std::mt19937_64 & rng) -> bool
    {
        return (rng() >> 63) != 0;
    }
}
