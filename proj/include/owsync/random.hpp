#pragma once

#include <cstdint>
#include <random>

namespace owsync {

using Rng = std::mt19937_64;

// splitmix64 finalizer; gives well-separated seeds for derived streams.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                    std::uint64_t substream = 0) noexcept {
    return mix_seed(mix_seed(mix_seed(master) ^ stream) ^ substream);
}

inline Rng make_rng(std::uint64_t master, std::uint64_t stream, std::uint64_t substream = 0) {
    return Rng(derive_seed(master, stream, substream));
}

}  // namespace owsync
