#ifndef ROCKETQD_UTIL_SEED_HPP
#define ROCKETQD_UTIL_SEED_HPP

#include <cstdint>

namespace rocketqd {

    // splitmix64 finalizer
    inline std::uint64_t mix64(std::uint64_t z)
    {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) { return mix64(mix64(a) ^ b); }

} // namespace rocketqd

#endif
