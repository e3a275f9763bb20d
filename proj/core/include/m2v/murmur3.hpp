#ifndef M2V_MURMUR3_HPP
#define M2V_MURMUR3_HPP

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "m2v/errors.hpp"

namespace m2v {

// 32-bit MurmurHash3 (x86 variant). Deterministic for a given (data, seed)
// on every platform: blocks and tail bytes are consumed in little-endian
// order regardless of host byte order.
inline std::uint32_t murmur3_32(std::string_view data, std::uint32_t seed = 0) {
    constexpr std::uint32_t c1 = 0xcc9e2d51u;
    constexpr std::uint32_t c2 = 0x1b873593u;

    auto rotl = [](std::uint32_t x, int r) -> std::uint32_t {
        return (x << r) | (x >> (32 - r));
    };

    const auto* bytes = reinterpret_cast<const unsigned char*>(data.data());
    const std::size_t n = data.size();
    const std::size_t nblocks = n / 4;

    std::uint32_t h = seed;

    for (std::size_t i = 0; i < nblocks; ++i) {
        const unsigned char* p = bytes + 4 * i;
        std::uint32_t k = static_cast<std::uint32_t>(p[0]) |
                          (static_cast<std::uint32_t>(p[1]) << 8) |
                          (static_cast<std::uint32_t>(p[2]) << 16) |
                          (static_cast<std::uint32_t>(p[3]) << 24);
        k *= c1;
        k = rotl(k, 15);
        k *= c2;
        h ^= k;
        h = rotl(h, 13);
        h = h * 5 + 0xe6546b64u;
    }

    const unsigned char* tail = bytes + 4 * nblocks;
    std::uint32_t k = 0;
    switch (n & 3) {
        case 3: k ^= static_cast<std::uint32_t>(tail[2]) << 16; [[fallthrough]];
        case 2: k ^= static_cast<std::uint32_t>(tail[1]) << 8; [[fallthrough]];
        case 1:
            k ^= tail[0];
            k *= c1;
            k = rotl(k, 15);
            k *= c2;
            h ^= k;
    }

    h ^= static_cast<std::uint32_t>(n);
    h ^= h >> 16;
    h *= 0x85ebca6bu;
    h ^= h >> 13;
    h *= 0xc2b2ae35u;
    h ^= h >> 16;
    return h;
}

// Table position of a key under table size m. Plain modulo, since useful
// table sizes are rarely powers of two.
inline std::uint64_t bucket_of(std::string_view data, std::uint32_t seed, std::uint64_t m) {
    if (m == 0) {
        throw argument_error("bucket_of: table size m must be >= 1");
    }
    return murmur3_32(data, seed) % m;
}

}  // namespace m2v

#endif  // M2V_MURMUR3_HPP
