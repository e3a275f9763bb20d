#ifndef M2V_RNG_HPP
#define M2V_RNG_HPP

#include <cstdint>
#include <vector>

namespace m2v {

// splitmix64 generator. Used instead of <random> engines plus distributions
// because distribution output is implementation-defined; every artifact this
// toolkit writes must be byte-identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Unbiased draw in [0, bound) by rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform in [0, 1) with 53 bits of precision.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // Derives an independent stream, e.g. one per record or per run.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
        Rng r(seed ^ (0x6a09e667f3bcc909ull + stream * 0x9e3779b97f4a7c15ull));
        return r.next_u64();
    }

private:
    std::uint64_t state_;
};

}  // namespace m2v

#endif  // M2V_RNG_HPP
