#ifndef POPALIGN_RNG_HPP
#define POPALIGN_RNG_HPP

#include <cstdint>

namespace popalign {

/// SplitMix64 (Steele/Lea/Flood). Identical output on every platform and
/// trivially seedable, which is what the determinism contracts rely on.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in (0, 1]; safe as a log() or pow() argument.
    double next_double_open0() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

/// Derives the seed of an independent substream addressed by (tag, index).
/// Any substream can be opened directly, so per-cell draws do not depend on
/// evaluation order or thread count.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
    SplitMix64 mix(seed ^ (0x632be59bd9b4e019ULL * (tag + 1)));
    const std::uint64_t folded = mix.next_u64() ^ (0xd1b54a32d192ed03ULL * (index + 1));
    return SplitMix64(folded).next_u64();
}

} // namespace popalign

#endif
