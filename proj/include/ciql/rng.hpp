#ifndef CIQL_RNG_HPP
#define CIQL_RNG_HPP

#include <cstdint>

// Seeded split-stream generator. The stream for trial i is seeded by
// mix(masterSeed, i), where mix is the splitmix64 finalizer applied to
// masterSeed xor a golden-ratio multiple of the stream index. Streams
// are therefore independently derivable and schedule-independent.

namespace ciql {

inline std::uint64_t splitmix64_finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_stream(std::uint64_t master_seed, std::uint64_t index) {
    return splitmix64_finalize(master_seed ^ ((index + 1) * 0x9E3779B97F4A7C15ull));
}

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static SplitMix64 stream(std::uint64_t master_seed, std::uint64_t index) {
        return SplitMix64(mix_stream(master_seed, index));
    }

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        return splitmix64_finalize(state_);
    }

    // Uniform in [0, n) by rejection, bias-free.
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t limit = ~0ull - (~0ull % n);
        std::uint64_t x;
        do { x = next(); } while (x >= limit);
        return x % n;
    }

private:
    std::uint64_t state_;
};

}  // namespace ciql

#endif  // CIQL_RNG_HPP
