#pragma once

#include <cstdint>

namespace predpower {

/// Counter-based generator: the k-th output of stream (seed, stream) is a
/// pure function of (seed, stream, k), so streams can be consumed in any
/// order or on any thread and still reproduce bit for bit.
///
/// Output k is the SplitMix64 finalizer applied to key + (k + 1) * gamma,
/// where key is itself a finalized mix of seed and stream.
class CounterRng {
public:
    using result_type = std::uint64_t;

    CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
        : key_(mix(seed ^ mix(stream + kGamma))) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    result_type operator()() noexcept { return mix(key_ + (++counter_) * kGamma); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    std::uint64_t counter() const noexcept { return counter_; }

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace predpower
