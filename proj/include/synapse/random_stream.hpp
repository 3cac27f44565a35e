#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace synapse {

/**
 * Counter-based pseudo-random stream.
 *
 * The n-th output is a pure function of (key, n): SplitMix64's finaliser
 * applied to key + n * golden_gamma. Substreams are derived by hashing a
 * label into the key, so independent streams can be handed to workers
 * without sharing state. Satisfies UniformRandomBitGenerator.
 */
class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t key) noexcept : key_(key) {}

    /// Stream for one (series, timestep, model) triple under a run seed.
    static RandomStream for_draw(std::uint64_t seed, std::string_view series_id, std::uint64_t timestep,
                                 std::string_view model);

    RandomStream substream(std::string_view label) const;
    RandomStream substream(std::uint64_t index) const;

    std::uint64_t key() const noexcept { return key_; }
    std::uint64_t counter() const noexcept { return counter_; }

    result_type operator()() noexcept;

    /// Uniform draw strictly inside (0, 1).
    double uniform() noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// SplitMix64 finaliser.
std::uint64_t mix64(std::uint64_t z) noexcept;

/// FNV-1a over the bytes of `text`, seeded with `basis`.
std::uint64_t hash_bytes(std::string_view text, std::uint64_t basis = 0xcbf29ce484222325ULL) noexcept;

} // namespace synapse
