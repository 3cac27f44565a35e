#include "synapse/random_stream.hpp"

namespace synapse {

namespace {
constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t hash_bytes(std::string_view text, std::uint64_t basis) noexcept {
    std::uint64_t h = basis;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

RandomStream RandomStream::for_draw(std::uint64_t seed, std::string_view series_id, std::uint64_t timestep,
                                    std::string_view model) {
    return RandomStream(mix64(seed)).substream(series_id).substream(timestep).substream(model);
}

RandomStream RandomStream::substream(std::string_view label) const {
    // Length is folded in so that ("ab", "c") and ("a", "bc") differ.
    return RandomStream(mix64(hash_bytes(label, key_ ^ golden_gamma) + label.size()));
}

RandomStream RandomStream::substream(std::uint64_t index) const {
    return RandomStream(mix64(key_ + golden_gamma * (index + 1)) ^ 0x5851f42d4c957f2dULL);
}

RandomStream::result_type RandomStream::operator()() noexcept {
    ++counter_;
    return mix64(key_ + golden_gamma * counter_);
}

double RandomStream::uniform() noexcept {
    // 53 random bits, offset by half an ulp so 0 and 1 are never produced.
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

} // namespace synapse
