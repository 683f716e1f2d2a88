#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Every output
// block is a pure function of (counter, key), so a simulation run can address
// its random numbers directly instead of advancing shared state.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace votexfer::rng {

using Philox4x32Counter = std::array<std::uint32_t, 4>;
using Philox4x32Key = std::array<std::uint32_t, 2>;

inline constexpr std::string_view kGeneratorName = "philox4x32-10";

namespace detail {

inline constexpr std::uint32_t kMul0 = 0xD2511F53u;
inline constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
inline constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

constexpr void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
    const std::uint64_t p = std::uint64_t{a} * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

}  // namespace detail

constexpr Philox4x32Counter philox4x32_10(Philox4x32Counter ctr, Philox4x32Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += detail::kWeyl0;
            key[1] += detail::kWeyl1;
        }
        std::uint32_t hi0 = 0, lo0 = 0, hi1 = 0, lo1 = 0;
        detail::mulhilo(detail::kMul0, ctr[0], hi0, lo0);
        detail::mulhilo(detail::kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

/// Uniform doubles in [0, 1) for one (seed, stream) pair. Value i of the
/// stream depends only on (seed, stream, i).
class Substream {
public:
    constexpr Substream(std::uint64_t seed, std::uint64_t stream) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_lo_(static_cast<std::uint32_t>(stream)),
          stream_hi_(static_cast<std::uint32_t>(stream >> 32)) {}

    /// 64 random bits at position i.
    constexpr std::uint64_t bits(std::uint64_t i) const noexcept {
        const auto block = philox4x32_10(counter(i / 2), key_);
        const std::size_t lane = (i % 2) * 2;
        return (std::uint64_t{block[lane]} << 32) | block[lane + 1];
    }

    /// Fills out[0..n) with consecutive uniforms starting at position 0.
    template <typename OutIt>
    constexpr void fill_uniform(OutIt out, std::uint64_t n) const noexcept {
        for (std::uint64_t b = 0; 2 * b < n; ++b) {
            const auto block = philox4x32_10(counter(b), key_);
            *out++ = to_unit((std::uint64_t{block[0]} << 32) | block[1]);
            if (2 * b + 1 < n) *out++ = to_unit((std::uint64_t{block[2]} << 32) | block[3]);
        }
    }

    static constexpr double to_unit(std::uint64_t bits) noexcept {
        return static_cast<double>(bits >> 11) * 0x1.0p-53;
    }

private:
    constexpr Philox4x32Counter counter(std::uint64_t block) const noexcept {
        return {static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32), stream_lo_, stream_hi_};
    }

    Philox4x32Key key_;
    std::uint32_t stream_lo_;
    std::uint32_t stream_hi_;
};

/// SplitMix64 finalizer; used to derive per-cell seeds from a master seed.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace votexfer::rng
