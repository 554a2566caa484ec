#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace lpls {

// Philox-4x32-10 counter-based generator. Value-like, splittable: the same
// (seed, stream) pair yields the same sequence on every platform, and
// distinct streams are statistically independent, which lets Monte-Carlo
// trials draw from per-trial streams regardless of scheduling.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed = 0, std::uint64_t stream = 0)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_lo_(static_cast<std::uint32_t>(stream)),
          stream_hi_(static_cast<std::uint32_t>(stream >> 32)) {}

    std::uint32_t next_u32() {
        if (buffer_pos_ == 4) {
            fill_block();
            buffer_pos_ = 0;
        }
        return buffer_[buffer_pos_++];
    }

    std::uint64_t next_u64() {
        std::uint64_t lo = next_u32();
        std::uint64_t hi = next_u32();
        return (hi << 32) | lo;
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1]; safe under log().
    double uniform_pos() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

private:
    void fill_block() {
        std::array<std::uint32_t, 4> c{static_cast<std::uint32_t>(counter_),
                                       static_cast<std::uint32_t>(counter_ >> 32),
                                       stream_lo_, stream_hi_};
        ++counter_;
        std::uint32_t k0 = key_[0], k1 = key_[1];
        for (int round = 0; round < 10; ++round) {
            std::uint64_t p0 = 0xD2511F53ull * c[0];
            std::uint64_t p1 = 0xCD9E8D57ull * c[2];
            std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        buffer_ = c;
    }

    std::array<std::uint32_t, 2> key_;
    std::uint32_t stream_lo_;
    std::uint32_t stream_hi_;
    std::uint64_t counter_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int buffer_pos_ = 4;
};

// Standard complex normal CN(0, 1): each component N(0, 1/2).
inline std::complex<double> complex_gaussian(RngStream& rng) {
    double r = std::sqrt(-std::log(rng.uniform_pos()));
    double theta = 2.0 * std::numbers::pi * rng.uniform();
    return {r * std::cos(theta), r * std::sin(theta)};
}

} // namespace lpls
