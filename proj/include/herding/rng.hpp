#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace herding {

/// Philox4x32-10 counter-based generator. Output is a pure function of
/// (counter, key), so every Monte Carlo path owns an independent stream
/// addressed by (seed, path index) regardless of thread scheduling.
class Philox4x32 {
public:
    using Block = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Block generate(Block ctr, Key key) noexcept
    {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
        }
        return ctr;
    }

private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
};

/// Standard normal draws for one (seed, stream) pair. Draw k of the stream is
/// fixed by k alone; each Philox block yields two Box-Muller normals.
class NormalStream {
public:
    NormalStream(std::uint64_t seed, std::uint64_t stream) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_(stream)
    {
    }

    double next() noexcept
    {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const auto block = Philox4x32::generate(
            {static_cast<std::uint32_t>(counter_), static_cast<std::uint32_t>(counter_ >> 32),
             static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
            key_);
        ++counter_;
        // (0, 1] for the log argument, [0, 1) for the angle.
        const double u1 = (static_cast<double>(combine(block[0], block[1]) >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = static_cast<double>(combine(block[2], block[3]) >> 11) * 0x1.0p-53;
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    static std::uint64_t combine(std::uint32_t hi, std::uint32_t lo) noexcept
    {
        return (std::uint64_t{hi} << 32) | lo;
    }

    Philox4x32::Key key_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace herding
