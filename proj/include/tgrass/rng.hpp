#pragma once

#include <array>
#include <cstdint>

namespace tgrass {

/// xoshiro256** stream seeded through SplitMix64. Same seed gives the same
/// sequence. Replicate r of an experiment uses RngStream::for_replicate(base, r),
/// whose seed is base ^ r.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed);

    static RngStream for_replicate(std::uint64_t base_seed, std::uint64_t replicate) {
        return RngStream(base_seed ^ replicate);
    }

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64() noexcept;

    /// Uniform on the open interval (0, 1) with 53-bit resolution.
    double uniform01() noexcept;
    double uniform(double a, double b);
    /// Uniform integer in [0, bound).
    std::uint64_t uniform_index(std::uint64_t bound);

    /// Inverse-CDF transform of uniform01().
    double standard_normal();
    /// Sum of squared normals for integral df, Marsaglia-Tsang gamma otherwise.
    double chi_square(double df);
    /// Gamma(shape, scale = 1) by Marsaglia-Tsang.
    double gamma(double shape);

private:
    std::uint64_t seed_;
    std::array<std::uint64_t, 4> state_;
};

}  // namespace tgrass
