#include "tgrass/rng.hpp"

#include <cmath>

#include "tgrass/error.hpp"
#include "tgrass/normal.hpp"

namespace tgrass {
namespace {

std::uint64_t splitmix64(std::uint64_t& x) noexcept {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

}  // namespace

RngStream::RngStream(std::uint64_t seed) : seed_(seed) {
    std::uint64_t sm = seed;
    for (auto& s : state_) s = splitmix64(sm);
}

std::uint64_t RngStream::next_u64() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RngStream::uniform01() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::uniform(double a, double b) {
    if (!(a < b)) throw InvalidInput("uniform: require a < b");
    return a + (b - a) * uniform01();
}

std::uint64_t RngStream::uniform_index(std::uint64_t bound) {
    if (bound == 0) throw InvalidInput("uniform_index: bound must be positive");
    // Rejection sampling keeps the draw unbiased.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return x % bound;
}

double RngStream::standard_normal() { return normal_quantile(uniform01()); }

double RngStream::gamma(double shape) {
    if (!(shape > 0.0)) throw InvalidInput("gamma: shape must be positive");
    if (shape < 1.0) {
        // Gamma(a) = Gamma(a + 1) * U^{1/a}
        const double g = gamma(shape + 1.0);
        return g * std::pow(uniform01(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = standard_normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform01();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double RngStream::chi_square(double df) {
    if (!(df > 0.0)) throw InvalidInput("chi_square: df must be positive");
    const double whole = std::floor(df);
    if (whole == df && df <= 1e6) {
        double acc = 0.0;
        for (long k = 0; k < static_cast<long>(df); ++k) {
            const double z = standard_normal();
            acc += z * z;
        }
        return acc;
    }
    return 2.0 * gamma(0.5 * df);
}

}  // namespace tgrass
