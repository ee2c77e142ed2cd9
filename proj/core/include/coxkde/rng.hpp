#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace coxkde {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic random stream addressed by (master_seed, stream_index).
// Draws are built from raw mt19937_64 output with explicit transforms, so a
// given address replays the same sequence on every platform.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t master_seed, std::uint64_t stream_index = 0)
        : engine_(mix(master_seed, stream_index)) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform on [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // exponential with the given mean
    double exponential(double mean) { return -mean * std::log1p(-uniform()); }

    // standard normal (Box-Muller, second member of each pair cached)
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double radius = std::sqrt(-2.0 * std::log(1.0 - uniform()));
        const double angle = 2.0 * std::numbers::pi * uniform();
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    static constexpr std::uint64_t mix(std::uint64_t master, std::uint64_t index) noexcept {
        return splitmix64(master ^ splitmix64(index + 0x243f6a8885a308d3ULL));
    }

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace coxkde
