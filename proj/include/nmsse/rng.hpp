// rng.hpp — counter-seeded per-trajectory random streams
//
// Each trajectory owns a stream derived from (master_seed, index) through a
// splitmix64 mix, so results do not depend on execution order or thread count.

#pragma once

#include <cmath>
#include <cstdint>

#include "nmsse/types.hpp"

namespace nmsse {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256** seeded from the hashed (master, index) pair.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index) {
        std::uint64_t mix = master_seed ^ (0x6a09e667f3bcc909ULL + stream_index * 0x9e3779b97f4a7c15ULL);
        for (auto& word : state_) word = splitmix64(mix);
        has_cached_ = false;
    }

    std::uint64_t next_u64() {
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

    // uniform in (0, 1]; never returns 0 so log() below is safe
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    // standard normal via Box-Muller
    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * kPi * u2;
        cached_ = r * std::sin(a);
        has_cached_ = true;
        return r * std::cos(a);
    }

    // complex Gaussian with <g g*> = 1, <g g> = 0
    Complex complex_normal() {
        const double x = normal();
        const double y = normal();
        return Complex{x, y} * 0.7071067811865475244;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4];
    double cached_{0.0};
    bool has_cached_{false};
};

}  // namespace nmsse
