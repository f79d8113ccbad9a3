#pragma once

#include <cmath>
#include <cstdint>

#include "snapbm/vec2.hpp"

namespace snapbm {

/// Counter-based random generator. Each (seed, stream) pair yields an
/// independent, stateless-addressable sequence: output k is a fixed mix of
/// (key, k), so results do not depend on how work is split across threads.
class CounterRng {
public:
    CounterRng(uint64_t seed, uint64_t stream) {
        key_ = mix(mix(seed) + 0x9e3779b97f4a7c15ULL * (stream + 1));
    }

    uint64_t next_u64() {
        return mix(key_ + (++ctr_) * 0x9e3779b97f4a7c15ULL);
    }

    /// uniform in (0,1), 53-bit resolution, never exactly 0 or 1
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
    }

    /// standard normal (Box-Muller, second value cached)
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    Vec2 normal_pair() {
        double a = normal();
        double b = normal();
        return {a, b};
    }

    double exponential(double rate) {
        return -std::log(uniform01()) / rate;
    }

private:
    static uint64_t mix(uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    uint64_t key_ = 0;
    uint64_t ctr_ = 0;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace snapbm
