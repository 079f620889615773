#pragma once

#include <cmath>
#include <cstdint>

namespace kicklue {

// SplitMix64, used for seeding and for deriving stream seeds.
struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

// xoshiro256** with per-stream seeding. Stream `index` of a given master
// seed is statistically independent of every other index, so ensembles can
// be generated in any order (or in parallel) with identical results.
class Rng {
public:
    static Rng stream(std::uint64_t master_seed, std::uint64_t index) {
        SplitMix64 sm{master_seed};
        std::uint64_t base = sm.next();
        sm.state = base ^ (index * 0xA24BAED4963EE407ULL + 0x9E6C63D0876A9A62ULL);
        Rng r;
        for (auto& w : r.s_) w = sm.next();
        return r;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller (own implementation: the algorithm
    // behind std::normal_distribution is unspecified, this one is portable
    // and reproducible).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u = 1.0 - uniform();  // (0, 1]
        const double v = uniform();
        const double r = std::sqrt(-2.0 * std::log(u));
        const double a = 6.283185307179586476925286766559 * v;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4] = {1, 2, 3, 4};
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace kicklue
