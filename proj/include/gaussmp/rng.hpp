#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace gaussmp {

// Repo-wide RNG contract
// ----------------------
// Generator: std::mt19937_64, seeded directly with the user-supplied 64-bit
// seed. Uniform doubles take the top 53 bits of each draw, u = (x >> 11) *
// 2^-53 in [0, 1). Standard normals come from the Box-Muller transform on
// consecutive uniform pairs (the second value of each pair is cached), so a
// seed consumes the underlying stream at a fixed, reproducible rate.
// std::normal_distribution is deliberately not used: its algorithm is
// implementation-defined and would break cross-platform reproducibility.
//
// Identical seeds give identical streams wherever doubles are IEEE-754 and
// libm's log/cos/sin are correctly rounded.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Per-item substream seed: the item index is hashed into the base seed, so
// ensemble generation can be parallelized across states without coordination.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    return splitmix64(base ^ splitmix64(index + 1));
}

class NormalSampler {
  public:
    explicit NormalSampler(std::uint64_t seed) : gen_(seed) {}

    // [0, 1)
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // N(0, 1)
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * M_PI * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

  private:
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace gaussmp
