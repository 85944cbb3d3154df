#ifndef GREYCAST_RNG_HPP
#define GREYCAST_RNG_HPP

#include <cmath>
#include <cstdint>

namespace greycast {

/// SplitMix64. Hand-rolled so that seeded runs are bit-identical across
/// platforms and standard libraries (std::normal_distribution is not).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (no cached spare; keeps streams simple).
    double gaussian() {
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

    /// Derives an independent substream keyed by (a, b). Used to partition
    /// the master seed per generation and individual so evaluation order
    /// cannot change results.
    static Rng substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
        Rng mixer(seed ^ (a * 0xd1342543de82ef95ULL) ^ (b * 0xaf251af3b0f025b5ULL));
        std::uint64_t s = mixer.next_u64();
        return Rng(s);
    }

private:
    std::uint64_t state_;
};

} // namespace greycast

#endif
