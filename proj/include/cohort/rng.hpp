// rng.hpp - seeded random streams with platform-independent draws
#ifndef COHORT_RNG_HPP
#define COHORT_RNG_HPP

#include <cstdint>
#include <random>

namespace cohort {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Seed for stream `index` derived from `seed`. Used for Monte-Carlo run
// seeds so that parallel execution reproduces serial results:
//   derive_seed(s, i) = mix64(mix64(s) ^ mix64(i + 1))
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index)
{
    return mix64(mix64(seed) ^ mix64(index + 1));
}

// mt19937_64 with its own bounded-integer and unit-interval draws; the
// std:: distributions are implementation-defined and would break
// cross-toolchain reproducibility.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform integer in [0, n). n must be > 0.
    std::uint64_t below(std::uint64_t n)
    {
        const std::uint64_t limit = (~std::uint64_t{0} / n) * n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double unit()
    {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace cohort

#endif // COHORT_RNG_HPP
