#ifndef EYEKIT_RNG_HPP
#define EYEKIT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace eyekit {

// The standard <random> distributions are not bit-portable across library
// implementations; these mappings over mt19937_64 are, which keeps seeded
// outputs byte-identical everywhere.

inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

/// Box-Muller; draws two uniforms and keeps one output.
inline double gaussian(std::mt19937_64& rng, double mean, double sigma) {
    const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53; // (0, 1]
    const double u2 = uniform01(rng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + sigma * r * std::cos(6.283185307179586476925286766559 * u2);
}

/// splitmix64 step, for deriving independent stream seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace eyekit

#endif
