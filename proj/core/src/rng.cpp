#include "traj_manifold/rng.hpp"

#include <cmath>
#include <numbers>

namespace traj_manifold {

std::uint64_t CounterRng::bits(std::uint64_t counter) const {
    // SplitMix64: golden-ratio increment, then the finalizer.
    std::uint64_t x = seed + (counter + 1) * 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

double CounterRng::uniform01(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
}

double CounterRng::gaussian(std::uint64_t pair_index) const {
    // Box-Muller; u1 in (0, 1] keeps the log finite.
    const double u1 = static_cast<double>((bits(2 * pair_index) >> 11) + 1) * 0x1.0p-53;
    const double u2 = uniform01(2 * pair_index + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace traj_manifold
