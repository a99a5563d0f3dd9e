#pragma once

#include <cstdint>

namespace traj_manifold {

/**
 * Counter-based pseudorandom generator used by the synthetic generator.
 *
 * Output i of stream `seed` is the SplitMix64 finalizer applied to
 * seed + (i+1) * 0x9E3779B97F4A7C15. The constants are fixed so generated
 * datasets are reproducible across implementations; see the README format
 * notes.
 */
struct CounterRng {
    std::uint64_t seed = 0;

    std::uint64_t bits(std::uint64_t counter) const;

    /// Uniform double in [0, 1), 53 mantissa bits of `bits(counter)`.
    double uniform01(std::uint64_t counter) const;

    /// Standard Gaussian via Box-Muller on counters (2*pair_index,
    /// 2*pair_index + 1); one deviate per pair, the sine twin is discarded.
    double gaussian(std::uint64_t pair_index) const;
};

} // namespace traj_manifold
