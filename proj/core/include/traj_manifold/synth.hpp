#pragma once

#include "traj_manifold/dataset.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

namespace traj_manifold {

enum class ProcessFamily {
    SwissRollTrajectories, // trajectories sweep the roll's unrolled coordinate
                           // at a parameter-determined height
    DivergingFan,          // trajectories share an initial point and diverge
                           // at parameter-determined angles
    InterleavedPair,       // two trajectories alternating along one line
};

std::string_view family_name(ProcessFamily family);
std::optional<ProcessFamily> parse_family(std::string_view name);

/**
 * Specification of a synthetic dynamic process.
 *
 * `params` holds one latent value per trajectory (height for the roll,
 * angle in radians for the fan, anything for the pair); when empty, family
 * defaults are used (heights 5*i, angles 0.8*i, {0, 1}). The same spec
 * always produces the same dataset, bit for bit.
 */
struct ProcessSpec {
    ProcessFamily family = ProcessFamily::SwissRollTrajectories;
    int trajectory_count = 6;       // T
    int points_per_trajectory = 100; // m
    int ambient_dim = 3;            // D
    double noise_sigma = 0.0;
    std::uint64_t seed = 42;
    std::vector<double> params;     // per-trajectory latent values
};

/// Generates the dataset described by `spec`. Throws ParameterError on an
/// invalid spec (T/m/D out of range for the family, wrong params size).
TrajectoryDataset generate(const ProcessSpec& spec);

/// Parses a `key = value` text spec ('#' comments allowed). Keys: family,
/// T, m, D, noise_sigma, seed, params (comma-separated).
ProcessSpec parse_process_spec(std::istream& in);

} // namespace traj_manifold
