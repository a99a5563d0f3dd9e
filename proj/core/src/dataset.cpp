#include "traj_manifold/dataset.hpp"

#include "traj_manifold/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace traj_manifold {

Index TrajectoryDataset::trajectory_size(int trajectory) const {
    Index count = 0;
    for (int t : trajectory_of) {
        if (t == trajectory) {
            ++count;
        }
    }
    return count;
}

std::vector<Index> TrajectoryDataset::points_of(int trajectory) const {
    std::vector<Index> result;
    for (Index i = 0; i < static_cast<Index>(trajectory_of.size()); ++i) {
        if (trajectory_of[i] == trajectory) {
            result.push_back(i);
        }
    }
    std::sort(result.begin(), result.end(), [&](Index a, Index b) {
        return time_index_of[a] < time_index_of[b];
    });
    return result;
}

std::vector<std::string> validate(const TrajectoryDataset& dataset) {
    std::vector<std::string> violations;
    const Index n = dataset.points.rows();
    const Index dim = dataset.points.cols();
    const int traj_count = dataset.trajectory_count();

    if (n < 2) {
        violations.push_back("dataset must contain at least 2 points, has " + std::to_string(n));
    }
    if (dim < 1) {
        violations.push_back("dataset must have at least 1 feature column");
    }
    if (traj_count < 1) {
        violations.push_back("dataset must contain at least 1 trajectory");
    }
    if (static_cast<Index>(dataset.trajectory_of.size()) != n) {
        violations.push_back("trajectory_of size does not match point count");
        return violations;
    }
    if (static_cast<Index>(dataset.time_index_of.size()) != n) {
        violations.push_back("time_index_of size does not match point count");
        return violations;
    }

    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < dim; ++j) {
            if (!std::isfinite(dataset.points(i, j))) {
                violations.push_back("non-finite feature at point " + std::to_string(i) +
                                     ", column " + std::to_string(j));
            }
        }
    }

    std::vector<Index> sizes(static_cast<std::size_t>(std::max(traj_count, 0)), 0);
    for (Index i = 0; i < n; ++i) {
        const int t = dataset.trajectory_of[i];
        if (t < 0 || t >= traj_count) {
            violations.push_back("point " + std::to_string(i) + " references trajectory " +
                                 std::to_string(t) + " outside [0, " +
                                 std::to_string(traj_count) + ")");
            continue;
        }
        ++sizes[static_cast<std::size_t>(t)];
    }
    for (int t = 0; t < traj_count; ++t) {
        if (sizes[static_cast<std::size_t>(t)] == 0) {
            violations.push_back("trajectory ids not contiguous: trajectory " +
                                 std::to_string(t) + " owns no points");
        }
    }

    // Per-trajectory time indices must be distinct and form 0..m-1.
    for (int t = 0; t < traj_count; ++t) {
        const Index m = sizes[static_cast<std::size_t>(t)];
        if (m == 0) {
            continue;
        }
        std::vector<char> seen(static_cast<std::size_t>(m), 0);
        bool bad = false;
        for (Index i = 0; i < n && !bad; ++i) {
            if (dataset.trajectory_of[i] != t) {
                continue;
            }
            const int rank = dataset.time_index_of[i];
            if (rank < 0 || rank >= m) {
                violations.push_back("trajectory " + std::to_string(t) + ": time index " +
                                     std::to_string(rank) + " outside 0.." +
                                     std::to_string(m - 1));
                bad = true;
            } else if (seen[static_cast<std::size_t>(rank)]) {
                violations.push_back("trajectory " + std::to_string(t) +
                                     ": duplicated time index " + std::to_string(rank));
                bad = true;
            } else {
                seen[static_cast<std::size_t>(rank)] = 1;
            }
        }
    }

    const Index param_count = dataset.trajectory_params.cols();
    if (static_cast<Index>(dataset.param_names.size()) != param_count) {
        violations.push_back("param_names size does not match trajectory_params columns");
    }
    if (param_count > 0 && dataset.trajectory_params.rows() != traj_count) {
        violations.push_back("trajectory_params rows do not match trajectory count");
    } else {
        for (Index t = 0; t < dataset.trajectory_params.rows(); ++t) {
            for (Index p = 0; p < param_count; ++p) {
                if (!std::isfinite(dataset.trajectory_params(t, p))) {
                    violations.push_back("non-finite parameter for trajectory " +
                                         std::to_string(t));
                }
            }
        }
    }

    return violations;
}

void require_valid(const TrajectoryDataset& dataset) {
    auto violations = validate(dataset);
    if (!violations.empty()) {
        throw ValidationError(violations.front());
    }
}

} // namespace traj_manifold
