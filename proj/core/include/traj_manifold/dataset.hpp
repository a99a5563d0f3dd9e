#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

namespace traj_manifold {

using Index = Eigen::Index;

/**
 * A set of n points in R^D partitioned into T time-ordered trajectories.
 *
 * Trajectory ids are dense integers in [0, T); `trajectory_labels` keeps the
 * original (string) ids in first-appearance order. Only the within-trajectory
 * time *order* is retained: `time_index_of[i]` is the rank of point i inside
 * its trajectory, forming 0..m-1 per trajectory.
 *
 * Instances are treated as immutable once constructed and are safe to share
 * across concurrent readers.
 */
struct TrajectoryDataset {
    Eigen::MatrixXd points;                      // n x D feature matrix
    std::vector<int> trajectory_of;              // n entries, values in [0, T)
    std::vector<int> time_index_of;              // n entries, rank within trajectory
    std::vector<std::string> trajectory_labels;  // T original ids, dense id -> label
    std::vector<std::string> param_names;        // P shared parameter names
    Eigen::MatrixXd trajectory_params;           // T x P per-trajectory parameters

    Index n() const { return points.rows(); }
    Index dim() const { return points.cols(); }
    int trajectory_count() const { return static_cast<int>(trajectory_labels.size()); }

    /// Number of points on one trajectory.
    Index trajectory_size(int trajectory) const;

    /// Point indices of one trajectory, in ascending time order.
    std::vector<Index> points_of(int trajectory) const;
};

/// Checks every dataset invariant. Returns a (possibly empty) list of
/// human-readable violations; never throws.
std::vector<std::string> validate(const TrajectoryDataset& dataset);

/// Convenience: runs validate() and throws ValidationError on the first hit.
void require_valid(const TrajectoryDataset& dataset);

} // namespace traj_manifold
