#pragma once

#include "traj_manifold/dataset.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace traj_manifold {

/**
 * Column-role declaration for the dataset CSV format.
 *
 * The format is: a header row naming `traj` (string trajectory id), `t`
 * (real time value), zero or more `param:<name>` columns (real, constant
 * within a trajectory) and feature columns `f0..f{D-1}`. UTF-8, `.` decimal
 * separator, LF or CRLF line endings.
 */
struct CsvSchema {
    std::string trajectory_column = "traj";
    std::string time_column = "t";
    std::string param_prefix = "param:";
    std::string feature_prefix = "f";
};

/**
 * Parses and validates a dataset from the CSV format above.
 *
 * Rows may arrive in any order; points are re-ranked by ascending time value
 * within each trajectory to produce `time_index_of`. Trajectory ids are
 * mapped to dense integers in first-appearance order. Throws ValidationError
 * on malformed rows, non-finite features, duplicate (trajectory, time) pairs
 * or inconsistent parameter values.
 */
TrajectoryDataset load_dataset(std::istream& in, const CsvSchema& schema = {});
TrajectoryDataset load_dataset(const std::filesystem::path& path, const CsvSchema& schema = {});

/// Serializes a dataset back to the CSV format at 17 significant digits;
/// load_dataset(save_dataset(d)) reproduces d exactly. The emitted time
/// column holds the within-trajectory rank.
std::string save_dataset(const TrajectoryDataset& dataset, const CsvSchema& schema = {});
void save_dataset(const std::filesystem::path& path, const TrajectoryDataset& dataset,
                  const CsvSchema& schema = {});

} // namespace traj_manifold
