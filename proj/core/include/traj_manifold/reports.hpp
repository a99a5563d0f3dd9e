#pragma once

#include "traj_manifold/embed.hpp"
#include "traj_manifold/graph.hpp"
#include "traj_manifold/metrics.hpp"
#include "traj_manifold/types.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace traj_manifold {

// CSV report builders shared by the CLI and the test suites. All numbers are
// written with 17 significant digits so outputs diff cleanly across runs and
// implementations.

/// Header `point,traj,t,y1..yd`; one row per embedded point in ascending
/// original index. `traj` is the original trajectory label, `t` the
/// within-trajectory rank.
std::string embedding_csv(const TrajectoryDataset& dataset, const Embedding& embedding);

/// Header `index,eigenvalue`; the spectrum in nonincreasing order.
std::string spectrum_csv(const Eigen::VectorXd& spectrum);

/// Header `d,R,formula`; formula is "eq1" (spectrum-based) or "eq2"
/// (correlation-based).
std::string residual_variance_csv(const ResidualVariance& curve, std::string_view formula);

/// Header `k,count`; one row per neighborhood size in [k, k+M].
std::string chosen_k_histogram_csv(const std::vector<std::pair<int, Index>>& histogram);

/// Header `traj,t,entropy,chosen_k`; one row per point sorted by
/// (trajectory, time rank).
std::string entropy_vs_time_csv(const TrajectoryDataset& dataset,
                                const NeighborhoodGraph& graph);

/// Header `traj,<label 0>,...`; one row of neighbor counts per trajectory.
std::string mixing_csv(const TrajectoryDataset& dataset, const MixingTable& mixing);

/// Header `point,traj,t`; one row per excluded point.
std::string excluded_points_csv(const TrajectoryDataset& dataset,
                                const std::vector<Index>& excluded);

/// Header `u,v,weight`; the symmetrized edge list sorted by (u, v).
std::string graph_edges_csv(const NeighborhoodGraph& graph);

/// Header `point,traj,t,chosen_k,entropy`; one row per point.
std::string graph_points_csv(const TrajectoryDataset& dataset, const NeighborhoodGraph& graph);

/// Header `point,rank,neighbor,distance`; the directed neighbor lists.
std::string graph_neighbors_csv(const NeighborhoodGraph& graph);

} // namespace traj_manifold
