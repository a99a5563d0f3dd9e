#pragma once

#include "traj_manifold/metrics.hpp"
#include "traj_manifold/types.hpp"

#include <cstdint>
#include <vector>

namespace traj_manifold {

struct NeighborEntry {
    Index neighbor;
    double distance;
};

struct UndirectedEdge {
    Index u; // u < v
    Index v;
    double weight;
};

/**
 * Per-point neighbor lists plus the union-symmetrized edge set derived from
 * them.
 *
 * Neighbor lists are sorted by ascending distance with the deterministic
 * tie-break (distance, trajectory id, time index, point index); no
 * self-edges. `chosen_k[i]` equals `neighbors[i].size()` and, for the
 * entropy-adaptive construction, lies in [k, k+M]. `entropy_at_k[i]` is the
 * entropy of the final neighborhood of point i.
 */
struct NeighborhoodGraph {
    std::vector<std::vector<NeighborEntry>> neighbors;
    std::vector<int> chosen_k;
    std::vector<EntropyValue> entropy_at_k;
    std::vector<UndirectedEdge> symmetrized_edges; // sorted by (u, v)

    Index point_count() const { return static_cast<Index>(neighbors.size()); }

    /// Symmetrized adjacency lists (each edge listed from both endpoints,
    /// sorted by neighbor index).
    std::vector<std::vector<NeighborEntry>> adjacency() const;
};

/// Cross-mixing counts: entry (a, b) is the number of neighbor-list slots,
/// over all points of trajectory a, occupied by points of trajectory b.
using MixingTable = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// The k nearest other points of `point`, ascending, deterministic tie-break.
std::vector<Index> knn(const DistanceMatrix& distances, const TrajectoryDataset& dataset,
                       Index point, int k);

/// Fixed-k neighborhood graph: every neighbor list has exactly k entries.
NeighborhoodGraph build_knn_graph(const TrajectoryDataset& dataset,
                                  const DistanceMatrix& distances, int k);

/**
 * Entropy-adaptive neighborhood graph.
 *
 * For each point the neighborhood starts at the k nearest points and grows
 * one neighbor at a time until its entropy reaches `entropy_threshold` or
 * the size reaches k + max_extra; the result is the smallest size in
 * [k, k+max_extra] meeting the threshold, or k+max_extra if none does.
 */
NeighborhoodGraph build_entropy_graph(const TrajectoryDataset& dataset,
                                      const DistanceMatrix& distances, int k,
                                      double entropy_threshold, int max_extra);

/// Skip-s neighborhoods: ranks s+1 .. s+k of each point's sorted distance row.
NeighborhoodGraph build_skip_graph(const TrajectoryDataset& dataset,
                                   const DistanceMatrix& distances, int k, int skip);

/// Keeps every stride-th point of each trajectory (always keeping rank 0)
/// and re-ranks time indices densely.
TrajectoryDataset subsample(const TrajectoryDataset& dataset, int stride);

/// All-pairs shortest paths over the symmetrized edges. Unreachable pairs
/// are +inf; the result is exactly symmetric with a zero diagonal.
GeodesicMatrix shortest_paths(const NeighborhoodGraph& graph);

/// Maximal connected point sets of the symmetrized edges, each ascending,
/// ordered by first member.
std::vector<std::vector<Index>> connected_components(const NeighborhoodGraph& graph);

/// Restriction of a geodesic matrix to the given (ascending) point subset.
GeodesicMatrix restrict_matrix(const GeodesicMatrix& full, const std::vector<Index>& kept);

/// Largest component (ties broken toward the smallest first index).
std::vector<Index> largest_component(const NeighborhoodGraph& graph);

/// Per-trajectory neighbor provenance counts; row sums equal the summed
/// chosen_k over the row trajectory's points.
MixingTable mixing_report(const TrajectoryDataset& dataset, const NeighborhoodGraph& graph);

} // namespace traj_manifold
