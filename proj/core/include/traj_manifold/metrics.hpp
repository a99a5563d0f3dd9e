#pragma once

#include "traj_manifold/types.hpp"

#include <span>
#include <utility>
#include <vector>

namespace traj_manifold {

struct NeighborhoodGraph;

/// Shannon entropy in bits; always >= 0 and <= log2(min(k, T)) for a
/// k-neighborhood over T trajectories.
struct EntropyValue {
    double bits = 0.0;
};

/// Residual variance R(d) for a range of target dimensions, R in [0, 1].
struct ResidualVariance {
    std::vector<std::pair<int, double>> per_dimension;

    double at(int d) const;
};

/// Exact Euclidean pairwise distances between dataset rows. Rows are
/// computed in parallel with a fixed per-row summation order, so the result
/// is identical for any thread count.
DistanceMatrix pairwise_distances(const TrajectoryDataset& dataset);

/// Entropy of a neighborhood given the trajectory id of each of its k
/// members: H = sum over nonzero p_i of -p_i * log2(p_i), p_i = count_i / k.
EntropyValue neighborhood_entropy(std::span<const int> neighbor_trajectories);

/// Same, from per-trajectory counts (k = sum of counts).
EntropyValue entropy_from_counts(std::span<const Index> counts, Index k);

/// Mean per-point neighborhood entropy over one trajectory's points, using
/// the entropies recorded in the graph.
EntropyValue trajectory_entropy(const TrajectoryDataset& dataset,
                                const NeighborhoodGraph& graph, int trajectory);

/// Spectrum-based residual variance: R(d') = 1 - sum_{i<=d'} lambda_i / |Lambda|,
/// evaluated for every d' in [1, d]. Throws NumericalError on an all-zero
/// spectrum.
ResidualVariance residual_variance_pca(const Eigen::VectorXd& full_spectrum, int d);

/// Correlation-based residual variance: R(d') = 1 - rho^2 where rho is the
/// Pearson correlation between strict-upper-triangle entries of `geodesics`
/// and the pairwise Euclidean distances of the first d' embedding columns,
/// evaluated for every d' in [1, embedding.dims()]. Both matrices must cover
/// the same (embedded) point set. Throws NumericalError when either distance
/// vector is constant.
ResidualVariance residual_variance_isomap(const GeodesicMatrix& geodesics,
                                          const Embedding& embedding);

} // namespace traj_manifold
