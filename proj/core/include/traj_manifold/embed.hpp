#pragma once

#include "traj_manifold/graph.hpp"
#include "traj_manifold/metrics.hpp"
#include "traj_manifold/types.hpp"

#include <utility>
#include <vector>

namespace traj_manifold {

struct MdsResult {
    Embedding embedding;
    Eigen::VectorXd spectrum; // full eigenvalue spectrum, nonincreasing
    int iterations = 0;
};

struct PcaResult {
    Embedding embedding;
    Eigen::VectorXd spectrum; // all D covariance eigenvalues, nonincreasing
};

/// Per-point and per-trajectory diagnostics of an entropy-adaptive run.
struct DiagnosticsReport {
    std::vector<int> chosen_k;                          // per point
    std::vector<EntropyValue> entropy;                  // per point
    MixingTable mixing;                                 // T x T
    std::vector<std::pair<int, Index>> chosen_k_histogram; // (k value, count), k..k+M
    Index capped_count = 0;   // points at k+M with entropy below the threshold
    double capped_fraction = 0.0;
    ResidualVariance residual_variance;                 // Eq-2 style curve
};

struct IsomapResult {
    Embedding embedding;
    GeodesicMatrix geodesics; // restricted to the embedded component
    NeighborhoodGraph graph;
    Eigen::VectorXd spectrum;
};

struct EntropyIsomapResult {
    Embedding embedding;
    GeodesicMatrix geodesics;
    NeighborhoodGraph graph;
    Eigen::VectorXd spectrum;
    DiagnosticsReport diagnostics;
};

/**
 * Classical multidimensional scaling of a symmetric zero-diagonal feature
 * matrix: eigendecomposition of B = -1/2 * J * S * J (S = entrywise squared
 * distances, J the centering projector), coordinates from the top-d
 * eigenpairs scaled by sqrt(lambda). Negative eigenvalues are clamped to
 * zero for coordinates but stored raw; their mass is summarized in
 * embedding.negative_mass_fraction.
 */
MdsResult classical_mds(const DistanceMatrix& feature, int d);

/// PCA via eigendecomposition of the feature covariance; coordinates are the
/// centered data projected on the top-d principal directions. The full
/// spectrum is returned for residual_variance_pca.
PcaResult pca(const TrajectoryDataset& dataset, int d);

/**
 * Isomap: pairwise distances -> k-NN graph -> shortest paths -> classical
 * MDS of the geodesic matrix, restricted to the largest connected component
 * (dropped points are listed in embedding.excluded_points).
 *
 * skip > 0 replaces the k-NN neighborhoods with skip-s neighborhoods
 * (ranks skip+1 .. skip+k); skip = 0 is plain Isomap.
 */
IsomapResult isomap(const TrajectoryDataset& dataset, int k, int d, int skip = 0);

/// Isomap with the entropy-adaptive neighborhood construction plus a filled
/// DiagnosticsReport. entropy_threshold = 0 reproduces isomap() exactly.
EntropyIsomapResult entropy_isomap(const TrajectoryDataset& dataset, int k,
                                   double entropy_threshold, int max_extra, int d);

/// Assembles the diagnostics of an entropy-adaptive graph: per-point values,
/// mixing table, chosen-k histogram over [k, k+M], capped-point stats and
/// the residual-variance curve of the given embedding.
DiagnosticsReport make_diagnostics(const TrajectoryDataset& dataset,
                                   const NeighborhoodGraph& graph, int k,
                                   double entropy_threshold, int max_extra,
                                   const GeodesicMatrix& geodesics,
                                   const Embedding& embedding);

} // namespace traj_manifold
