#pragma once

#include "traj_manifold/dataset.hpp"

#include <Eigen/Core>

#include <optional>
#include <string_view>
#include <vector>

namespace traj_manifold {

enum class Method { Pca, Mds, Isomap, EntropyIsomap };

std::string_view method_name(Method method);
std::optional<Method> parse_method(std::string_view name);

/// Symmetric n x n matrix of pairwise dissimilarities: zero diagonal, all
/// entries finite and >= 0.
struct DistanceMatrix {
    Eigen::MatrixXd values;

    Index size() const { return values.rows(); }
};

/// Shortest-path distances over a neighborhood graph. Entries may be +inf
/// for pairs in different connected components.
struct GeodesicMatrix {
    Eigen::MatrixXd values;

    Index size() const { return values.rows(); }
};

/**
 * Low-dimensional coordinates produced by one of the embedding methods.
 *
 * `coords` has one row per embedded point, in ascending original index with
 * `excluded_points` removed (points dropped when the neighborhood graph is
 * disconnected). `eigenvalues` is the top-d spectrum actually used, stored
 * unclamped; negative mass from non-Euclidean inputs is summarized in
 * `negative_mass_fraction`.
 */
struct Embedding {
    Eigen::MatrixXd coords;              // n_kept x d
    Eigen::VectorXd eigenvalues;         // length d, nonincreasing
    Method method = Method::Mds;
    std::vector<Index> excluded_points;  // ascending original indices
    double negative_mass_fraction = 0.0;

    Index embedded_count() const { return coords.rows(); }
    int dims() const { return static_cast<int>(coords.cols()); }

    /// Original indices of embedded points (ascending), given the total
    /// point count of the source dataset.
    std::vector<Index> kept_points(Index total) const;
};

} // namespace traj_manifold
