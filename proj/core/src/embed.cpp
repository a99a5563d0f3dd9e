#include "traj_manifold/embed.hpp"

#include "traj_manifold/errors.hpp"
#include "traj_manifold/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace traj_manifold {

namespace {

void check_feature_matrix(const DistanceMatrix& feature) {
    const Index n = feature.size();
    if (n < 2 || feature.values.cols() != n) {
        throw ParameterError("feature matrix must be square with n >= 2");
    }
    if (!feature.values.allFinite()) {
        throw ValidationError("feature matrix contains non-finite entries");
    }
    if (feature.values != feature.values.transpose()) {
        throw ValidationError("feature matrix is not symmetric");
    }
    for (Index i = 0; i < n; ++i) {
        if (feature.values(i, i) != 0.0) {
            throw ValidationError("feature matrix diagonal is not zero");
        }
        for (Index j = 0; j < n; ++j) {
            if (feature.values(i, j) < 0.0) {
                throw ValidationError("feature matrix contains negative dissimilarities");
            }
        }
    }
}

double negative_mass_fraction(const Eigen::VectorXd& spectrum) {
    double negative = 0.0;
    double total = 0.0;
    for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
        total += std::abs(spectrum(i));
        if (spectrum(i) < 0.0) {
            negative += -spectrum(i);
        }
    }
    return total == 0.0 ? 0.0 : negative / total;
}

} // namespace

MdsResult classical_mds(const DistanceMatrix& feature, int d) {
    check_feature_matrix(feature);
    const Index n = feature.size();
    if (d < 1 || static_cast<Index>(d) > n - 1) {
        throw ParameterError("embedding dimension out of range: d = " + std::to_string(d) +
                             ", n = " + std::to_string(n));
    }

    // B = -1/2 * J * S * J computed entrywise from the squared distances:
    // B_ij = -1/2 (S_ij - rowmean_i - rowmean_j + grandmean).
    Eigen::MatrixXd squared(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            const double v = feature.values(i, j);
            squared(i, j) = v * v;
        }
    }
    Eigen::VectorXd row_mean(n);
    for (Index i = 0; i < n; ++i) {
        double sum = 0.0;
        for (Index j = 0; j < n; ++j) {
            sum += squared(i, j);
        }
        row_mean(i) = sum / static_cast<double>(n);
    }
    double grand_mean = 0.0;
    for (Index i = 0; i < n; ++i) {
        grand_mean += row_mean(i);
    }
    grand_mean /= static_cast<double>(n);

    Eigen::MatrixXd b(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i; j < n; ++j) {
            const double centered = squared(i, j) - row_mean(i) - row_mean(j) + grand_mean;
            b(i, j) = -0.5 * centered;
            b(j, i) = b(i, j);
        }
    }

    SpectralResult spectral = symmetric_eigendecomposition(b);

    MdsResult result;
    result.iterations = spectral.iterations;
    result.spectrum = spectral.eigenvalues;

    Embedding& embedding = result.embedding;
    embedding.method = Method::Mds;
    embedding.eigenvalues = spectral.eigenvalues.head(d);
    embedding.negative_mass_fraction = negative_mass_fraction(spectral.eigenvalues);
    embedding.coords.resize(n, d);
    for (int c = 0; c < d; ++c) {
        const double scale = std::sqrt(std::max(spectral.eigenvalues(c), 0.0));
        embedding.coords.col(c) = spectral.eigenvectors.col(c) * scale;
    }
    return result;
}

PcaResult pca(const TrajectoryDataset& dataset, int d) {
    const Index n = dataset.n();
    const Index dim = dataset.dim();
    if (d < 1 || static_cast<Index>(d) > std::min(n, dim)) {
        throw ParameterError("embedding dimension out of range: d = " + std::to_string(d) +
                             ", min(n, D) = " + std::to_string(std::min(n, dim)));
    }

    Eigen::RowVectorXd mean = dataset.points.colwise().mean();
    Eigen::MatrixXd centered = dataset.points.rowwise() - mean;

    Eigen::MatrixXd covariance = centered.transpose() * centered /
                                 static_cast<double>(n - 1);
    for (Index a = 0; a < dim; ++a) {
        for (Index b = a + 1; b < dim; ++b) {
            covariance(b, a) = covariance(a, b); // exact symmetry
        }
    }

    SpectralResult spectral = symmetric_eigendecomposition(covariance);

    PcaResult result;
    result.spectrum = spectral.eigenvalues.cwiseMax(0.0); // covariance is PSD
    result.embedding.method = Method::Pca;
    result.embedding.eigenvalues = result.spectrum.head(d);
    result.embedding.coords = centered * spectral.eigenvectors.leftCols(d);
    return result;
}

namespace {

struct ComponentSplit {
    std::vector<Index> kept;
    std::vector<Index> excluded;
};

ComponentSplit split_largest_component(const NeighborhoodGraph& graph) {
    ComponentSplit split;
    split.kept = largest_component(graph);
    std::vector<char> is_kept(static_cast<std::size_t>(graph.point_count()), 0);
    for (Index i : split.kept) {
        is_kept[static_cast<std::size_t>(i)] = 1;
    }
    for (Index i = 0; i < graph.point_count(); ++i) {
        if (!is_kept[static_cast<std::size_t>(i)]) {
            split.excluded.push_back(i);
        }
    }
    return split;
}

} // namespace

IsomapResult isomap(const TrajectoryDataset& dataset, int k, int d, int skip) {
    const DistanceMatrix distances = pairwise_distances(dataset);
    NeighborhoodGraph graph = skip > 0 ? build_skip_graph(dataset, distances, k, skip)
                                       : build_knn_graph(dataset, distances, k);
    const GeodesicMatrix full = shortest_paths(graph);

    ComponentSplit split = split_largest_component(graph);
    GeodesicMatrix geodesics = restrict_matrix(full, split.kept);

    if (static_cast<Index>(d) > geodesics.size() - 1) {
        throw ParameterError("embedding dimension too large for the connected component (" +
                             std::to_string(geodesics.size()) + " points)");
    }

    MdsResult mds = classical_mds(DistanceMatrix{geodesics.values}, d);

    IsomapResult result;
    result.embedding = std::move(mds.embedding);
    result.embedding.method = Method::Isomap;
    result.embedding.excluded_points = std::move(split.excluded);
    result.geodesics = std::move(geodesics);
    result.graph = std::move(graph);
    result.spectrum = std::move(mds.spectrum);
    return result;
}

EntropyIsomapResult entropy_isomap(const TrajectoryDataset& dataset, int k,
                                   double entropy_threshold, int max_extra, int d) {
    const DistanceMatrix distances = pairwise_distances(dataset);
    NeighborhoodGraph graph =
        build_entropy_graph(dataset, distances, k, entropy_threshold, max_extra);
    const GeodesicMatrix full = shortest_paths(graph);

    ComponentSplit split = split_largest_component(graph);
    GeodesicMatrix geodesics = restrict_matrix(full, split.kept);

    if (static_cast<Index>(d) > geodesics.size() - 1) {
        throw ParameterError("embedding dimension too large for the connected component (" +
                             std::to_string(geodesics.size()) + " points)");
    }

    MdsResult mds = classical_mds(DistanceMatrix{geodesics.values}, d);

    EntropyIsomapResult result;
    result.embedding = std::move(mds.embedding);
    result.embedding.method = Method::EntropyIsomap;
    result.embedding.excluded_points = std::move(split.excluded);
    result.geodesics = std::move(geodesics);
    result.spectrum = std::move(mds.spectrum);
    result.diagnostics = make_diagnostics(dataset, graph, k, entropy_threshold, max_extra,
                                          result.geodesics, result.embedding);
    result.graph = std::move(graph);
    return result;
}

DiagnosticsReport make_diagnostics(const TrajectoryDataset& dataset,
                                   const NeighborhoodGraph& graph, int k,
                                   double entropy_threshold, int max_extra,
                                   const GeodesicMatrix& geodesics,
                                   const Embedding& embedding) {
    DiagnosticsReport report;
    report.chosen_k = graph.chosen_k;
    report.entropy = graph.entropy_at_k;
    report.mixing = mixing_report(dataset, graph);

    const int cap = k + max_extra;
    report.chosen_k_histogram.reserve(static_cast<std::size_t>(max_extra) + 1);
    for (int size = k; size <= cap; ++size) {
        report.chosen_k_histogram.emplace_back(size, 0);
    }
    for (Index i = 0; i < dataset.n(); ++i) {
        const int size = graph.chosen_k[static_cast<std::size_t>(i)];
        ++report.chosen_k_histogram[static_cast<std::size_t>(size - k)].second;
        if (size == cap && graph.entropy_at_k[static_cast<std::size_t>(i)].bits <
                               entropy_threshold) {
            ++report.capped_count;
        }
    }
    report.capped_fraction =
        static_cast<double>(report.capped_count) / static_cast<double>(dataset.n());
    report.residual_variance = residual_variance_isomap(geodesics, embedding);
    return report;
}

} // namespace traj_manifold
