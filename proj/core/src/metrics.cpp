#include "traj_manifold/metrics.hpp"

#include "traj_manifold/errors.hpp"
#include "traj_manifold/graph.hpp"
#include "traj_manifold/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>
#include <vector>

namespace traj_manifold {

double ResidualVariance::at(int d) const {
    for (const auto& [dim, r] : per_dimension) {
        if (dim == d) {
            return r;
        }
    }
    throw ParameterError("residual variance not evaluated at d = " + std::to_string(d));
}

DistanceMatrix pairwise_distances(const TrajectoryDataset& dataset) {
    const Index n = dataset.n();
    DistanceMatrix result;
    result.values.resize(n, n);

    // Upper triangle per row, mirrored afterwards; per-pair summation order
    // is fixed, so the matrix is identical for any thread count.
    parallel_for(0, static_cast<std::size_t>(n), [&](std::size_t row) {
        const Index i = static_cast<Index>(row);
        result.values(i, i) = 0.0;
        for (Index j = i + 1; j < n; ++j) {
            const double d = (dataset.points.row(i) - dataset.points.row(j)).norm();
            result.values(i, j) = d;
        }
    });
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            result.values(j, i) = result.values(i, j);
        }
    }

    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            if (!std::isfinite(result.values(i, j))) {
                throw NumericalError("non-finite distance between points " + std::to_string(i) +
                                     " and " + std::to_string(j));
            }
        }
    }
    return result;
}

EntropyValue entropy_from_counts(std::span<const Index> counts, Index k) {
    if (k <= 0) {
        throw ParameterError("neighborhood entropy needs a nonempty neighborhood");
    }
    // Summation runs over the sorted nonzero counts so the result depends
    // only on the count multiset, bit for bit.
    std::vector<Index> nonzero;
    nonzero.reserve(counts.size());
    for (Index count : counts) {
        if (count != 0) {
            nonzero.push_back(count);
        }
    }
    std::sort(nonzero.begin(), nonzero.end());
    double bits = 0.0;
    for (Index count : nonzero) {
        const double p = static_cast<double>(count) / static_cast<double>(k);
        bits -= p * std::log2(p);
    }
    return EntropyValue{bits + 0.0}; // normalize -0
}

EntropyValue neighborhood_entropy(std::span<const int> neighbor_trajectories) {
    if (neighbor_trajectories.empty()) {
        throw ParameterError("neighborhood entropy needs a nonempty neighborhood");
    }
    std::unordered_map<int, Index> counts;
    for (int t : neighbor_trajectories) {
        ++counts[t];
    }
    std::vector<Index> flat;
    flat.reserve(counts.size());
    for (const auto& [label, count] : counts) {
        flat.push_back(count);
    }
    return entropy_from_counts(flat, static_cast<Index>(neighbor_trajectories.size()));
}

EntropyValue trajectory_entropy(const TrajectoryDataset& dataset,
                                const NeighborhoodGraph& graph, int trajectory) {
    if (trajectory < 0 || trajectory >= dataset.trajectory_count()) {
        throw ParameterError("unknown trajectory id " + std::to_string(trajectory));
    }
    if (graph.point_count() != dataset.n()) {
        throw ParameterError("graph does not cover the dataset");
    }
    double sum = 0.0;
    Index count = 0;
    for (Index i = 0; i < dataset.n(); ++i) {
        if (dataset.trajectory_of[static_cast<std::size_t>(i)] == trajectory) {
            sum += graph.entropy_at_k[static_cast<std::size_t>(i)].bits;
            ++count;
        }
    }
    return EntropyValue{count == 0 ? 0.0 : sum / static_cast<double>(count)};
}

ResidualVariance residual_variance_pca(const Eigen::VectorXd& full_spectrum, int d) {
    const int total_dims = static_cast<int>(full_spectrum.size());
    if (d < 1 || d > total_dims) {
        throw ParameterError("residual variance dimension out of range: d = " +
                             std::to_string(d));
    }
    double total = 0.0;
    for (int i = 0; i < total_dims; ++i) {
        total += full_spectrum(i);
    }
    if (total <= 0.0) {
        throw NumericalError("degenerate all-zero eigenvalue spectrum");
    }
    ResidualVariance curve;
    curve.per_dimension.reserve(static_cast<std::size_t>(d));
    double cumulative = 0.0;
    for (int i = 1; i <= d; ++i) {
        cumulative += full_spectrum(i - 1);
        const double r = 1.0 - cumulative / total;
        curve.per_dimension.emplace_back(i, std::clamp(r, 0.0, 1.0));
    }
    return curve;
}

namespace {

/// Pearson correlation over paired strict-upper-triangle entries.
double pearson_upper(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    const Index n = a.rows();
    const double count = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    if (count < 2.0) {
        throw NumericalError("too few point pairs for a correlation");
    }
    double mean_a = 0.0;
    double mean_b = 0.0;
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            mean_a += a(i, j);
            mean_b += b(i, j);
        }
    }
    mean_a /= count;
    mean_b /= count;
    double cov = 0.0;
    double var_a = 0.0;
    double var_b = 0.0;
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const double da = a(i, j) - mean_a;
            const double db = b(i, j) - mean_b;
            cov += da * db;
            var_a += da * da;
            var_b += db * db;
        }
    }
    if (var_a == 0.0 || var_b == 0.0) {
        throw NumericalError("degenerate constant distance vector; correlation undefined");
    }
    return cov / std::sqrt(var_a * var_b);
}

} // namespace

ResidualVariance residual_variance_isomap(const GeodesicMatrix& geodesics,
                                          const Embedding& embedding) {
    const Index n = geodesics.size();
    if (embedding.coords.rows() != n) {
        throw ParameterError("embedding and geodesic matrix cover different point sets");
    }
    if (!geodesics.values.allFinite()) {
        throw ParameterError("geodesic matrix contains unreachable pairs; restrict it to one "
                             "connected component first");
    }
    ResidualVariance curve;
    const int dims = embedding.dims();
    Eigen::MatrixXd embedded(n, n);
    embedded.setZero();
    for (int d = 1; d <= dims; ++d) {
        // Pairwise distances of the first d coordinate columns.
        const auto block = embedding.coords.leftCols(d);
        for (Index i = 0; i < n; ++i) {
            for (Index j = i + 1; j < n; ++j) {
                embedded(i, j) = (block.row(i) - block.row(j)).norm();
            }
        }
        const double rho = pearson_upper(geodesics.values, embedded);
        const double r = 1.0 - rho * rho;
        curve.per_dimension.emplace_back(d, std::clamp(r, 0.0, 1.0));
    }
    return curve;
}

} // namespace traj_manifold
