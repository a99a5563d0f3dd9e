#include "traj_manifold/reports.hpp"

#include "traj_manifold/numeric_io.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace traj_manifold {

std::string embedding_csv(const TrajectoryDataset& dataset, const Embedding& embedding) {
    std::string out = "point,traj,t";
    for (int c = 1; c <= embedding.dims(); ++c) {
        out += ",y" + std::to_string(c);
    }
    out += '\n';

    const auto kept = embedding.kept_points(dataset.n());
    for (std::size_t row = 0; row < kept.size(); ++row) {
        const Index i = kept[row];
        const int traj = dataset.trajectory_of[static_cast<std::size_t>(i)];
        out += std::to_string(i);
        out += ',';
        out += dataset.trajectory_labels[static_cast<std::size_t>(traj)];
        out += ',';
        out += std::to_string(dataset.time_index_of[static_cast<std::size_t>(i)]);
        for (int c = 0; c < embedding.dims(); ++c) {
            out += ',';
            out += format_double(embedding.coords(static_cast<Index>(row), c));
        }
        out += '\n';
    }
    return out;
}

std::string spectrum_csv(const Eigen::VectorXd& spectrum) {
    std::string out = "index,eigenvalue\n";
    for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
        out += std::to_string(i + 1);
        out += ',';
        out += format_double(spectrum(i));
        out += '\n';
    }
    return out;
}

std::string residual_variance_csv(const ResidualVariance& curve, std::string_view formula) {
    std::string out = "d,R,formula\n";
    for (const auto& [d, r] : curve.per_dimension) {
        out += std::to_string(d);
        out += ',';
        out += format_double(r);
        out += ',';
        out += formula;
        out += '\n';
    }
    return out;
}

std::string chosen_k_histogram_csv(const std::vector<std::pair<int, Index>>& histogram) {
    std::string out = "k,count\n";
    for (const auto& [k, count] : histogram) {
        out += std::to_string(k);
        out += ',';
        out += std::to_string(count);
        out += '\n';
    }
    return out;
}

std::string entropy_vs_time_csv(const TrajectoryDataset& dataset,
                                const NeighborhoodGraph& graph) {
    std::string out = "traj,t,entropy,chosen_k\n";
    for (int g = 0; g < dataset.trajectory_count(); ++g) {
        for (const Index i : dataset.points_of(g)) {
            out += dataset.trajectory_labels[static_cast<std::size_t>(g)];
            out += ',';
            out += std::to_string(dataset.time_index_of[static_cast<std::size_t>(i)]);
            out += ',';
            out += format_double(graph.entropy_at_k[static_cast<std::size_t>(i)].bits);
            out += ',';
            out += std::to_string(graph.chosen_k[static_cast<std::size_t>(i)]);
            out += '\n';
        }
    }
    return out;
}

std::string mixing_csv(const TrajectoryDataset& dataset, const MixingTable& mixing) {
    std::string out = "traj";
    for (const auto& label : dataset.trajectory_labels) {
        out += ',';
        out += label;
    }
    out += '\n';
    for (Eigen::Index a = 0; a < mixing.rows(); ++a) {
        out += dataset.trajectory_labels[static_cast<std::size_t>(a)];
        for (Eigen::Index b = 0; b < mixing.cols(); ++b) {
            out += ',';
            out += std::to_string(mixing(a, b));
        }
        out += '\n';
    }
    return out;
}

std::string excluded_points_csv(const TrajectoryDataset& dataset,
                                const std::vector<Index>& excluded) {
    std::string out = "point,traj,t\n";
    for (const Index i : excluded) {
        const int traj = dataset.trajectory_of[static_cast<std::size_t>(i)];
        out += std::to_string(i);
        out += ',';
        out += dataset.trajectory_labels[static_cast<std::size_t>(traj)];
        out += ',';
        out += std::to_string(dataset.time_index_of[static_cast<std::size_t>(i)]);
        out += '\n';
    }
    return out;
}

std::string graph_edges_csv(const NeighborhoodGraph& graph) {
    std::string out = "u,v,weight\n";
    for (const auto& edge : graph.symmetrized_edges) {
        out += std::to_string(edge.u);
        out += ',';
        out += std::to_string(edge.v);
        out += ',';
        out += format_double(edge.weight);
        out += '\n';
    }
    return out;
}

std::string graph_points_csv(const TrajectoryDataset& dataset, const NeighborhoodGraph& graph) {
    std::string out = "point,traj,t,chosen_k,entropy\n";
    for (Index i = 0; i < graph.point_count(); ++i) {
        const int traj = dataset.trajectory_of[static_cast<std::size_t>(i)];
        out += std::to_string(i);
        out += ',';
        out += dataset.trajectory_labels[static_cast<std::size_t>(traj)];
        out += ',';
        out += std::to_string(dataset.time_index_of[static_cast<std::size_t>(i)]);
        out += ',';
        out += std::to_string(graph.chosen_k[static_cast<std::size_t>(i)]);
        out += ',';
        out += format_double(graph.entropy_at_k[static_cast<std::size_t>(i)].bits);
        out += '\n';
    }
    return out;
}

std::string graph_neighbors_csv(const NeighborhoodGraph& graph) {
    std::string out = "point,rank,neighbor,distance\n";
    for (Index i = 0; i < graph.point_count(); ++i) {
        const auto& list = graph.neighbors[static_cast<std::size_t>(i)];
        for (std::size_t rank = 0; rank < list.size(); ++rank) {
            out += std::to_string(i);
            out += ',';
            out += std::to_string(rank + 1);
            out += ',';
            out += std::to_string(list[rank].neighbor);
            out += ',';
            out += format_double(list[rank].distance);
            out += '\n';
        }
    }
    return out;
}

} // namespace traj_manifold
