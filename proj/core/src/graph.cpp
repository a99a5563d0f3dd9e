#include "traj_manifold/graph.hpp"

#include "traj_manifold/errors.hpp"
#include "traj_manifold/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <utility>
#include <vector>

namespace traj_manifold {

namespace {

void check_graph_inputs(const TrajectoryDataset& dataset, const DistanceMatrix& distances) {
    if (distances.size() != dataset.n()) {
        throw ParameterError("distance matrix size does not match dataset point count");
    }
}

/// All other points sorted by ascending (distance, trajectory id, time
/// index, point index) — a total order, so the result is reproducible.
std::vector<Index> sorted_candidates(const DistanceMatrix& distances,
                                     const TrajectoryDataset& dataset, Index point) {
    const Index n = distances.size();
    std::vector<Index> order;
    order.reserve(static_cast<std::size_t>(n - 1));
    for (Index j = 0; j < n; ++j) {
        if (j != point) {
            order.push_back(j);
        }
    }
    const auto& row = distances.values;
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
        const double da = row(point, a);
        const double db = row(point, b);
        if (da != db) {
            return da < db;
        }
        const int ta = dataset.trajectory_of[static_cast<std::size_t>(a)];
        const int tb = dataset.trajectory_of[static_cast<std::size_t>(b)];
        if (ta != tb) {
            return ta < tb;
        }
        const int ra = dataset.time_index_of[static_cast<std::size_t>(a)];
        const int rb = dataset.time_index_of[static_cast<std::size_t>(b)];
        if (ra != rb) {
            return ra < rb;
        }
        return a < b;
    });
    return order;
}

void symmetrize(NeighborhoodGraph& graph) {
    std::vector<UndirectedEdge> edges;
    std::size_t directed = 0;
    for (const auto& list : graph.neighbors) {
        directed += list.size();
    }
    edges.reserve(directed);
    for (Index i = 0; i < graph.point_count(); ++i) {
        for (const auto& entry : graph.neighbors[static_cast<std::size_t>(i)]) {
            const Index u = std::min(i, entry.neighbor);
            const Index v = std::max(i, entry.neighbor);
            edges.push_back(UndirectedEdge{u, v, entry.distance});
        }
    }
    std::sort(edges.begin(), edges.end(), [](const UndirectedEdge& a, const UndirectedEdge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](const UndirectedEdge& a, const UndirectedEdge& b) {
                                return a.u == b.u && a.v == b.v;
                            }),
                edges.end());
    graph.symmetrized_edges = std::move(edges);
}

std::vector<Index> trajectory_counts_buffer(const TrajectoryDataset& dataset) {
    return std::vector<Index>(static_cast<std::size_t>(dataset.trajectory_count()), 0);
}

} // namespace

std::vector<std::vector<NeighborEntry>> NeighborhoodGraph::adjacency() const {
    std::vector<std::vector<NeighborEntry>> adj(neighbors.size());
    for (const auto& edge : symmetrized_edges) {
        adj[static_cast<std::size_t>(edge.u)].push_back(NeighborEntry{edge.v, edge.weight});
        adj[static_cast<std::size_t>(edge.v)].push_back(NeighborEntry{edge.u, edge.weight});
    }
    for (auto& list : adj) {
        std::sort(list.begin(), list.end(), [](const NeighborEntry& a, const NeighborEntry& b) {
            return a.neighbor < b.neighbor;
        });
    }
    return adj;
}

std::vector<Index> knn(const DistanceMatrix& distances, const TrajectoryDataset& dataset,
                       Index point, int k) {
    check_graph_inputs(dataset, distances);
    const Index n = distances.size();
    if (point < 0 || point >= n) {
        throw ParameterError("query point index out of range");
    }
    if (k < 1 || static_cast<Index>(k) > n - 1) {
        throw ParameterError("k out of range: k = " + std::to_string(k) + ", n = " +
                             std::to_string(n));
    }
    auto order = sorted_candidates(distances, dataset, point);
    order.resize(static_cast<std::size_t>(k));
    return order;
}

NeighborhoodGraph build_knn_graph(const TrajectoryDataset& dataset,
                                  const DistanceMatrix& distances, int k) {
    return build_skip_graph(dataset, distances, k, 0);
}

NeighborhoodGraph build_skip_graph(const TrajectoryDataset& dataset,
                                   const DistanceMatrix& distances, int k, int skip) {
    check_graph_inputs(dataset, distances);
    const Index n = dataset.n();
    if (k < 1 || skip < 0 || static_cast<Index>(k) + static_cast<Index>(skip) > n - 1) {
        throw ParameterError("invalid neighborhood parameters: k = " + std::to_string(k) +
                             ", skip = " + std::to_string(skip) + ", n = " + std::to_string(n));
    }

    NeighborhoodGraph graph;
    graph.neighbors.resize(static_cast<std::size_t>(n));
    graph.chosen_k.assign(static_cast<std::size_t>(n), k);
    graph.entropy_at_k.resize(static_cast<std::size_t>(n));

    parallel_for(0, static_cast<std::size_t>(n), [&](std::size_t p) {
        const Index i = static_cast<Index>(p);
        const auto order = sorted_candidates(distances, dataset, i);
        auto counts = trajectory_counts_buffer(dataset);
        auto& list = graph.neighbors[p];
        list.reserve(static_cast<std::size_t>(k));
        for (int r = 0; r < k; ++r) {
            const Index j = order[static_cast<std::size_t>(skip + r)];
            list.push_back(NeighborEntry{j, distances.values(i, j)});
            ++counts[static_cast<std::size_t>(dataset.trajectory_of[static_cast<std::size_t>(j)])];
        }
        graph.entropy_at_k[p] = entropy_from_counts(counts, k);
    });

    symmetrize(graph);
    return graph;
}

NeighborhoodGraph build_entropy_graph(const TrajectoryDataset& dataset,
                                      const DistanceMatrix& distances, int k,
                                      double entropy_threshold, int max_extra) {
    check_graph_inputs(dataset, distances);
    const Index n = dataset.n();
    if (k < 1 || static_cast<Index>(k) > n - 1) {
        throw ParameterError("k out of range: k = " + std::to_string(k) + ", n = " +
                             std::to_string(n));
    }
    if (entropy_threshold < 0.0 || !std::isfinite(entropy_threshold)) {
        throw ParameterError("entropy threshold must be finite and >= 0");
    }
    if (max_extra < 0 || static_cast<Index>(k) + static_cast<Index>(max_extra) > n - 1) {
        throw ParameterError("invalid neighborhood growth bound: k + M must be <= n - 1");
    }

    NeighborhoodGraph graph;
    graph.neighbors.resize(static_cast<std::size_t>(n));
    graph.chosen_k.assign(static_cast<std::size_t>(n), k);
    graph.entropy_at_k.resize(static_cast<std::size_t>(n));

    parallel_for(0, static_cast<std::size_t>(n), [&](std::size_t p) {
        const Index i = static_cast<Index>(p);
        const auto order = sorted_candidates(distances, dataset, i);
        auto counts = trajectory_counts_buffer(dataset);

        // Entropy of the initial k-neighborhood, then grow one neighbor at a
        // time while it stays below the threshold and room remains. Counts
        // are updated incrementally; the entropy is recomputed from them.
        for (int r = 0; r < k; ++r) {
            const Index j = order[static_cast<std::size_t>(r)];
            ++counts[static_cast<std::size_t>(dataset.trajectory_of[static_cast<std::size_t>(j)])];
        }
        int size = k;
        EntropyValue entropy = entropy_from_counts(counts, size);
        const int cap = k + max_extra;
        while (entropy.bits < entropy_threshold && size < cap) {
            const Index j = order[static_cast<std::size_t>(size)];
            ++counts[static_cast<std::size_t>(dataset.trajectory_of[static_cast<std::size_t>(j)])];
            ++size;
            entropy = entropy_from_counts(counts, size);
        }

        auto& list = graph.neighbors[p];
        list.reserve(static_cast<std::size_t>(size));
        for (int r = 0; r < size; ++r) {
            const Index j = order[static_cast<std::size_t>(r)];
            list.push_back(NeighborEntry{j, distances.values(i, j)});
        }
        graph.chosen_k[p] = size;
        graph.entropy_at_k[p] = entropy;
    });

    symmetrize(graph);
    return graph;
}

TrajectoryDataset subsample(const TrajectoryDataset& dataset, int stride) {
    if (stride < 1) {
        throw ParameterError("subsample stride must be >= 1");
    }
    if (stride == 1) {
        return dataset;
    }

    std::vector<Index> kept;
    for (Index i = 0; i < dataset.n(); ++i) {
        if (dataset.time_index_of[static_cast<std::size_t>(i)] % stride == 0) {
            kept.push_back(i);
        }
    }

    TrajectoryDataset result;
    result.points.resize(static_cast<Index>(kept.size()), dataset.dim());
    result.trajectory_of.resize(kept.size());
    result.time_index_of.resize(kept.size());
    result.trajectory_labels = dataset.trajectory_labels;
    result.param_names = dataset.param_names;
    result.trajectory_params = dataset.trajectory_params;
    for (std::size_t s = 0; s < kept.size(); ++s) {
        const Index i = kept[s];
        result.points.row(static_cast<Index>(s)) = dataset.points.row(i);
        result.trajectory_of[s] = dataset.trajectory_of[static_cast<std::size_t>(i)];
        result.time_index_of[s] = dataset.time_index_of[static_cast<std::size_t>(i)] / stride;
    }
    return result;
}

GeodesicMatrix shortest_paths(const NeighborhoodGraph& graph) {
    const Index n = graph.point_count();
    const auto adjacency = graph.adjacency();
    constexpr double inf = std::numeric_limits<double>::infinity();

    GeodesicMatrix result;
    result.values.resize(n, n);

    parallel_for(0, static_cast<std::size_t>(n), [&](std::size_t s) {
        const Index source = static_cast<Index>(s);
        std::vector<double> dist(static_cast<std::size_t>(n), inf);
        dist[s] = 0.0;
        using Item = std::pair<double, Index>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
        queue.emplace(0.0, source);
        while (!queue.empty()) {
            const auto [d, u] = queue.top();
            queue.pop();
            if (d > dist[static_cast<std::size_t>(u)]) {
                continue;
            }
            for (const auto& edge : adjacency[static_cast<std::size_t>(u)]) {
                const double candidate = d + edge.distance;
                if (candidate < dist[static_cast<std::size_t>(edge.neighbor)]) {
                    dist[static_cast<std::size_t>(edge.neighbor)] = candidate;
                    queue.emplace(candidate, edge.neighbor);
                }
            }
        }
        for (Index j = 0; j < n; ++j) {
            result.values(source, j) = dist[static_cast<std::size_t>(j)];
        }
    });

    // Per-source runs can differ by rounding along reversed paths; taking
    // the pairwise min makes the matrix exactly symmetric.
    for (Index i = 0; i < n; ++i) {
        result.values(i, i) = 0.0;
        for (Index j = i + 1; j < n; ++j) {
            const double d = std::min(result.values(i, j), result.values(j, i));
            result.values(i, j) = d;
            result.values(j, i) = d;
        }
    }
    return result;
}

std::vector<std::vector<Index>> connected_components(const NeighborhoodGraph& graph) {
    const Index n = graph.point_count();
    const auto adjacency = graph.adjacency();
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<Index>> components;

    for (Index start = 0; start < n; ++start) {
        if (visited[static_cast<std::size_t>(start)]) {
            continue;
        }
        std::vector<Index> component;
        std::vector<Index> stack{start};
        visited[static_cast<std::size_t>(start)] = 1;
        while (!stack.empty()) {
            const Index u = stack.back();
            stack.pop_back();
            component.push_back(u);
            for (const auto& edge : adjacency[static_cast<std::size_t>(u)]) {
                if (!visited[static_cast<std::size_t>(edge.neighbor)]) {
                    visited[static_cast<std::size_t>(edge.neighbor)] = 1;
                    stack.push_back(edge.neighbor);
                }
            }
        }
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
    }
    return components;
}

GeodesicMatrix restrict_matrix(const GeodesicMatrix& full, const std::vector<Index>& kept) {
    const Index m = static_cast<Index>(kept.size());
    GeodesicMatrix result;
    result.values.resize(m, m);
    for (Index a = 0; a < m; ++a) {
        for (Index b = 0; b < m; ++b) {
            result.values(a, b) = full.values(kept[static_cast<std::size_t>(a)],
                                              kept[static_cast<std::size_t>(b)]);
        }
    }
    return result;
}

std::vector<Index> largest_component(const NeighborhoodGraph& graph) {
    auto components = connected_components(graph);
    if (components.empty()) {
        return {};
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < components.size(); ++c) {
        if (components[c].size() > components[best].size()) {
            best = c;
        }
    }
    return components[best];
}

MixingTable mixing_report(const TrajectoryDataset& dataset, const NeighborhoodGraph& graph) {
    if (graph.point_count() != dataset.n()) {
        throw ParameterError("graph does not cover the dataset");
    }
    const int traj_count = dataset.trajectory_count();
    MixingTable table = MixingTable::Zero(traj_count, traj_count);
    for (Index i = 0; i < dataset.n(); ++i) {
        const int from = dataset.trajectory_of[static_cast<std::size_t>(i)];
        for (const auto& entry : graph.neighbors[static_cast<std::size_t>(i)]) {
            const int to = dataset.trajectory_of[static_cast<std::size_t>(entry.neighbor)];
            ++table(from, to);
        }
    }
    return table;
}

} // namespace traj_manifold
