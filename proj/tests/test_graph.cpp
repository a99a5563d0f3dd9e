#include "traj_manifold/errors.hpp"
#include "traj_manifold/graph.hpp"
#include "traj_manifold/metrics.hpp"
#include "traj_manifold/parallel.hpp"
#include "traj_manifold/synth.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

using namespace traj_manifold;

namespace {

TrajectoryDataset line_dataset(const std::vector<double>& xs) {
    Eigen::MatrixXd points(static_cast<Index>(xs.size()), 1);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        points(static_cast<Index>(i), 0) = xs[i];
    }
    return oracles::as_dataset(points);
}

bool graphs_equal(const NeighborhoodGraph& a, const NeighborhoodGraph& b) {
    if (a.point_count() != b.point_count() || a.chosen_k != b.chosen_k) {
        return false;
    }
    for (Index i = 0; i < a.point_count(); ++i) {
        const auto& la = a.neighbors[static_cast<std::size_t>(i)];
        const auto& lb = b.neighbors[static_cast<std::size_t>(i)];
        if (la.size() != lb.size()) {
            return false;
        }
        for (std::size_t r = 0; r < la.size(); ++r) {
            if (la[r].neighbor != lb[r].neighbor || la[r].distance != lb[r].distance) {
                return false;
            }
        }
        if (a.entropy_at_k[static_cast<std::size_t>(i)].bits !=
            b.entropy_at_k[static_cast<std::size_t>(i)].bits) {
            return false;
        }
    }
    if (a.symmetrized_edges.size() != b.symmetrized_edges.size()) {
        return false;
    }
    for (std::size_t e = 0; e < a.symmetrized_edges.size(); ++e) {
        if (a.symmetrized_edges[e].u != b.symmetrized_edges[e].u ||
            a.symmetrized_edges[e].v != b.symmetrized_edges[e].v ||
            a.symmetrized_edges[e].weight != b.symmetrized_edges[e].weight) {
            return false;
        }
    }
    return true;
}

/// Two tight clusters far apart; small k keeps them disconnected.
TrajectoryDataset two_cluster_dataset() {
    Eigen::MatrixXd points(12, 2);
    for (Index i = 0; i < 6; ++i) {
        points(i, 0) = 0.1 * static_cast<double>(i);
        points(i, 1) = 0.0;
        points(i + 6, 0) = 1000.0 + 0.1 * static_cast<double>(i);
        points(i + 6, 1) = 0.0;
    }
    return oracles::as_dataset(points);
}

} // namespace

TEST_CASE("knn picks the nearest point on a line") {
    const auto dataset = line_dataset({0.0, 1.0, 10.0});
    const auto distances = pairwise_distances(dataset);
    const auto neighbors = knn(distances, dataset, 0, 1);
    REQUIRE(neighbors.size() == 1);
    CHECK(neighbors[0] == 1);
}

TEST_CASE("knn with k = n-1 returns all other points sorted") {
    const auto dataset = line_dataset({5.0, 1.0, 4.0, 2.0});
    const auto distances = pairwise_distances(dataset);
    const auto neighbors = knn(distances, dataset, 0, 3);
    CHECK(neighbors == std::vector<Index>{2, 3, 1});
}

TEST_CASE("knn agrees with the full-sort oracle on random points") {
    const auto dataset = oracles::as_dataset(oracles::random_points(50, 3, 404));
    const auto distances = pairwise_distances(dataset);
    for (Index i = 0; i < dataset.n(); ++i) {
        const auto expected = oracles::sorted_row(dataset, distances.values, i);
        const auto neighbors = knn(distances, dataset, i, 8);
        for (int r = 0; r < 8; ++r) {
            CHECK(neighbors[static_cast<std::size_t>(r)] ==
                  expected[static_cast<std::size_t>(r)]);
        }
    }
}

TEST_CASE("knn rejects out-of-range k") {
    const auto dataset = line_dataset({0.0, 1.0, 2.0});
    const auto distances = pairwise_distances(dataset);
    CHECK_THROWS_AS(knn(distances, dataset, 0, 0), ParameterError);
    CHECK_THROWS_AS(knn(distances, dataset, 0, 3), ParameterError);
}

TEST_CASE("knn breaks distance ties deterministically") {
    // Points 1 and 2 are equidistant from point 0; trajectory order decides.
    Eigen::MatrixXd points(3, 2);
    points << 0, 0, 1, 0, -1, 0;
    TrajectoryDataset dataset = oracles::as_dataset(points);
    dataset.trajectory_of = {0, 1, 0};
    dataset.time_index_of = {0, 0, 1};
    dataset.trajectory_labels = {"a", "b"};
    dataset.trajectory_params.resize(2, 0);

    const auto distances = pairwise_distances(dataset);
    const auto neighbors = knn(distances, dataset, 0, 2);
    CHECK(neighbors == std::vector<Index>{2, 1}); // same trajectory wins the tie
}

TEST_CASE("3-point complete knn graph has 3 undirected edges") {
    const auto dataset = line_dataset({0.0, 1.0, 3.0});
    const auto graph = build_knn_graph(dataset, pairwise_distances(dataset), 2);
    CHECK(graph.symmetrized_edges.size() == 3);
    for (const auto& entry : graph.chosen_k) {
        CHECK(entry == 2);
    }
}

TEST_CASE("knn graph at k = n-1 is complete and geodesics equal input distances") {
    const auto dataset = oracles::as_dataset(oracles::random_points(20, 3, 17));
    const auto distances = pairwise_distances(dataset);
    const auto graph = build_knn_graph(dataset, distances, 19);
    CHECK(graph.symmetrized_edges.size() == 20 * 19 / 2);

    const auto geodesics = shortest_paths(graph);
    for (Index i = 0; i < 20; ++i) {
        for (Index j = 0; j < 20; ++j) {
            CHECK(geodesics.values(i, j) ==
                  doctest::Approx(distances.values(i, j)).epsilon(1e-12));
        }
    }
}

TEST_CASE("well-separated clusters split into components at small k") {
    const auto dataset = two_cluster_dataset();
    const auto graph = build_knn_graph(dataset, pairwise_distances(dataset), 2);
    const auto components = connected_components(graph);
    REQUIRE(components.size() == 2);
    CHECK(components[0] == std::vector<Index>{0, 1, 2, 3, 4, 5});
    CHECK(components[1] == std::vector<Index>{6, 7, 8, 9, 10, 11});
}

TEST_CASE("entropy graph keeps k when the initial neighborhood meets the threshold") {
    ProcessSpec spec;
    spec.family = ProcessFamily::InterleavedPair;
    spec.trajectory_count = 2;
    spec.points_per_trajectory = 20;
    spec.ambient_dim = 1;
    const auto dataset = generate(spec);
    const int slots = 2 * spec.points_per_trajectory;
    const auto graph = build_entropy_graph(dataset, pairwise_distances(dataset), 2, 0.9, 10);
    for (Index i = 0; i < dataset.n(); ++i) {
        // Interior points: the initial 2-neighborhood holds one point per
        // trajectory, entropy 1 bit >= 0.9, so no growth happens.
        const int slot = static_cast<int>(std::lround(dataset.points(i, 0)));
        if (slot >= 1 && slot <= slots - 2) {
            CHECK(graph.chosen_k[static_cast<std::size_t>(i)] == 2);
            CHECK(graph.entropy_at_k[static_cast<std::size_t>(i)].bits == 1.0);
        } else {
            // Line endpoints start single-trajectory and grow a little.
            CHECK(graph.chosen_k[static_cast<std::size_t>(i)] >= 2);
            CHECK(graph.entropy_at_k[static_cast<std::size_t>(i)].bits >= 0.9);
        }
    }
}

TEST_CASE("entropy graph caps at k+M on a single trajectory") {
    const auto dataset = oracles::as_dataset(oracles::random_points(30, 2, 5));
    const auto graph = build_entropy_graph(dataset, pairwise_distances(dataset), 3, 0.5, 7);
    for (Index i = 0; i < dataset.n(); ++i) {
        CHECK(graph.chosen_k[static_cast<std::size_t>(i)] == 10);
        CHECK(graph.entropy_at_k[static_cast<std::size_t>(i)].bits == 0.0);
    }
}

TEST_CASE("entropy graph chosen_k matches the exhaustive-scan oracle") {
    ProcessSpec spec;
    spec.family = ProcessFamily::InterleavedPair;
    spec.trajectory_count = 2;
    spec.points_per_trajectory = 25;
    spec.ambient_dim = 1;
    spec.noise_sigma = 0.35; // jitter the alternation
    spec.seed = 11;
    const auto dataset = generate(spec);
    const auto distances = pairwise_distances(dataset);

    const int k = 2;
    const int max_extra = 9;
    const double threshold = 0.9;
    const auto graph = build_entropy_graph(dataset, distances, k, threshold, max_extra);

    for (Index i = 0; i < dataset.n(); ++i) {
        const auto order = oracles::sorted_row(dataset, distances.values, i);
        int expected = k + max_extra;
        double expected_bits = 0.0;
        for (int size = k; size <= k + max_extra; ++size) {
            std::vector<int> labels;
            for (int r = 0; r < size; ++r) {
                labels.push_back(
                    dataset.trajectory_of[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])]);
            }
            const double bits = neighborhood_entropy(labels).bits;
            if (size == k + max_extra) {
                expected_bits = bits;
            }
            if (bits >= threshold) {
                expected = size;
                expected_bits = bits;
                break;
            }
        }
        CHECK(graph.chosen_k[static_cast<std::size_t>(i)] == expected);
        CHECK(graph.entropy_at_k[static_cast<std::size_t>(i)].bits ==
              doctest::Approx(expected_bits).epsilon(1e-12));
    }
}

TEST_CASE("entropy graph escape guarantee and monotone containment") {
    ProcessSpec spec;
    spec.family = ProcessFamily::DivergingFan;
    spec.trajectory_count = 4;
    spec.points_per_trajectory = 40;
    spec.ambient_dim = 2;
    const auto dataset = generate(spec);
    const auto distances = pairwise_distances(dataset);

    const int k = 4;
    const int max_extra = 20;
    const double threshold = 0.4;
    const auto adaptive = build_entropy_graph(dataset, distances, k, threshold, max_extra);
    const auto fixed = build_knn_graph(dataset, distances, k);

    for (Index i = 0; i < dataset.n(); ++i) {
        const auto& entry = adaptive.entropy_at_k[static_cast<std::size_t>(i)];
        const int chosen = adaptive.chosen_k[static_cast<std::size_t>(i)];
        CHECK((entry.bits >= threshold || chosen == k + max_extra));
        CHECK(chosen >= k);
        CHECK(chosen <= k + max_extra);
        CHECK(static_cast<int>(adaptive.neighbors[static_cast<std::size_t>(i)].size()) ==
              chosen);

        // Prefix property: the k nearest stay in the grown neighborhood.
        for (int r = 0; r < k; ++r) {
            CHECK(adaptive.neighbors[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)]
                      .neighbor ==
                  fixed.neighbors[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)]
                      .neighbor);
        }
    }
}

TEST_CASE("entropy threshold 0 reduces the adaptive graph to the knn graph") {
    ProcessSpec spec;
    spec.family = ProcessFamily::SwissRollTrajectories;
    spec.trajectory_count = 3;
    spec.points_per_trajectory = 30;
    spec.noise_sigma = 0.1;
    spec.seed = 3;
    const auto dataset = generate(spec);
    const auto distances = pairwise_distances(dataset);
    CHECK(graphs_equal(build_entropy_graph(dataset, distances, 5, 0.0, 40),
                       build_knn_graph(dataset, distances, 5)));
}

TEST_CASE("entropy graph rejects bad parameters") {
    const auto dataset = line_dataset({0, 1, 2, 3, 4});
    const auto distances = pairwise_distances(dataset);
    CHECK_THROWS_AS(build_entropy_graph(dataset, distances, 0, 0.3, 2), ParameterError);
    CHECK_THROWS_AS(build_entropy_graph(dataset, distances, 2, -0.1, 2), ParameterError);
    CHECK_THROWS_AS(build_entropy_graph(dataset, distances, 2, 0.3, 3), ParameterError);
    CHECK_THROWS_AS(build_entropy_graph(dataset, distances, 2, 0.3, -1), ParameterError);
}

TEST_CASE("subsample stride 1 is the identity") {
    ProcessSpec spec;
    spec.family = ProcessFamily::DivergingFan;
    spec.trajectory_count = 3;
    spec.points_per_trajectory = 10;
    const auto dataset = generate(spec);
    const auto copy = subsample(dataset, 1);
    CHECK(copy.points == dataset.points);
    CHECK(copy.time_index_of == dataset.time_index_of);
}

TEST_CASE("subsample stride 2 keeps even ranks and re-ranks densely") {
    ProcessSpec spec;
    spec.family = ProcessFamily::InterleavedPair;
    spec.trajectory_count = 2;
    spec.points_per_trajectory = 10;
    spec.ambient_dim = 1;
    const auto dataset = generate(spec);
    const auto thinned = subsample(dataset, 2);
    CHECK(thinned.n() == 10);
    for (int g = 0; g < 2; ++g) {
        const auto points = thinned.points_of(g);
        REQUIRE(points.size() == 5);
        for (std::size_t r = 0; r < points.size(); ++r) {
            CHECK(thinned.time_index_of[static_cast<std::size_t>(points[r])] ==
                  static_cast<int>(r));
        }
    }
    CHECK(validate(thinned).empty());
}

TEST_CASE("subsample saturates to one point per trajectory") {
    ProcessSpec spec;
    spec.family = ProcessFamily::DivergingFan;
    spec.trajectory_count = 4;
    spec.points_per_trajectory = 7;
    const auto dataset = generate(spec);
    const auto thinned = subsample(dataset, 100);
    CHECK(thinned.n() == 4);
    for (int rank : thinned.time_index_of) {
        CHECK(rank == 0);
    }
}

TEST_CASE("skip graph with s = 0 equals the knn graph") {
    const auto dataset = oracles::as_dataset(oracles::random_points(25, 2, 61));
    const auto distances = pairwise_distances(dataset);
    CHECK(graphs_equal(build_skip_graph(dataset, distances, 4, 0),
                       build_knn_graph(dataset, distances, 4)));
}

TEST_CASE("skip graph skips the s nearest points") {
    const auto dataset = line_dataset({0, 1, 2, 3, 4});
    const auto distances = pairwise_distances(dataset);
    const auto graph = build_skip_graph(dataset, distances, 1, 1);
    REQUIRE(graph.neighbors[0].size() == 1);
    CHECK(graph.neighbors[0][0].neighbor == 2);
}

TEST_CASE("skip graph slices the full-sort oracle at [s, s+k)") {
    const auto dataset = oracles::as_dataset(oracles::random_points(30, 3, 91));
    const auto distances = pairwise_distances(dataset);
    const int k = 5;
    const int skip = 3;
    const auto graph = build_skip_graph(dataset, distances, k, skip);
    for (Index i = 0; i < dataset.n(); ++i) {
        const auto expected = oracles::sorted_row(dataset, distances.values, i);
        for (int r = 0; r < k; ++r) {
            CHECK(graph.neighbors[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)]
                      .neighbor == expected[static_cast<std::size_t>(skip + r)]);
        }
    }
    CHECK_THROWS_AS(build_skip_graph(dataset, distances, 20, 15), ParameterError);
}

TEST_CASE("shortest paths on a unit path graph") {
    const auto dataset = line_dataset({0.0, 1.0, 2.0});
    const auto graph = build_knn_graph(dataset, pairwise_distances(dataset), 1);
    const auto geodesics = shortest_paths(graph);
    CHECK(geodesics.values(0, 2) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(geodesics.values(0, 1) == 1.0);
    CHECK(geodesics.values(0, 0) == 0.0);
}

TEST_CASE("shortest paths match Floyd-Warshall on random sparse graphs") {
    std::mt19937_64 rng(2025);
    for (int trial = 0; trial < 10; ++trial) {
        const Index n = 10 + static_cast<Index>(rng() % 21);
        const auto dataset =
            oracles::as_dataset(oracles::random_points(n, 3, static_cast<unsigned>(trial + 50)));
        const auto distances = pairwise_distances(dataset);
        const int k = 2 + static_cast<int>(rng() % 3);
        const auto graph = build_knn_graph(dataset, distances, k);

        const auto geodesics = shortest_paths(graph);
        const auto expected = oracles::floyd_warshall(n, graph.symmetrized_edges);
        for (Index i = 0; i < n; ++i) {
            for (Index j = 0; j < n; ++j) {
                if (std::isinf(expected(i, j))) {
                    CHECK(std::isinf(geodesics.values(i, j)));
                } else {
                    CHECK(geodesics.values(i, j) ==
                          doctest::Approx(expected(i, j)).epsilon(1e-12));
                }
            }
        }
    }
}

TEST_CASE("geodesics dominate direct edges and satisfy the triangle inequality") {
    const auto dataset = oracles::as_dataset(oracles::random_points(40, 2, 123));
    const auto graph = build_knn_graph(dataset, pairwise_distances(dataset), 3);
    const auto geodesics = shortest_paths(graph);

    CHECK(geodesics.values == geodesics.values.transpose());
    for (const auto& edge : graph.symmetrized_edges) {
        CHECK(geodesics.values(edge.u, edge.v) <= edge.weight);
    }
    const Index n = dataset.n();
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            for (Index l = 0; l < n; ++l) {
                const double via = geodesics.values(i, l) + geodesics.values(l, j);
                if (std::isfinite(via)) {
                    CHECK(geodesics.values(i, j) <= via + 1e-9);
                }
            }
        }
    }
}

TEST_CASE("connected components: complete, clustered and edgeless graphs") {
    const auto dataset = line_dataset({0, 1, 2, 3});
    const auto complete = build_knn_graph(dataset, pairwise_distances(dataset), 3);
    CHECK(connected_components(complete).size() == 1);
    CHECK(largest_component(complete).size() == 4);

    NeighborhoodGraph edgeless;
    edgeless.neighbors.resize(5);
    edgeless.chosen_k.assign(5, 0);
    edgeless.entropy_at_k.resize(5);
    const auto singletons = connected_components(edgeless);
    CHECK(singletons.size() == 5);
    for (std::size_t i = 0; i < singletons.size(); ++i) {
        CHECK(singletons[i] == std::vector<Index>{static_cast<Index>(i)});
    }
}

TEST_CASE("mixing report row sums equal total chosen_k and match a recount") {
    ProcessSpec spec;
    spec.family = ProcessFamily::InterleavedPair;
    spec.trajectory_count = 2;
    spec.points_per_trajectory = 30;
    spec.ambient_dim = 1;
    const auto dataset = generate(spec);
    const auto graph = build_entropy_graph(dataset, pairwise_distances(dataset), 2, 0.9, 5);
    const auto table = mixing_report(dataset, graph);

    REQUIRE(table.rows() == 2);
    CHECK(table(0, 1) > 0);
    CHECK(table(1, 0) > 0);

    MixingTable recount = MixingTable::Zero(2, 2);
    std::vector<std::int64_t> row_chosen(2, 0);
    for (Index i = 0; i < dataset.n(); ++i) {
        const int from = dataset.trajectory_of[static_cast<std::size_t>(i)];
        row_chosen[static_cast<std::size_t>(from)] +=
            graph.chosen_k[static_cast<std::size_t>(i)];
        for (const auto& entry : graph.neighbors[static_cast<std::size_t>(i)]) {
            ++recount(from, dataset.trajectory_of[static_cast<std::size_t>(entry.neighbor)]);
        }
    }
    CHECK(table == recount);
    for (int g = 0; g < 2; ++g) {
        CHECK(table.row(g).sum() == row_chosen[static_cast<std::size_t>(g)]);
    }
}

TEST_CASE("mixing report of a single trajectory is one total-count cell") {
    const auto dataset = oracles::as_dataset(oracles::random_points(10, 2, 8));
    const auto graph = build_knn_graph(dataset, pairwise_distances(dataset), 3);
    const auto table = mixing_report(dataset, graph);
    REQUIRE(table.rows() == 1);
    CHECK(table(0, 0) == 30);
}

TEST_CASE("mixing report is diagonal when entropy is zero everywhere") {
    Eigen::MatrixXd points(8, 1);
    points << 0, 1, 2, 3, 500, 501, 502, 503;
    TrajectoryDataset dataset = oracles::as_dataset(points);
    dataset.trajectory_of = {0, 0, 0, 0, 1, 1, 1, 1};
    dataset.time_index_of = {0, 1, 2, 3, 0, 1, 2, 3};
    dataset.trajectory_labels = {"a", "b"};
    dataset.trajectory_params.resize(2, 0);

    const auto graph = build_knn_graph(dataset, pairwise_distances(dataset), 2);
    const auto table = mixing_report(dataset, graph);
    CHECK(table(0, 1) == 0);
    CHECK(table(1, 0) == 0);
    CHECK(table(0, 0) == 8);
    CHECK(table(1, 1) == 8);
}

TEST_CASE("graph construction is deterministic across thread caps") {
    ProcessSpec spec;
    spec.family = ProcessFamily::SwissRollTrajectories;
    spec.trajectory_count = 3;
    spec.points_per_trajectory = 40;
    spec.noise_sigma = 0.05;
    spec.seed = 9;
    const auto dataset = generate(spec);
    const auto distances = pairwise_distances(dataset);

    const int previous = thread_cap();
    set_thread_cap(1);
    const auto reference = build_entropy_graph(dataset, distances, 4, 0.5, 30);
    const auto reference_paths = shortest_paths(reference);
    set_thread_cap(3);
    const auto threaded = build_entropy_graph(dataset, distances, 4, 0.5, 30);
    const auto threaded_paths = shortest_paths(threaded);
    set_thread_cap(previous);

    CHECK(graphs_equal(reference, threaded));
    CHECK(reference_paths.values == threaded_paths.values);
}
