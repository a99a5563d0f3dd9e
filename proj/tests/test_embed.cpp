#include "traj_manifold/embed.hpp"
#include "traj_manifold/errors.hpp"
#include "traj_manifold/metrics.hpp"
#include "traj_manifold/reports.hpp"
#include "traj_manifold/synth.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace traj_manifold;

TEST_CASE("classical MDS of an all-zero distance matrix embeds at the origin") {
    DistanceMatrix zero;
    zero.values = Eigen::MatrixXd::Zero(4, 4);
    const auto result = classical_mds(zero, 2);
    CHECK(result.embedding.coords.isZero(0.0));
    CHECK(result.embedding.negative_mass_fraction == 0.0);
}

TEST_CASE("classical MDS recovers an equilateral triangle") {
    DistanceMatrix triangle;
    triangle.values = Eigen::MatrixXd::Ones(3, 3) - Eigen::MatrixXd::Identity(3, 3);
    const auto result = classical_mds(triangle, 2);
    const auto recovered = oracles::coord_distances(result.embedding.coords);
    for (Index i = 0; i < 3; ++i) {
        for (Index j = 0; j < 3; ++j) {
            const double expected = i == j ? 0.0 : 1.0;
            CHECK(recovered(i, j) == doctest::Approx(expected).epsilon(1e-9));
        }
    }
}

TEST_CASE("classical MDS reconstructs distances of random 3-d point sets") {
    const auto points = oracles::random_points(20, 3, 303);
    const auto distances = oracles::naive_distances(points);
    const auto result = classical_mds(DistanceMatrix{distances}, 3);
    const auto recovered = oracles::coord_distances(result.embedding.coords);
    CHECK((recovered - distances).cwiseAbs().maxCoeff() < 1e-8);

    // Spectrum of an exactly 3-d Euclidean configuration: three positive
    // eigenvalues, the rest numerically zero.
    for (Eigen::Index i = 3; i < result.spectrum.size(); ++i) {
        CHECK(std::abs(result.spectrum(i)) < 1e-8);
    }
    CHECK(result.embedding.negative_mass_fraction < 1e-8);
}

TEST_CASE("classical MDS validates its inputs") {
    DistanceMatrix bad;
    bad.values = Eigen::MatrixXd::Zero(3, 3);
    bad.values(0, 1) = 1.0; // asymmetric
    CHECK_THROWS_AS(classical_mds(bad, 1), ValidationError);

    DistanceMatrix diag;
    diag.values = Eigen::MatrixXd::Ones(3, 3);
    CHECK_THROWS_AS(classical_mds(diag, 1), ValidationError); // nonzero diagonal

    DistanceMatrix fine;
    fine.values = Eigen::MatrixXd::Ones(3, 3) - Eigen::MatrixXd::Identity(3, 3);
    CHECK_THROWS_AS(classical_mds(fine, 0), ParameterError);
    CHECK_THROWS_AS(classical_mds(fine, 3), ParameterError); // d > n-1
}

TEST_CASE("non-Euclidean inputs report negative eigenvalue mass") {
    // The 4-cycle path metric is not Euclidean-embeddable.
    Eigen::MatrixXd cycle(4, 4);
    cycle << 0, 1, 2, 1,
             1, 0, 1, 2,
             2, 1, 0, 1,
             1, 2, 1, 0;
    const auto result = classical_mds(DistanceMatrix{cycle}, 2);
    CHECK(result.embedding.negative_mass_fraction > 0.0);
    CHECK(result.spectrum.minCoeff() < 0.0);
    CHECK(result.embedding.coords.allFinite());
}

TEST_CASE("PCA of data in an exact 2-d subspace has zero residual at d=2") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    Eigen::MatrixXd basis(2, 10);
    for (Eigen::Index i = 0; i < 2; ++i) {
        for (Eigen::Index j = 0; j < 10; ++j) {
            basis(i, j) = uniform(rng);
        }
    }
    Eigen::MatrixXd latent(40, 2);
    for (Eigen::Index i = 0; i < 40; ++i) {
        latent(i, 0) = uniform(rng);
        latent(i, 1) = uniform(rng);
    }
    const auto dataset = oracles::as_dataset(latent * basis);

    const auto result = pca(dataset, 2);
    CHECK(residual_variance_pca(result.spectrum, 2).at(2) < 1e-10);
    for (Eigen::Index i = 2; i < 10; ++i) {
        CHECK(result.spectrum(i) <= 1e-10);
    }
}

TEST_CASE("PCA of a repeated point yields an all-zero spectrum") {
    Eigen::MatrixXd points(5, 3);
    for (Eigen::Index i = 0; i < 5; ++i) {
        points.row(i) << 1.0, 2.0, 3.0;
    }
    const auto dataset = oracles::as_dataset(points);
    const auto result = pca(dataset, 2);
    CHECK(result.spectrum.isZero(0.0));
    CHECK_THROWS_AS(residual_variance_pca(result.spectrum, 2), NumericalError);
}

TEST_CASE("PCA scores are uncorrelated") {
    const auto dataset = oracles::as_dataset(oracles::random_points(50, 6, 555));
    const auto result = pca(dataset, 6);
    const Eigen::MatrixXd gram =
        result.embedding.coords.transpose() * result.embedding.coords;
    for (Eigen::Index a = 0; a < 6; ++a) {
        for (Eigen::Index b = 0; b < 6; ++b) {
            if (a != b) {
                CHECK(std::abs(gram(a, b)) < 1e-8 * gram.diagonal().maxCoeff());
            }
        }
    }
    CHECK_THROWS_AS(pca(dataset, 7), ParameterError);
}

TEST_CASE("isomap at k = n-1 coincides with classical MDS of raw distances") {
    ProcessSpec spec;
    spec.family = ProcessFamily::DivergingFan;
    spec.trajectory_count = 3;
    spec.points_per_trajectory = 15;
    spec.noise_sigma = 0.01;
    spec.seed = 21;
    const auto dataset = generate(spec);
    const int n = static_cast<int>(dataset.n());

    const auto iso = isomap(dataset, n - 1, 3);
    const auto distances = pairwise_distances(dataset);
    const auto mds = classical_mds(distances, 3);

    const auto iso_distances = oracles::coord_distances(iso.embedding.coords);
    const auto mds_distances = oracles::coord_distances(mds.embedding.coords);
    CHECK((iso_distances - mds_distances).cwiseAbs().maxCoeff() < 1e-9);

    const auto r_iso = residual_variance_isomap(iso.geodesics, iso.embedding);
    const auto r_mds =
        residual_variance_isomap(GeodesicMatrix{distances.values}, mds.embedding);
    for (int d = 1; d <= 3; ++d) {
        CHECK(std::abs(r_iso.at(d) - r_mds.at(d)) < 1e-9);
    }
}

TEST_CASE("isomap geodesics are additive for 3 collinear points") {
    const auto dataset = oracles::as_dataset([] {
        Eigen::MatrixXd points(3, 1);
        points << 0.0, 1.0, 2.5;
        return points;
    }());
    const auto result = isomap(dataset, 1, 1);
    CHECK(result.embedding.excluded_points.empty());
    CHECK(result.geodesics.values(0, 2) == doctest::Approx(2.5).epsilon(1e-12));
    const auto recovered = oracles::coord_distances(result.embedding.coords);
    CHECK(recovered(0, 2) == doctest::Approx(2.5).epsilon(1e-9));
}

TEST_CASE("isomap beats PCA on a noiseless swiss roll at d=2") {
    ProcessSpec spec;
    spec.family = ProcessFamily::SwissRollTrajectories;
    spec.trajectory_count = 6;
    spec.points_per_trajectory = 100;
    const auto dataset = generate(spec); // n = 600, noiseless

    const auto iso = isomap(dataset, 8, 2);
    REQUIRE(iso.embedding.excluded_points.empty());
    const double r_iso = residual_variance_isomap(iso.geodesics, iso.embedding).at(2);

    const auto linear = pca(dataset, 2);
    const double r_pca = residual_variance_pca(linear.spectrum, 2).at(2);

    CHECK(r_iso < r_pca);
}

TEST_CASE("isomap drops points outside the largest component") {
    // Two far-apart clusters of different sizes.
    Eigen::MatrixXd points(9, 2);
    for (Index i = 0; i < 6; ++i) {
        points(i, 0) = 0.3 * static_cast<double>(i);
        points(i, 1) = 0.0;
    }
    for (Index i = 6; i < 9; ++i) {
        points(i, 0) = 900.0 + 0.3 * static_cast<double>(i);
        points(i, 1) = 0.0;
    }
    const auto dataset = oracles::as_dataset(points);
    const auto result = isomap(dataset, 2, 2);
    CHECK(result.embedding.excluded_points == std::vector<Index>{6, 7, 8});
    CHECK(result.embedding.coords.rows() == 6);
    CHECK(result.geodesics.values.allFinite());
    CHECK(result.embedding.kept_points(9) == std::vector<Index>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("entropy-isomap with threshold 0 reproduces isomap bit for bit") {
    ProcessSpec spec;
    spec.family = ProcessFamily::SwissRollTrajectories;
    spec.trajectory_count = 4;
    spec.points_per_trajectory = 40;
    spec.noise_sigma = 0.02;
    spec.seed = 31;
    const auto dataset = generate(spec);

    const auto adaptive = entropy_isomap(dataset, 6, 0.0, 50, 3);
    const auto plain = isomap(dataset, 6, 3);

    CHECK(adaptive.graph.symmetrized_edges.size() == plain.graph.symmetrized_edges.size());
    for (std::size_t e = 0; e < plain.graph.symmetrized_edges.size(); ++e) {
        CHECK(adaptive.graph.symmetrized_edges[e].u == plain.graph.symmetrized_edges[e].u);
        CHECK(adaptive.graph.symmetrized_edges[e].v == plain.graph.symmetrized_edges[e].v);
        CHECK(adaptive.graph.symmetrized_edges[e].weight ==
              plain.graph.symmetrized_edges[e].weight);
    }
    CHECK(adaptive.embedding.coords == plain.embedding.coords);
    CHECK(embedding_csv(dataset, adaptive.embedding) == embedding_csv(dataset, plain.embedding));
}

TEST_CASE("entropy-isomap on a single trajectory caps every neighborhood") {
    const auto dataset = oracles::as_dataset(oracles::random_points(40, 3, 606));
    const auto result = entropy_isomap(dataset, 4, 0.3, 10, 2);
    for (Index i = 0; i < dataset.n(); ++i) {
        CHECK(result.diagnostics.chosen_k[static_cast<std::size_t>(i)] == 14);
        CHECK(result.diagnostics.entropy[static_cast<std::size_t>(i)].bits == 0.0);
    }
    CHECK(result.diagnostics.capped_count == 40);
    CHECK(result.diagnostics.capped_fraction == 1.0);
    CHECK(result.diagnostics.mixing(0, 0) == 40 * 14);
}

TEST_CASE("well-mixed family caps fewer points than the isolated family") {
    ProcessSpec mixed;
    mixed.family = ProcessFamily::InterleavedPair;
    mixed.trajectory_count = 2;
    mixed.points_per_trajectory = 200;
    mixed.ambient_dim = 3;
    const auto interleaved = generate(mixed);

    ProcessSpec isolated;
    isolated.family = ProcessFamily::DivergingFan;
    isolated.trajectory_count = 6;
    isolated.points_per_trajectory = 200;
    isolated.ambient_dim = 3;
    const auto fan = generate(isolated);

    const auto mixed_result = entropy_isomap(interleaved, 8, 0.3, 100, 2);
    const auto fan_result = entropy_isomap(fan, 8, 0.3, 100, 2);

    CHECK(mixed_result.diagnostics.capped_fraction <
          fan_result.diagnostics.capped_fraction);
    CHECK(mixed_result.diagnostics.capped_count == 0);
    CHECK(fan_result.diagnostics.capped_count > 0);
}

TEST_CASE("diagnostics histogram covers [k, k+M] and sums to n") {
    ProcessSpec spec;
    spec.family = ProcessFamily::DivergingFan;
    spec.trajectory_count = 4;
    spec.points_per_trajectory = 30;
    const auto dataset = generate(spec);
    const auto result = entropy_isomap(dataset, 5, 0.4, 25, 3);

    const auto& hist = result.diagnostics.chosen_k_histogram;
    REQUIRE(hist.size() == 26);
    CHECK(hist.front().first == 5);
    CHECK(hist.back().first == 30);
    Index total = 0;
    for (const auto& [k, count] : hist) {
        total += count;
    }
    CHECK(total == dataset.n());
}
