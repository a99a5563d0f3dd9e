#include "traj_manifold/traj_manifold.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace traj_manifold;

TrajectoryDataset roll_dataset(int n) {
    ProcessSpec spec;
    spec.family = ProcessFamily::SwissRollTrajectories;
    spec.trajectory_count = 6;
    spec.points_per_trajectory = n / 6;
    spec.seed = 7;
    return generate(spec);
}

void BM_PairwiseDistances(benchmark::State& state) {
    const auto dataset = roll_dataset(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(pairwise_distances(dataset));
    }
}
BENCHMARK(BM_PairwiseDistances)->Arg(300)->Arg(600)->Arg(1200);

void BM_KnnGraph(benchmark::State& state) {
    const auto dataset = roll_dataset(static_cast<int>(state.range(0)));
    const auto distances = pairwise_distances(dataset);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_knn_graph(dataset, distances, 8));
    }
}
BENCHMARK(BM_KnnGraph)->Arg(300)->Arg(600)->Arg(1200);

void BM_EntropyGraph(benchmark::State& state) {
    const auto dataset = roll_dataset(static_cast<int>(state.range(0)));
    const auto distances = pairwise_distances(dataset);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_entropy_graph(dataset, distances, 8, 0.3, 100));
    }
}
BENCHMARK(BM_EntropyGraph)->Arg(300)->Arg(600)->Arg(1200);

void BM_ShortestPaths(benchmark::State& state) {
    const auto dataset = roll_dataset(static_cast<int>(state.range(0)));
    const auto distances = pairwise_distances(dataset);
    const auto graph = build_knn_graph(dataset, distances, 8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(shortest_paths(graph));
    }
}
BENCHMARK(BM_ShortestPaths)->Arg(300)->Arg(600)->Arg(1200);

void BM_ClassicalMds(benchmark::State& state) {
    const auto dataset = roll_dataset(static_cast<int>(state.range(0)));
    const auto distances = pairwise_distances(dataset);
    for (auto _ : state) {
        benchmark::DoNotOptimize(classical_mds(distances, 3));
    }
}
BENCHMARK(BM_ClassicalMds)->Arg(120)->Arg(300)->Arg(600);

void BM_EntropyIsomapPipeline(benchmark::State& state) {
    const auto dataset = roll_dataset(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(entropy_isomap(dataset, 8, 0.3, 100, 3));
    }
}
BENCHMARK(BM_EntropyIsomapPipeline)->Arg(120)->Arg(300)->Arg(600);

} // namespace

int main(int argc, char** argv) {
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) {
        return 1;
    }
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
