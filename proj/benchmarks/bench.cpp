// Microbenchmarks for the hot paths: graph conversion, link scoring,
// and end-to-end batch classification.

#include <benchmark/benchmark.h>

#include <random>

#include "culp/classify.hpp"
#include "culp/leg.hpp"
#include "culp/linkpred.hpp"

using namespace culp;

namespace {

const SimilarityConfig kSim{SimilarityKind::InverseEuclidean, 1e-6};

DataMatrix random_matrix(int rows, int cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    DataMatrix X;
    for (int i = 0; i < rows; ++i) {
        std::vector<double> row(static_cast<std::size_t>(cols));
        for (auto& v : row) v = u(rng);
        X.append_row(row);
    }
    return X;
}

LabelVector random_labels(int n, int C, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    LabelVector y;
    y.class_count = C;
    for (int c = 1; c <= C; ++c) y.labels.push_back(c);
    std::uniform_int_distribution<int> lab(1, C);
    for (int i = C; i < n; ++i) y.labels.push_back(lab(rng));
    return y;
}

void bm_knn_convert(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto X = random_matrix(n, 8, 1);
    for (auto _ : state) benchmark::DoNotOptimize(knn_convert(X, kSim, 10));
    state.SetComplexityN(n);
}
BENCHMARK(bm_knn_convert)->Range(64, 1024)->Complexity();

void bm_leg_build(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto Xl = random_matrix(n, 8, 2);
    auto Xu = random_matrix(n / 10 + 1, 8, 3);
    auto y = random_labels(n, 4, 4);
    for (auto _ : state) benchmark::DoNotOptimize(build_leg(Xl, Xu, y, kSim, 10));
}
BENCHMARK(bm_leg_build)->Range(64, 1024);

void bm_insert_unlabeled(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto Xl = random_matrix(n, 8, 5);
    auto Xu = random_matrix(4, 8, 6);
    auto y = random_labels(n, 4, 7);
    Leg leg = build_leg(Xl, Xu, y, kSim, 10);
    auto probe = random_matrix(1, 8, 8);
    for (auto _ : state) benchmark::DoNotOptimize(leg.insert_unlabeled(probe.row(0)));
}
BENCHMARK(bm_insert_unlabeled)->Range(64, 1024);

void bm_link_scores(benchmark::State& state) {
    auto Xl = random_matrix(400, 8, 9);
    auto Xu = random_matrix(40, 8, 10);
    auto y = random_labels(400, 4, 11);
    Leg leg = build_leg(Xl, Xu, y, kSim, 10);
    const auto kind = static_cast<PredictorKind>(state.range(0));
    for (auto _ : state)
        for (int t = 0; t < leg.unlabeled_count(); ++t)
            for (int c = 1; c <= leg.class_count(); ++c)
                benchmark::DoNotOptimize(link_score(kind, leg.adjacency(),
                                                    leg.labeled_count() + 1 + t,
                                                    leg.class_node(c)));
}
BENCHMARK(bm_link_scores)->DenseRange(0, 3);  // cn, aa, ra, cs

void bm_classify_batch(benchmark::State& state) {
    auto Xl = random_matrix(300, 8, 12);
    auto Xu = random_matrix(30, 8, 13);
    auto y = random_labels(300, 3, 14);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            culp_classify_all(Xl, Xu, y, kSim, 10, PredictorKind::CS));
}
BENCHMARK(bm_classify_batch);

}  // namespace

BENCHMARK_MAIN();
