// Cost of the edit distance computations the metrics command performs: the
// aligned tree pair takes the shared-id fast path, the machine pair forces a
// real search, and the brute-force oracle bounds what the tests can afford.

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "polcomp/dsl.hpp"
#include "polcomp/experiments.hpp"
#include "polcomp/metrics.hpp"

namespace {

const std::vector<polcomp::Stage>& fetch_stages() {
    static std::vector<polcomp::Stage> stages = [] {
        polcomp::Document doc = polcomp::load_document(
            std::string(POLCOMP_BENCH_FIXTURES) + "/fetch_task.pol");
        return polcomp::build_fetch_stages(doc);
    }();
    return stages;
}

void BM_GedTreePair(benchmark::State& state) {
    polcomp::DirectedGraph a = fetch_stages()[0].tree.to_graph();
    polcomp::DirectedGraph b = fetch_stages()[1].tree.to_graph();
    for (auto _ : state) {
        polcomp::metrics::GedResult r = polcomp::metrics::ged(a, b);
        benchmark::DoNotOptimize(r.distance);
    }
}
BENCHMARK(BM_GedTreePair);

void BM_GedMachinePair(benchmark::State& state) {
    polcomp::DirectedGraph a = fetch_stages()[1].machine.to_graph();
    polcomp::DirectedGraph b = fetch_stages()[2].machine.to_graph();
    for (auto _ : state) {
        polcomp::metrics::GedResult r = polcomp::metrics::ged(a, b);
        benchmark::DoNotOptimize(r.distance);
    }
}
BENCHMARK(BM_GedMachinePair);

polcomp::DirectedGraph random_graph(std::mt19937& rng, int nodes) {
    polcomp::DirectedGraph g;
    for (int i = 0; i < nodes; ++i) {
        g.add_node("n" + std::to_string(i), "");
    }
    std::bernoulli_distribution edge(0.3);
    for (int i = 0; i < nodes; ++i) {
        for (int j = 0; j < nodes; ++j) {
            if (edge(rng)) {
                g.add_edge("n" + std::to_string(i), "n" + std::to_string(j), "");
            }
        }
    }
    return g;
}

void BM_GedBruteforce(benchmark::State& state) {
    std::mt19937 rng(12345);
    int nodes = static_cast<int>(state.range(0));
    polcomp::DirectedGraph a = random_graph(rng, nodes);
    polcomp::DirectedGraph b = random_graph(rng, nodes);
    for (auto _ : state) {
        double d = polcomp::metrics::ged_bruteforce(a, b);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_GedBruteforce)->Arg(4)->Arg(5)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
