// Full scenario episodes: one measurement is one complete run, ticking the
// policy against a fresh simulation until it finishes.

#include <benchmark/benchmark.h>

#include <string>

#include "polcomp/dsl.hpp"
#include "polcomp/runner.hpp"
#include "polcomp/synthesis.hpp"

namespace {

struct Setup {
    polcomp::Document doc;
    polcomp::PolicyTree tree;
    polcomp::StateMachine machine;
    polcomp::ScenarioSpec scenario;
};

const Setup& setup() {
    static Setup s = [] {
        Setup out;
        out.doc = polcomp::load_document(std::string(POLCOMP_BENCH_FIXTURES) +
                                         "/fetch_task.pol");
        out.tree = polcomp::backchain(out.doc.library, out.doc.goal_conditions());
        out.machine = polcomp::assemble_fault_tolerant_fsm(
            out.doc.library, out.doc.goal_conditions());
        out.scenario = *out.doc.find_scenario("nominal");
        return out;
    }();
    return s;
}

void BM_RunTreeEpisode(benchmark::State& state) {
    const Setup& s = setup();
    for (auto _ : state) {
        polcomp::RunResult r = polcomp::run_tree(s.tree, s.doc.library, s.scenario);
        benchmark::DoNotOptimize(r.steps);
    }
}
BENCHMARK(BM_RunTreeEpisode);

void BM_RunMachineEpisode(benchmark::State& state) {
    const Setup& s = setup();
    for (auto _ : state) {
        polcomp::RunResult r =
            polcomp::run_machine(s.machine, s.doc.library, s.scenario);
        benchmark::DoNotOptimize(r.steps);
    }
}
BENCHMARK(BM_RunMachineEpisode);

}  // namespace

BENCHMARK_MAIN();
