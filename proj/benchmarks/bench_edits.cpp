// How the battery edit scales with policy size: wrapping a tree root touches
// a constant number of nodes, wiring a connected machine state touches every
// working state.

#include <benchmark/benchmark.h>

#include <string>

#include "polcomp/dsl.hpp"
#include "polcomp/edits.hpp"

namespace {

const polcomp::Document& fetch_document() {
    static polcomp::Document doc =
        polcomp::load_document(std::string(POLCOMP_BENCH_FIXTURES) +
                               "/fetch_task.pol");
    return doc;
}

polcomp::Document document_with_tree(int leaves) {
    polcomp::Document doc = fetch_document();
    polcomp::PolicyTree tree;
    polcomp::NodeId root = tree.add_fallback();
    tree.set_root(root);
    polcomp::Condition probe{"object_at", {polcomp::Arg::symbol("cube"),
                                           polcomp::Arg::symbol("delivery")}};
    for (int i = 0; i < leaves; ++i) {
        tree.attach(root, tree.add_condition(probe));
    }
    doc.tree = std::move(tree);
    return doc;
}

polcomp::StateMachine machine_with_states(int working) {
    polcomp::StateMachine machine;
    polcomp::Condition trigger{"battery_above", {polcomp::Arg::number(20)}};
    polcomp::Skill responder{"recharge", {polcomp::Arg::number(90)}};
    for (int i = 0; i < working; ++i) {
        machine.add_connected_state("state" + std::to_string(i), responder,
                                    trigger, true);
    }
    return machine;
}

void BM_TreeBatteryEdit(benchmark::State& state) {
    polcomp::Document base = document_with_tree(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        state.PauseTiming();
        polcomp::Document doc = base;
        state.ResumeTiming();
        polcomp::RecipeResult result = polcomp::apply_add_recharge(doc);
        benchmark::DoNotOptimize(result.receipt);
    }
}
BENCHMARK(BM_TreeBatteryEdit)->Arg(10)->Arg(100)->Arg(1000);

void BM_MachineBatteryEdit(benchmark::State& state) {
    polcomp::StateMachine base = machine_with_states(static_cast<int>(state.range(0)));
    polcomp::Condition trigger{"battery_above", {polcomp::Arg::number(20)}};
    polcomp::Skill responder{"recharge", {polcomp::Arg::number(90)}};
    for (auto _ : state) {
        state.PauseTiming();
        polcomp::StateMachine machine = base;
        state.ResumeTiming();
        polcomp::EditReceipt receipt =
            machine.add_connected_state("fresh", responder, trigger, true);
        benchmark::DoNotOptimize(receipt);
    }
}
BENCHMARK(BM_MachineBatteryEdit)->Arg(4)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
