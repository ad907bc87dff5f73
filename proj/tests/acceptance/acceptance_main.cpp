// Acceptance gate: one line per criterion, exit 0 only when every pinned
// claim about the workbench holds on a fresh build. Each criterion is
// independent; a failure reports the first mismatch it hit.

#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "polcomp/dsl.hpp"
#include "polcomp/edits.hpp"
#include "polcomp/experiments.hpp"
#include "polcomp/metrics.hpp"
#include "polcomp/runner.hpp"
#include "polcomp/synthesis.hpp"

#include "generators.hpp"
#include "scripted_world.hpp"

namespace {

using namespace polcomp;

constexpr double kDistanceTolerance = 1e-9;
constexpr double kBatteryThreshold = 20.0;
constexpr double kThresholdSlack = 1e-9;

struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& detail) {
    if (!ok) throw CheckFailure(detail);
}

template <typename T>
std::string pair_text(T a, T b) {
    std::ostringstream out;
    out << a << "/" << b;
    return out.str();
}

std::string fixtures_dir() {
    if (const char* env = std::getenv("POLCOMP_FIXTURES")) return env;
    return POLCOMP_TEST_FIXTURES;
}

struct Workbench {
    Document fetch;
    Document scale;
    std::vector<Stage> fetch_stages;
    std::vector<Stage> scale_stages;
};

Workbench load_workbench() {
    Workbench w;
    w.fetch = load_document(fixtures_dir() + "/fetch_task.pol");
    w.scale = load_document(fixtures_dir() + "/fetch_5cubes.pol");
    w.fetch_stages = build_fetch_stages(w.fetch);
    w.scale_stages = build_scale_stages(w.scale);
    return w;
}

struct StagePin {
    const char* name;
    int tree_nodes;
    int tree_edges;
    int machine_nodes;
    int machine_edges;
};

void check_stage_counts(const std::vector<Stage>& stages,
                        const std::vector<StagePin>& pins,
                        const std::string& task) {
    expect(stages.size() == pins.size(),
           task + ": expected " + std::to_string(pins.size()) + " stages, got " +
               std::to_string(stages.size()));
    for (std::size_t i = 0; i < pins.size(); ++i) {
        const StagePin& pin = pins[i];
        DirectedGraph tree = stages[i].tree.to_graph();
        DirectedGraph machine = stages[i].machine.to_graph();
        std::string where = task + " " + pin.name;
        expect(static_cast<int>(tree.node_count()) == pin.tree_nodes &&
                   static_cast<int>(tree.edge_count()) == pin.tree_edges,
               where + " tree is " +
                   pair_text(tree.node_count(), tree.edge_count()) + ", wanted " +
                   pair_text(pin.tree_nodes, pin.tree_edges));
        expect(static_cast<int>(machine.node_count()) == pin.machine_nodes &&
                   static_cast<int>(machine.edge_count()) == pin.machine_edges,
               where + " machine is " +
                   pair_text(machine.node_count(), machine.edge_count()) +
                   ", wanted " +
                   pair_text(pin.machine_nodes, pin.machine_edges));
    }
}

// Criterion 1: every growth stage of both tasks has the reference node and
// edge counts, for the tree and the machine alike.
void stage_structure(const Workbench& w) {
    check_stage_counts(w.fetch_stages,
                       {{"baseline", 14, 13, 6, 18},
                        {"battery", 18, 17, 7, 25},
                        {"docking", 21, 20, 8, 30}},
                       "fetch");
    check_stage_counts(w.scale_stages,
                       {{"baseline", 77, 76, 24, 90}, {"battery", 80, 79, 25, 115}},
                       "scale");
}

// Criterion 2: machine cyclomatic complexity climbs 14 -> 20 -> 24 across the
// fetch stages.
void machine_complexity(const Workbench& w) {
    const int pins[] = {14, 20, 24};
    for (std::size_t i = 0; i < w.fetch_stages.size(); ++i) {
        int cc = metrics::cyclomatic_complexity(w.fetch_stages[i].machine.to_graph());
        expect(cc == pins[i], w.fetch_stages[i].name + " machine cyclomatic " +
                                  std::to_string(cc) + ", wanted " +
                                  std::to_string(pins[i]));
    }
}

void check_distance(const DirectedGraph& a, const DirectedGraph& b, double pin,
                    const std::string& label) {
    metrics::GedResult r = metrics::ged(a, b);
    expect(r.exact, label + ": distance search was cut off");
    expect(std::abs(r.distance - pin) < kDistanceTolerance,
           label + ": distance " + std::to_string(r.distance) + ", wanted " +
               std::to_string(pin));
}

// Criterion 3: graph edit distance between consecutive stages matches the
// reference values exactly, on both representations.
void edit_distance(const Workbench& w) {
    const std::vector<Stage>& f = w.fetch_stages;
    check_distance(f[0].tree.to_graph(), f[1].tree.to_graph(), 8, "fetch tree 0->1");
    check_distance(f[0].machine.to_graph(), f[1].machine.to_graph(), 8,
                   "fetch machine 0->1");
    check_distance(f[1].tree.to_graph(), f[2].tree.to_graph(), 6, "fetch tree 1->2");
    check_distance(f[1].machine.to_graph(), f[2].machine.to_graph(), 6,
                   "fetch machine 1->2");

    const std::vector<Stage>& s = w.scale_stages;
    check_distance(s[0].tree.to_graph(), s[1].tree.to_graph(), 6, "scale tree 0->1");
    check_distance(s[0].machine.to_graph(), s[1].machine.to_graph(), 26,
                   "scale machine 0->1");
}

// Criterion 4: the battery edit costs the same few operations on a tree no
// matter how large the tree is, while the machine's wiring bill grows with
// every working state it must be reachable from.
void edit_cost_scaling(const Workbench& w) {
    expect(w.fetch_stages[1].tree_receipt.total() == 8,
           "fetch battery tree receipt totals " +
               std::to_string(w.fetch_stages[1].tree_receipt.total()));
    expect(w.fetch_stages[1].machine_receipt.total() == 8,
           "fetch battery machine receipt totals " +
               std::to_string(w.fetch_stages[1].machine_receipt.total()));

    for (int leaves : {9, 99, 999}) {
        Document doc = w.fetch;
        PolicyTree tree;
        NodeId root = tree.add_fallback();
        tree.set_root(root);
        for (int i = 0; i < leaves; ++i) {
            Condition probe{"object_at",
                            {Arg::symbol("cube"), Arg::symbol("delivery")}};
            tree.attach(root, tree.add_condition(probe));
        }
        doc.tree = std::move(tree);
        RecipeResult result = apply_add_recharge(doc);
        EditReceipt want{4, 0, 4, 0};
        expect(result.receipt == want,
               "battery edit on a " + std::to_string(leaves + 1) +
                   "-node tree cost " + std::to_string(result.receipt.total()) +
                   " ops instead of 8");
    }

    StateMachine machine;
    for (int i = 0; i < 10; ++i) {
        Condition trigger{"battery_above", {Arg::number(20)}};
        Skill responder{"recharge", {Arg::number(90)}};
        EditReceipt r = machine.add_connected_state("responder" + std::to_string(i),
                                                    responder, trigger, true);
        expect(r.nodes_created == 1 && r.links_removed == 0 &&
                   r.links_added == i + 3,
               "connected state over " + std::to_string(i) +
                   " working states added " + std::to_string(r.links_added) +
                   " links, wanted " + std::to_string(i + 3));
    }
}

const ScenarioSpec& scenario(const Document& doc, const std::string& name) {
    const ScenarioSpec* found = doc.find_scenario(name);
    expect(found != nullptr, "fixture lacks scenario " + name);
    return *found;
}

// Criterion 5: under the scripted pick failure the brittle chain gives up
// while tree and fault-tolerant machine both retry their way to success.
void failure_recovery(const Workbench& w) {
    const ScenarioSpec& spec = scenario(w.fetch, "pick_failure");
    const Library& lib = w.fetch.library;

    RunResult tree = run_tree(w.fetch_stages[0].tree, lib, spec);
    expect(tree.outcome == RunOutcome::Success,
           std::string("tree finished ") + std::string(to_string(tree.outcome)));

    RunResult tolerant = run_machine(w.fetch_stages[0].machine, lib, spec);
    expect(tolerant.outcome == RunOutcome::Success,
           std::string("fault-tolerant machine finished ") +
               std::string(to_string(tolerant.outcome)));

    StateMachine brittle_machine =
        assemble_sequential_fsm(lib, w.fetch.goal_conditions());
    RunResult brittle = run_machine(brittle_machine, lib, spec);
    expect(brittle.outcome == RunOutcome::Failure,
           std::string("brittle chain finished ") +
               std::string(to_string(brittle.outcome)));
    expect(brittle.steps == 9, "brittle chain lasted " +
                                   std::to_string(brittle.steps) +
                                   " steps, wanted 9");
}

int send_count(const RunResult& result, const std::string& skill) {
    int n = 0;
    for (const CommandRecord& c : result.commands) {
        if (c.kind == "send" && c.skill == skill) ++n;
    }
    return n;
}

// Criterion 6: when the object is moved after delivery, the tree notices and
// re-fetches it; the machine had already finished its one pass before the
// disturbance landed, so its run is identical to the nominal one.
void disturbance_handling(const Workbench& w) {
    const Library& lib = w.fetch.library;
    const ScenarioSpec& moved = scenario(w.fetch, "relocation");

    RunResult tree = run_tree(w.fetch_stages[0].tree, lib, moved);
    expect(tree.outcome == RunOutcome::Success,
           std::string("tree finished ") + std::string(to_string(tree.outcome)));
    expect(tree.steps > 30, "tree finished in " + std::to_string(tree.steps) +
                                " steps, before the object moved");
    int picks = send_count(tree, "pick(cube)");
    expect(picks == 2,
           "tree sent pick(cube) " + std::to_string(picks) + " times, wanted 2");

    RunResult nominal =
        run_machine(w.fetch_stages[0].machine, lib, scenario(w.fetch, "nominal"));
    RunResult machine = run_machine(w.fetch_stages[0].machine, lib, moved);
    expect(machine.outcome == RunOutcome::Success,
           std::string("machine finished ") +
               std::string(to_string(machine.outcome)));
    expect(machine.steps < 30, "machine still running when the object moved");
    expect(machine.digest == nominal.digest,
           "machine run under relocation diverged from the nominal run");
}

void check_recharge_sends(const RunResult& result, const std::string& label) {
    int sends = 0;
    for (const CommandRecord& c : result.commands) {
        if (c.kind != "send" || c.skill.rfind("recharge", 0) != 0) continue;
        ++sends;
        expect(c.battery <= kBatteryThreshold + kThresholdSlack,
               label + " sent recharge at battery " + std::to_string(c.battery));
    }
    expect(sends > 0, label + " never sent recharge");
}

// Criterion 7: the battery responder added by the edit fires only below its
// threshold and both grown policies still finish the task.
void battery_responder(const Workbench& w) {
    const ScenarioSpec& spec = scenario(w.fetch, "low_battery");
    const Library& lib = w.fetch.library;

    RunResult tree = run_tree(w.fetch_stages[1].tree, lib, spec);
    expect(tree.outcome == RunOutcome::Success,
           std::string("grown tree finished ") +
               std::string(to_string(tree.outcome)));
    check_recharge_sends(tree, "tree");

    RunResult machine = run_machine(w.fetch_stages[1].machine, lib, spec);
    expect(machine.outcome == RunOutcome::Success,
           std::string("grown machine finished ") +
               std::string(to_string(machine.outcome)));
    check_recharge_sends(machine, "machine");
}

// Criterion 8: the randomized oracles hold: mirrored trees tick to the
// negated status with the same commands, the search distance agrees with
// brute force, serialization round-trips, and runs are replayable.
void randomized_oracles(const Workbench& w) {
    std::mt19937 tree_rng(20260825);
    for (int round = 0; round < 1000; ++round) {
        int counter = 0;
        testing::TreeSpec spec = testing::random_tree_spec(tree_rng, 0, counter);

        PolicyTree normal;
        normal.set_root(testing::build_tree(normal, spec, false));
        PolicyTree mirror;
        mirror.set_root(testing::build_tree(mirror, spec, true));

        testing::ScriptedWorld world;
        testing::prime_world(world, spec, false);
        testing::ScriptedWorld dual_world;
        testing::prime_world(dual_world, spec, true);

        BtExecution normal_exec(normal);
        BtExecution mirror_exec(mirror);
        TickTrace normal_trace;
        TickTrace mirror_trace;
        Status status = normal_exec.tick(world, &normal_trace);
        Status mirrored = mirror_exec.tick(dual_world, &mirror_trace);

        expect(mirrored == testing::flip(status),
               "round " + std::to_string(round) + ": mirrored root ticked " +
                   std::string(to_string(mirrored)) + " against " +
                   std::string(to_string(status)));
        expect(normal_trace.visits.size() == mirror_trace.visits.size(),
               "round " + std::to_string(round) + ": visit counts diverged");
        expect(world.sends == dual_world.sends,
               "round " + std::to_string(round) + ": commands diverged");
    }

    std::mt19937 graph_rng(31415);
    for (int round = 0; round < 100; ++round) {
        DirectedGraph g1 = testing::random_graph(graph_rng, 5);
        DirectedGraph g2 = testing::random_graph(graph_rng, 5);
        metrics::GedResult r = metrics::ged(g1, g2);
        double reference = metrics::ged_bruteforce(g1, g2);
        expect(r.exact, "pair " + std::to_string(round) + ": search cut off");
        expect(std::abs(r.distance - reference) < kDistanceTolerance,
               "pair " + std::to_string(round) + ": search found " +
                   std::to_string(r.distance) + ", brute force " +
                   std::to_string(reference));
        expect(metrics::same_structure(metrics::apply_edit_path(g1, r.edit_path), g2),
               "pair " + std::to_string(round) + ": edit path does not rebuild g2");
    }

    std::mt19937 doc_rng(27182);
    for (int round = 0; round < 100; ++round) {
        Document doc = testing::random_document(doc_rng);
        std::string canonical = serialize(doc);
        ParseResult reparsed = parse_document(canonical);
        expect(reparsed.ok(), "document " + std::to_string(round) +
                                  " failed to re-parse: " +
                                  reparsed.error->to_string());
        expect(serialize(*reparsed.document) == canonical,
               "document " + std::to_string(round) + " drifted on round-trip");
    }
    for (const Document* doc : {&w.fetch, &w.scale}) {
        std::string canonical = serialize(*doc);
        ParseResult reparsed = parse_document(canonical);
        expect(reparsed.ok() && serialize(*reparsed.document) == canonical,
               "fixture document drifted on round-trip");
    }

    const ScenarioSpec& nominal = scenario(w.fetch, "nominal");
    RunResult first = run_tree(w.fetch_stages[0].tree, w.fetch.library, nominal);
    RunResult second = run_tree(w.fetch_stages[0].tree, w.fetch.library, nominal);
    expect(first.digest == second.digest && first.steps == second.steps,
           "identical runs produced different histories");
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<void(const Workbench&)> check;
    };
    const std::vector<Criterion> criteria = {
        {"stage structure", stage_structure},
        {"machine complexity", machine_complexity},
        {"edit distance", edit_distance},
        {"edit cost scaling", edit_cost_scaling},
        {"failure recovery", failure_recovery},
        {"disturbance handling", disturbance_handling},
        {"battery responder", battery_responder},
        {"randomized oracles", randomized_oracles},
    };

    Workbench w;
    std::string load_error;
    try {
        w = load_workbench();
    } catch (const std::exception& e) {
        load_error = e.what();
    }

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        std::string detail = load_error;
        if (detail.empty()) {
            try {
                criterion.check(w);
            } catch (const std::exception& e) {
                detail = e.what();
            }
        }
        if (detail.empty()) {
            std::cout << "PASS: " << criterion.name << "\n";
        } else {
            std::cout << "FAIL: " << criterion.name << " (" << detail << ")\n";
            ++failures;
        }
    }
    return failures == 0 ? 0 : 1;
}
