#include "polcomp/experiments.hpp"

#include <sstream>
#include <utility>

#include "polcomp/edits.hpp"
#include "polcomp/metrics.hpp"
#include "polcomp/runner.hpp"
#include "polcomp/synthesis.hpp"

namespace polcomp {

namespace {

Stage baseline_stage(const Document& doc) {
    std::vector<Condition> goals = doc.goal_conditions();
    Stage stage;
    stage.name = "baseline";
    stage.tree = backchain(doc.library, goals);
    stage.machine = assemble_fault_tolerant_fsm(doc.library, goals);
    return stage;
}

// Runs the same recipe against tree and machine copies of `from` and keeps
// both results with their receipts.
Stage grown_stage(const Document& doc, const Stage& from, std::string name,
                  const std::string& recipe, const std::string& target) {
    Stage stage;
    stage.name = std::move(name);

    Document on_tree;
    on_tree.library = doc.library;
    on_tree.tree = from.tree;
    stage.tree_receipt = apply_recipe(on_tree, recipe, target).receipt;
    stage.tree = std::move(*on_tree.tree);

    Document on_machine;
    on_machine.library = doc.library;
    on_machine.machine = from.machine;
    stage.machine_receipt = apply_recipe(on_machine, recipe, target).receipt;
    stage.machine = std::move(*on_machine.machine);
    return stage;
}

void record_chain(std::vector<StageRecord>& out, const std::vector<Stage>& stages) {
    DirectedGraph prev_tree;
    DirectedGraph prev_machine;
    for (std::size_t i = 0; i < stages.size(); ++i) {
        const Stage& stage = stages[i];
        DirectedGraph tree_graph = stage.tree.to_graph();
        DirectedGraph machine_graph = stage.machine.to_graph();

        StageRecord rec;
        rec.name = stage.name;
        rec.tree = measure_graph(tree_graph);
        rec.machine = measure_graph(machine_graph);
        if (i > 0) {
            rec.tree_receipt = stage.tree_receipt;
            rec.machine_receipt = stage.machine_receipt;
            rec.tree_distance =
                static_cast<int>(metrics::ged(prev_tree, tree_graph).distance);
            rec.machine_distance =
                static_cast<int>(metrics::ged(prev_machine, machine_graph).distance);
        }
        out.push_back(std::move(rec));

        prev_tree = std::move(tree_graph);
        prev_machine = std::move(machine_graph);
    }
}

void add_runs(StudyReport& report, const Document& doc, const Stage& stage,
              const std::string& label, const std::string& scenario_name) {
    const ScenarioSpec* scenario = doc.find_scenario(scenario_name);
    if (scenario == nullptr) return;

    RunResult tree_run = run_tree(stage.tree, doc.library, *scenario);
    report.runs.push_back({label, "bt", scenario_name, tree_run.outcome,
                           tree_run.steps, tree_run.digest, tree_run.final_battery});

    RunResult machine_run = run_machine(stage.machine, doc.library, *scenario);
    report.runs.push_back({label, "fsm", scenario_name, machine_run.outcome,
                           machine_run.steps, machine_run.digest,
                           machine_run.final_battery});
}

void expect(CheckResult& result, const std::string& label, int expected, int got) {
    if (expected == got) return;
    std::ostringstream msg;
    msg << label << ": expected " << expected << ", got " << got;
    result.ok = false;
    result.mismatches.push_back(msg.str());
}

bool in_scope(ExperimentId tag, ExperimentId which) {
    return which == ExperimentId::All || tag == which;
}

struct StageExpectation {
    ExperimentId experiment;
    const char* chain;  // "fetch" or "scale"
    const char* name;
    int tree_nodes, tree_edges;
    int machine_nodes, machine_edges;
    int machine_cyclomatic;     // <0: not checked
    int tree_ops, machine_ops;  // <0: baseline, no edit
    int tree_distance, machine_distance;
};

// Everything the study is expected to reproduce, keyed by experiment.
const StageExpectation kStages[] = {
    {ExperimentId::Exp1, "fetch", "baseline", 14, 13, 6, 18, 14, -1, -1, -1, -1},
    {ExperimentId::Exp2, "fetch", "battery", 18, 17, 7, 25, 20, 8, 8, 8, 8},
    {ExperimentId::Exp3, "fetch", "docking", 21, 20, 8, 30, 24, 6, 8, 6, 6},
    {ExperimentId::Scale, "scale", "baseline", 77, 76, 24, 90, -1, -1, -1, -1, -1},
    {ExperimentId::Scale, "scale", "battery", 80, 79, 25, 115, -1, 6, 26, 6, 26},
};

struct RunExpectation {
    ExperimentId experiment;
    const char* stage;
    const char* repr;
    const char* scenario;
    RunOutcome outcome;
};

// The one non-success is deliberate: the brittle machine has no way back
// from a failed attempt, so the injected gripper fault ends its run.
const RunExpectation kRuns[] = {
    {ExperimentId::Exp1, "baseline", "bt", "nominal", RunOutcome::Success},
    {ExperimentId::Exp1, "baseline", "fsm", "nominal", RunOutcome::Success},
    {ExperimentId::Exp1, "baseline", "fsm-seq", "nominal", RunOutcome::Success},
    {ExperimentId::Exp1, "baseline", "bt", "pick_failure", RunOutcome::Success},
    {ExperimentId::Exp1, "baseline", "fsm", "pick_failure", RunOutcome::Success},
    {ExperimentId::Exp1, "baseline", "fsm-seq", "pick_failure", RunOutcome::Failure},
    {ExperimentId::Exp1, "baseline", "bt", "relocation", RunOutcome::Success},
    {ExperimentId::Exp1, "baseline", "fsm", "relocation", RunOutcome::Success},
    {ExperimentId::Exp2, "battery", "bt", "low_battery", RunOutcome::Success},
    {ExperimentId::Exp2, "battery", "fsm", "low_battery", RunOutcome::Success},
    {ExperimentId::Exp3, "docking", "bt", "nominal", RunOutcome::Success},
    {ExperimentId::Exp3, "docking", "fsm", "nominal", RunOutcome::Success},
    {ExperimentId::Scale, "scale-baseline", "bt", "nominal", RunOutcome::Success},
    {ExperimentId::Scale, "scale-baseline", "fsm", "nominal", RunOutcome::Success},
};

void check_stage(CheckResult& result, const StudyReport& report,
                 const StageExpectation& w) {
    const std::vector<StageRecord>& chain =
        std::string_view(w.chain) == "scale" ? report.scale : report.stages;
    const StageRecord* g = nullptr;
    for (const StageRecord& s : chain) {
        if (s.name == w.name) g = &s;
    }
    std::string prefix = std::string(w.chain) + "/" + w.name;
    if (g == nullptr) {
        result.ok = false;
        result.mismatches.push_back(prefix + ": stage missing from the report");
        return;
    }
    expect(result, prefix + " tree nodes", w.tree_nodes, g->tree.nodes);
    expect(result, prefix + " tree edges", w.tree_edges, g->tree.edges);
    expect(result, prefix + " machine nodes", w.machine_nodes, g->machine.nodes);
    expect(result, prefix + " machine edges", w.machine_edges, g->machine.edges);
    if (w.machine_cyclomatic >= 0) {
        expect(result, prefix + " machine cyclomatic", w.machine_cyclomatic,
               g->machine.cyclomatic);
    }
    if (w.tree_ops >= 0) {
        expect(result, prefix + " tree edit ops", w.tree_ops,
               g->tree_receipt ? g->tree_receipt->total() : -1);
        expect(result, prefix + " machine edit ops", w.machine_ops,
               g->machine_receipt ? g->machine_receipt->total() : -1);
        expect(result, prefix + " tree distance", w.tree_distance,
               g->tree_distance.value_or(-1));
        expect(result, prefix + " machine distance", w.machine_distance,
               g->machine_distance.value_or(-1));
    }
}

void check_run(CheckResult& result, const StudyReport& report,
               const RunExpectation& w) {
    std::string label =
        std::string(w.stage) + "/" + w.repr + "/" + w.scenario;
    for (const RunRecord& g : report.runs) {
        if (g.stage != w.stage || g.repr != w.repr || g.scenario != w.scenario) {
            continue;
        }
        if (g.outcome != w.outcome) {
            result.ok = false;
            result.mismatches.push_back(label + ": expected " +
                                        std::string(to_string(w.outcome)) + ", got " +
                                        std::string(to_string(g.outcome)));
        }
        return;
    }
    result.ok = false;
    result.mismatches.push_back(label + ": run missing from the report");
}

}  // namespace

std::optional<ExperimentId> experiment_from(std::string_view name) {
    if (name == "exp1") return ExperimentId::Exp1;
    if (name == "exp2") return ExperimentId::Exp2;
    if (name == "exp3") return ExperimentId::Exp3;
    if (name == "scale") return ExperimentId::Scale;
    if (name == "all" || name.empty()) return ExperimentId::All;
    return std::nullopt;
}

std::string_view to_string(ExperimentId id) {
    switch (id) {
        case ExperimentId::Exp1: return "exp1";
        case ExperimentId::Exp2: return "exp2";
        case ExperimentId::Exp3: return "exp3";
        case ExperimentId::Scale: return "scale";
        case ExperimentId::All: return "all";
    }
    return "all";
}

std::vector<Stage> build_fetch_stages(const Document& doc) {
    std::vector<Stage> stages;
    stages.push_back(baseline_stage(doc));
    stages.push_back(grown_stage(doc, stages.back(), "battery", "add-recharge", ""));
    stages.push_back(grown_stage(doc, stages.back(), "docking", "add-dock", "dock"));
    return stages;
}

std::vector<Stage> build_scale_stages(const Document& doc) {
    std::vector<Stage> stages;
    stages.push_back(baseline_stage(doc));
    stages.push_back(grown_stage(doc, stages.back(), "battery", "add-recharge", ""));
    return stages;
}

StudyReport compile_study(const Document& fetch, const Document& scale) {
    StudyReport report;

    std::vector<Stage> stages = build_fetch_stages(fetch);
    record_chain(report.stages, stages);
    std::vector<Stage> scaled = build_scale_stages(scale);
    record_chain(report.scale, scaled);

    const Stage& baseline = stages[0];
    const Stage& battery = stages[1];
    const Stage& docking = stages[2];
    StateMachine sequential =
        assemble_sequential_fsm(fetch.library, fetch.goal_conditions());
    auto add_seq_run = [&](const std::string& scenario_name) {
        const ScenarioSpec* scenario = fetch.find_scenario(scenario_name);
        if (scenario == nullptr) return;
        RunResult r = run_machine(sequential, fetch.library, *scenario);
        report.runs.push_back({"baseline", "fsm-seq", scenario_name, r.outcome,
                               r.steps, r.digest, r.final_battery});
    };

    add_runs(report, fetch, baseline, "baseline", "nominal");
    add_seq_run("nominal");
    add_runs(report, fetch, baseline, "baseline", "pick_failure");
    add_seq_run("pick_failure");
    add_runs(report, fetch, baseline, "baseline", "relocation");
    add_runs(report, fetch, battery, "battery", "low_battery");
    add_runs(report, fetch, docking, "docking", "nominal");
    add_runs(report, scale, scaled[0], "scale-baseline", "nominal");

    return report;
}

CheckResult check_study(const StudyReport& report, ExperimentId which) {
    CheckResult result;
    for (const StageExpectation& w : kStages) {
        if (in_scope(w.experiment, which)) check_stage(result, report, w);
    }
    for (const RunExpectation& w : kRuns) {
        if (in_scope(w.experiment, which)) check_run(result, report, w);
    }
    return result;
}

}  // namespace polcomp
