// polcomp: build, run, edit, measure, and reproduce task policies.
//
// Exit status: 0 on success, 1 when a run or reference check comes back
// negative, 2 on unusable input.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "polcomp/dsl.hpp"
#include "polcomp/edits.hpp"
#include "polcomp/experiments.hpp"
#include "polcomp/graph.hpp"
#include "polcomp/metrics.hpp"
#include "polcomp/report.hpp"
#include "polcomp/runner.hpp"
#include "polcomp/synthesis.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitBadInput = 2;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fixtures_dir() {
    if (const char* env = std::getenv("POLCOMP_FIXTURES")) return env;
    return POLCOMP_DEFAULT_FIXTURES;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    out << text;
}

// A policy pair: exactly one side is set.
struct BuiltPolicy {
    std::optional<polcomp::PolicyTree> tree;
    std::optional<polcomp::StateMachine> machine;

    polcomp::DirectedGraph graph() const {
        return tree ? tree->to_graph() : machine->to_graph();
    }
};

// Uses the policy block when the document has one, otherwise synthesizes the
// requested representation from the goals.
BuiltPolicy resolve_policy(const polcomp::Document& doc, const std::string& repr) {
    BuiltPolicy built;
    if (doc.tree) {
        if (repr != "bt" && !repr.empty()) {
            throw InputError("the document carries a tree; --repr " + repr +
                             " does not apply");
        }
        built.tree = *doc.tree;
        return built;
    }
    if (doc.machine) {
        if (repr == "bt") {
            throw InputError("the document carries a machine; --repr bt does not apply");
        }
        built.machine = *doc.machine;
        return built;
    }
    if (repr == "fsm") {
        built.machine =
            polcomp::assemble_fault_tolerant_fsm(doc.library, doc.goal_conditions());
    } else if (repr == "fsm-seq") {
        built.machine =
            polcomp::assemble_sequential_fsm(doc.library, doc.goal_conditions());
    } else {
        built.tree = polcomp::backchain(doc.library, doc.goal_conditions());
    }
    return built;
}

int cmd_build(const std::string& doc_path, const std::string& repr,
              const std::string& out_dir, const std::string& format) {
    polcomp::Document doc = polcomp::load_document(doc_path);
    BuiltPolicy built = resolve_policy(doc, repr);
    polcomp::DirectedGraph graph = built.graph();

    if (format == "record") {
        nlohmann::ordered_json j;
        j["repr"] = repr.empty() ? (built.tree ? "bt" : "fsm") : repr;
        j["nodes"] = graph.node_count();
        j["edges"] = graph.edge_count();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << graph.node_count() << " nodes, " << graph.edge_count()
                  << " edges\n";
    }

    if (!out_dir.empty()) {
        std::string name = repr.empty() ? (built.tree ? "bt" : "fsm") : repr;
        polcomp::Document out_doc = doc;
        out_doc.tree = built.tree;
        out_doc.machine = built.machine;
        std::filesystem::path dir(out_dir);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        polcomp::save_document(out_doc, (dir / (name + ".pol")).string());
        write_file(dir / (name + ".dot"), polcomp::to_dot(graph, name));
    }
    return kExitOk;
}

int cmd_run(const std::string& doc_path, const std::string& repr,
            const std::string& scenario_name, int budget,
            const std::string& out_dir, const std::string& format) {
    polcomp::Document doc = polcomp::load_document(doc_path);
    const polcomp::ScenarioSpec* scenario = doc.find_scenario(scenario_name);
    if (scenario == nullptr) {
        throw InputError(doc_path + " has no scenario named " + scenario_name);
    }
    polcomp::ScenarioSpec spec = *scenario;
    if (budget > 0) spec.budget = budget;

    BuiltPolicy built = resolve_policy(doc, repr);
    polcomp::RunResult result =
        built.tree ? polcomp::run_tree(*built.tree, doc.library, spec)
                   : polcomp::run_machine(*built.machine, doc.library, spec);

    std::string repr_name = repr.empty() ? (built.tree ? "bt" : "fsm") : repr;
    std::string text = format == "record"
                           ? polcomp::run_to_json(result, repr_name, scenario_name)
                           : polcomp::run_to_text(result, repr_name, scenario_name);
    std::cout << text;
    if (!out_dir.empty()) {
        std::string ext = format == "record" ? ".json" : ".txt";
        write_file(std::filesystem::path(out_dir) /
                       (repr_name + "-" + scenario_name + ext),
                   text);
    }
    return result.outcome == polcomp::RunOutcome::Success ? kExitOk : kExitNegative;
}

int cmd_edit(const std::string& doc_path, const std::string& recipe,
             const std::string& target, const std::string& out_dir,
             const std::string& format) {
    polcomp::Document doc = polcomp::load_document(doc_path);
    if (!doc.tree && !doc.machine) {
        throw InputError(doc_path + " carries no policy block to edit");
    }
    polcomp::RecipeResult result = polcomp::apply_recipe(doc, recipe, target);

    if (format == "record") {
        nlohmann::ordered_json j;
        j["recipe"] = recipe;
        j["nodes_created"] = result.receipt.nodes_created;
        j["nodes_removed"] = result.receipt.nodes_removed;
        j["links_added"] = result.receipt.links_added;
        j["links_removed"] = result.receipt.links_removed;
        j["total"] = result.receipt.total();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << result.summary << "\n";
    }

    if (!out_dir.empty()) {
        std::filesystem::path dir(out_dir);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        polcomp::save_document(doc, (dir / "edited.pol").string());
        polcomp::DirectedGraph graph =
            doc.tree ? doc.tree->to_graph() : doc.machine->to_graph();
        write_file(dir / "edited.dot", polcomp::to_dot(graph, "edited"));
    }
    return kExitOk;
}

polcomp::DirectedGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return polcomp::parse_dot(buffer.str());
    } catch (const polcomp::GraphError& e) {
        throw InputError(path + ": " + e.what());
    }
}

int cmd_metrics(const std::string& graph_path, const std::string& other_path,
                int budget, const std::string& format) {
    polcomp::DirectedGraph graph = load_graph(graph_path);
    int cyclomatic = polcomp::metrics::cyclomatic_complexity(graph);

    std::optional<polcomp::metrics::GedResult> ged;
    if (!other_path.empty()) {
        polcomp::DirectedGraph other = load_graph(other_path);
        polcomp::metrics::GedOptions options;
        if (budget > 0) options.expansion_budget = static_cast<std::size_t>(budget);
        ged = polcomp::metrics::ged(graph, other, options);
    }

    if (format == "record") {
        nlohmann::ordered_json j;
        j["nodes"] = graph.node_count();
        j["edges"] = graph.edge_count();
        j["sinks"] = graph.sink_count();
        j["cyclomatic"] = cyclomatic;
        if (ged) {
            j["distance"] = static_cast<int>(ged->distance);
            j["exact"] = ged->exact;
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << graph.node_count() << " nodes, " << graph.edge_count()
                  << " edges, " << graph.sink_count() << " sinks, cyclomatic "
                  << cyclomatic << "\n";
        if (ged) {
            std::cout << "distance " << static_cast<int>(ged->distance) << " ("
                      << (ged->exact ? "exact" : "upper bound") << ")\n";
        }
    }
    return kExitOk;
}

int cmd_reproduce(const std::string& experiment, const std::string& out_dir,
                  const std::string& format) {
    std::optional<polcomp::ExperimentId> which = polcomp::experiment_from(experiment);
    if (!which) {
        throw InputError("unknown experiment " + experiment +
                         " (known: exp1, exp2, exp3, scale, all)");
    }
    std::filesystem::path dir(fixtures_dir());
    polcomp::Document fetch = polcomp::load_document((dir / "fetch_task.pol").string());
    polcomp::Document scale =
        polcomp::load_document((dir / "fetch_5cubes.pol").string());

    polcomp::StudyReport report = polcomp::compile_study(fetch, scale);
    polcomp::CheckResult check = polcomp::check_study(report, *which);

    std::string text =
        format == "record" ? polcomp::to_json(report) : polcomp::to_text(report);
    std::cout << text;
    if (!out_dir.empty()) {
        std::string ext = format == "record" ? ".json" : ".txt";
        write_file(std::filesystem::path(out_dir) / ("report" + ext), text);
    }

    if (!check.ok) {
        for (const std::string& m : check.mismatches) {
            std::cerr << "mismatch: " << m << "\n";
        }
        return kExitNegative;
    }
    std::cerr << polcomp::to_string(*which) << ": all reference values reproduced\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Task policy workbench: behavior trees and state machines "
                 "built from one skill library"};
    app.require_subcommand(1);

    std::string doc_path;
    std::string repr;
    std::string scenario;
    std::string out_dir;
    std::string format = "text";
    std::string recipe;
    std::string target;
    std::string graph_a;
    std::string graph_b;
    std::string experiment = "all";
    int budget = 0;

    auto add_common = [&](CLI::App* cmd, bool with_doc) {
        if (with_doc) {
            cmd->add_option("--doc", doc_path, "Task document (.pol)")->required();
        }
        cmd->add_option("--out", out_dir, "Directory for output files");
        cmd->add_option("--format", format, "Output style")
            ->check(CLI::IsMember({"text", "record"}));
    };

    CLI::App* build = app.add_subcommand("build", "Synthesize a policy from the goals");
    add_common(build, true);
    build->add_option("--repr", repr, "Policy representation")
        ->check(CLI::IsMember({"bt", "fsm", "fsm-seq"}));

    CLI::App* run = app.add_subcommand("run", "Execute a policy against a scenario");
    add_common(run, true);
    run->add_option("--repr", repr, "Policy representation")
        ->check(CLI::IsMember({"bt", "fsm", "fsm-seq"}));
    run->add_option("--scenario", scenario, "Scenario name")->required();
    run->add_option("--budget", budget, "Step budget override")
        ->check(CLI::PositiveNumber);

    CLI::App* edit = app.add_subcommand("edit", "Apply a named edit to a policy");
    add_common(edit, true);
    edit->add_option("recipe", recipe, "add-recharge, add-dock, or remove")
        ->required();
    edit->add_option("target", target, "Skill the recipe acts on");

    CLI::App* metrics =
        app.add_subcommand("metrics", "Measure a graph export, or compare two");
    metrics->add_option("graph", graph_a, "Graph file (.dot)")->required();
    metrics->add_option("other", graph_b, "Second graph for the distance");
    metrics->add_option("--budget", budget, "Search expansion budget")
        ->check(CLI::PositiveNumber);
    metrics->add_option("--format", format, "Output style")
        ->check(CLI::IsMember({"text", "record"}));

    CLI::App* reproduce =
        app.add_subcommand("reproduce", "Rebuild the study and check every "
                                        "reference value");
    reproduce->add_option("experiment", experiment,
                          "exp1, exp2, exp3, scale, or all");
    reproduce->add_option("--out", out_dir, "Directory for the report");
    reproduce->add_option("--format", format, "Output style")
        ->check(CLI::IsMember({"text", "record"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) return cmd_build(doc_path, repr, out_dir, format);
        if (run->parsed()) {
            return cmd_run(doc_path, repr, scenario, budget, out_dir, format);
        }
        if (edit->parsed()) return cmd_edit(doc_path, recipe, target, out_dir, format);
        if (metrics->parsed()) return cmd_metrics(graph_a, graph_b, budget, format);
        if (reproduce->parsed()) return cmd_reproduce(experiment, out_dir, format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitBadInput;
}
