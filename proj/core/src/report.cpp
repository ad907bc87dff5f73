#include "polcomp/report.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "polcomp/metrics.hpp"

namespace polcomp {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim_number(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", value);
    return buf;
}

ordered_json metrics_json(const PolicyMetrics& m) {
    return ordered_json{{"nodes", m.nodes}, {"edges", m.edges}, {"cyclomatic", m.cyclomatic}};
}

ordered_json receipt_json(const EditReceipt& r) {
    return ordered_json{{"nodes_created", r.nodes_created},
                        {"nodes_removed", r.nodes_removed},
                        {"links_added", r.links_added},
                        {"links_removed", r.links_removed},
                        {"total", r.total()}};
}

ordered_json stage_json(const StageRecord& s) {
    ordered_json j;
    j["name"] = s.name;
    j["tree"] = metrics_json(s.tree);
    j["machine"] = metrics_json(s.machine);
    if (s.tree_receipt) j["tree_edit"] = receipt_json(*s.tree_receipt);
    if (s.machine_receipt) j["machine_edit"] = receipt_json(*s.machine_receipt);
    if (s.tree_distance) j["tree_distance"] = *s.tree_distance;
    if (s.machine_distance) j["machine_distance"] = *s.machine_distance;
    return j;
}

ordered_json run_json(const RunRecord& r) {
    ordered_json j;
    j["stage"] = r.stage;
    j["repr"] = r.repr;
    j["scenario"] = r.scenario;
    j["outcome"] = to_string(r.outcome);
    j["steps"] = r.steps;
    j["digest"] = r.digest;
    j["final_battery"] = trim_number(r.final_battery);
    return j;
}

void stage_lines(std::ostringstream& out, const StageRecord& s) {
    auto row = [&](const char* repr, const PolicyMetrics& m,
                   const std::optional<EditReceipt>& receipt,
                   const std::optional<int>& distance) {
        char ops[16] = "-";
        char dist[16] = "-";
        if (receipt) std::snprintf(ops, sizeof(ops), "%d", receipt->total());
        if (distance) std::snprintf(dist, sizeof(dist), "%d", *distance);
        char line[160];
        std::snprintf(line, sizeof(line), "  %-14s %-4s %6d %6d %6d %5s %5s\n",
                      s.name.c_str(), repr, m.nodes, m.edges, m.cyclomatic, ops, dist);
        out << line;
    };
    row("bt", s.tree, s.tree_receipt, s.tree_distance);
    row("fsm", s.machine, s.machine_receipt, s.machine_distance);
}

}  // namespace

PolicyMetrics measure_graph(const DirectedGraph& graph) {
    PolicyMetrics m;
    m.nodes = static_cast<int>(graph.node_count());
    m.edges = static_cast<int>(graph.edge_count());
    m.cyclomatic = metrics::cyclomatic_complexity(graph);
    return m;
}

std::string to_json(const StudyReport& report) {
    ordered_json j;
    j["schema_version"] = 1;
    j["stages"] = ordered_json::array();
    for (const StageRecord& s : report.stages) j["stages"].push_back(stage_json(s));
    j["scale"] = ordered_json::array();
    for (const StageRecord& s : report.scale) j["scale"].push_back(stage_json(s));
    j["runs"] = ordered_json::array();
    for (const RunRecord& r : report.runs) j["runs"].push_back(run_json(r));
    return j.dump(2) + "\n";
}

std::string to_text(const StudyReport& report) {
    std::ostringstream out;
    out << "  stage          repr  nodes  edges  cyclo   ops  dist\n";
    for (const StageRecord& s : report.stages) stage_lines(out, s);
    if (!report.scale.empty()) {
        out << "scaled task\n";
        for (const StageRecord& s : report.scale) stage_lines(out, s);
    }
    if (!report.runs.empty()) {
        out << "runs\n";
        for (const RunRecord& r : report.runs) {
            out << "  " << r.stage << "/" << r.repr << "/" << r.scenario << ": "
                << to_string(r.outcome) << " in " << r.steps << " steps, battery "
                << trim_number(r.final_battery) << ", digest " << r.digest << "\n";
        }
    }
    return out.str();
}

std::string run_to_json(const RunResult& result, std::string_view repr,
                        std::string_view scenario) {
    ordered_json j;
    j["repr"] = std::string(repr);
    j["scenario"] = std::string(scenario);
    j["outcome"] = to_string(result.outcome);
    j["steps"] = result.steps;
    j["digest"] = result.digest;
    j["final_battery"] = trim_number(result.final_battery);
    ordered_json commands = ordered_json::array();
    for (const CommandRecord& c : result.commands) {
        commands.push_back(ordered_json{{"step", c.step},
                                        {"kind", c.kind},
                                        {"skill", c.skill},
                                        {"battery", trim_number(c.battery)}});
    }
    j["commands"] = commands;
    return j.dump(2) + "\n";
}

std::string run_to_text(const RunResult& result, std::string_view repr,
                        std::string_view scenario) {
    std::ostringstream out;
    out << scenario << " (" << repr << "): " << to_string(result.outcome) << " in "
        << result.steps << " steps, battery " << trim_number(result.final_battery)
        << ", digest " << result.digest << "\n";
    return out.str();
}

}  // namespace polcomp
