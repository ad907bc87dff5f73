#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polcomp/graph.hpp"
#include "polcomp/receipt.hpp"
#include "polcomp/runner.hpp"

namespace polcomp {

struct PolicyMetrics {
    int nodes = 0;
    int edges = 0;
    int cyclomatic = 0;

    bool operator==(const PolicyMetrics&) const = default;
};

PolicyMetrics measure_graph(const DirectedGraph& graph);

// One growth step of the study: the same capability added to both
// representations, with what it cost and how far the structure moved.
struct StageRecord {
    std::string name;
    PolicyMetrics tree;
    PolicyMetrics machine;
    std::optional<EditReceipt> tree_receipt;
    std::optional<EditReceipt> machine_receipt;
    std::optional<int> tree_distance;    // from the previous stage
    std::optional<int> machine_distance;
};

struct RunRecord {
    std::string stage;
    std::string repr;
    std::string scenario;
    RunOutcome outcome = RunOutcome::Timeout;
    int steps = 0;
    std::string digest;
    double final_battery = 0.0;
};

struct StudyReport {
    std::vector<StageRecord> stages;
    std::vector<StageRecord> scale;
    std::vector<RunRecord> runs;
};

// Stable byte-for-byte for a given report; no clocks, no environment.
std::string to_json(const StudyReport& report);
std::string to_text(const StudyReport& report);

std::string run_to_json(const RunResult& result, std::string_view repr,
                        std::string_view scenario);
std::string run_to_text(const RunResult& result, std::string_view repr,
                        std::string_view scenario);

}  // namespace polcomp
