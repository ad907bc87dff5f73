#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "polcomp/graph.hpp"

namespace polcomp::metrics {

struct MetricsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TooLargeError : MetricsError {
    using MetricsError::MetricsError;
};
struct EmptyGraphError : MetricsError {
    using MetricsError::MetricsError;
};

/// Costs for the six edit operations plus the matching mode. The default is
/// unit costs with label-blind matching: any node can stand in for any other
/// at zero cost, and edges are compared by existence only.
struct EditCostModel {
    double node_insert = 1.0;
    double node_delete = 1.0;
    double node_substitute = 1.0;
    double edge_insert = 1.0;
    double edge_delete = 1.0;
    double edge_substitute = 1.0;
    bool label_sensitive = false;
};

struct EditOp {
    enum class Kind {
        NodeMatch,   // g1 node kept as g2 node (cost 0, or substitute cost)
        NodeDelete,
        NodeInsert,
        EdgeMatch,   // emitted only when label-sensitive substitution costs
        EdgeDelete,
        EdgeInsert,
    };
    Kind kind;
    // Node ops use from1/from2 as the g1 and g2 ids. Edge ops use the pairs.
    std::string from1, to1;  // edge in g1 (delete) or g1 node id
    std::string from2, to2;  // edge in g2 (insert) or g2 node id
    double cost = 0.0;
};

struct GedResult {
    double distance = 0.0;
    std::vector<EditOp> edit_path;
    bool exact = false;
    std::size_t expanded = 0;  // search states popped
};

struct GedOptions {
    EditCostModel costs;
    std::size_t expansion_budget = 2'000'000;
};

/// |  |V1| - |V2|  |  +  |  |E1| - |E2|  | ; admissible under unit costs.
double structural_lower_bound(const DirectedGraph& g1, const DirectedGraph& g2);

/// Exact minimal-cost edit path between two graphs.
///
/// Best-first search over partial node assignments with an admissible
/// remaining-cost bound. When both graphs share node ids and mapping equal
/// ids already meets the structural lower bound, that embedding is returned
/// without searching. If the expansion budget runs out the best path found
/// so far is returned with exact=false (an upper bound).
GedResult ged(const DirectedGraph& g1, const DirectedGraph& g2,
              const GedOptions& options = {});

/// Exhaustive minimum over every injective partial node mapping. Only
/// feasible for graphs of up to 6 nodes; throws TooLargeError beyond that.
double ged_bruteforce(const DirectedGraph& g1, const DirectedGraph& g2,
                      const EditCostModel& costs = {});

/// Replays an edit path against g1. Matched and inserted nodes take their
/// g2 ids, so a valid path for ged(g1, g2) reproduces g2 exactly.
DirectedGraph apply_edit_path(const DirectedGraph& g1,
                              const std::vector<EditOp>& path);

/// True when the two graphs have identical node id sets and edge sets.
bool same_structure(const DirectedGraph& a, const DirectedGraph& b);

/// arcs + sinks - nodes + 1, sinks being nodes of out-degree zero
/// (self-loops count as outgoing). Throws EmptyGraphError on empty input.
int cyclomatic_complexity(const DirectedGraph& g);

}  // namespace polcomp::metrics
