#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace polcomp {

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Plain directed graph shared by both policy representations.
///
/// Nodes are opaque string ids with optional display labels. Edges form a
/// set: inserting the same (from, to) pair twice keeps the first entry, so
/// parallel transitions collapse into one edge. Iteration order is the
/// insertion order, which makes exports deterministic.
class DirectedGraph {
public:
    struct Edge {
        std::string from;
        std::string to;
        std::string label;
    };

    void add_node(const std::string& id, const std::string& label = "");
    /// Returns false (and changes nothing) when the edge already exists.
    /// Both endpoints must have been added first.
    bool add_edge(const std::string& from, const std::string& to,
                  const std::string& label = "");

    bool has_node(const std::string& id) const;
    bool has_edge(const std::string& from, const std::string& to) const;

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const std::vector<std::string>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }

    const std::string& node_label(const std::string& id) const;

    /// Out-degree including self-loops.
    std::size_t out_degree(const std::string& id) const;
    /// Number of sink nodes (out-degree zero; a self-loop disqualifies).
    std::size_t sink_count() const;

private:
    std::vector<std::string> nodes_;
    std::vector<Edge> edges_;
    std::unordered_map<std::string, std::string> labels_;
    std::unordered_set<std::string> edge_keys_;
    std::unordered_map<std::string, std::size_t> out_degree_;
};

/// Renders the graph as DOT text: one node declaration and one edge line per
/// element, in insertion order. Edge labels success/running/failure carry the
/// usual green/orange/red colors.
std::string to_dot(const DirectedGraph& graph, const std::string& name = "policy");

/// Reads back the subset of DOT that to_dot emits (quoted ids, optional
/// [label=...] attributes). Throws GraphError on malformed input.
DirectedGraph parse_dot(const std::string& text);

}  // namespace polcomp
