#include "polcomp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <unordered_map>
#include <unordered_set>

namespace polcomp::metrics {

double structural_lower_bound(const DirectedGraph& g1, const DirectedGraph& g2) {
    double dn = std::abs(static_cast<double>(g1.node_count()) -
                         static_cast<double>(g2.node_count()));
    double de = std::abs(static_cast<double>(g1.edge_count()) -
                         static_cast<double>(g2.edge_count()));
    return dn + de;
}

namespace {

// Index-based view used by both the search and the brute-force oracle.
struct IndexedGraph {
    std::vector<std::string> ids;
    std::vector<std::string> node_labels;
    std::unordered_map<std::string, int> index;
    std::vector<std::pair<int, int>> edge_list;
    std::unordered_set<std::int64_t> edge_set;
    std::unordered_map<std::int64_t, std::string> edge_labels;
    int n = 0;

    static std::int64_t key(int i, int j) {
        return static_cast<std::int64_t>(i) * 1'000'000 + j;
    }
    bool has(int i, int j) const { return edge_set.count(key(i, j)) > 0; }
    const std::string& edge_label(int i, int j) const {
        return edge_labels.at(key(i, j));
    }
};

IndexedGraph index_graph(const DirectedGraph& g) {
    IndexedGraph ig;
    ig.n = static_cast<int>(g.node_count());
    ig.ids = g.nodes();
    ig.node_labels.reserve(ig.ids.size());
    for (int i = 0; i < ig.n; ++i) {
        ig.index.emplace(ig.ids[i], i);
        ig.node_labels.push_back(g.node_label(ig.ids[i]));
    }
    for (const auto& e : g.edges()) {
        int i = ig.index.at(e.from);
        int j = ig.index.at(e.to);
        ig.edge_list.emplace_back(i, j);
        ig.edge_set.insert(IndexedGraph::key(i, j));
        ig.edge_labels.emplace(IndexedGraph::key(i, j), e.label);
    }
    return ig;
}

double node_pair_cost(const IndexedGraph& a, const IndexedGraph& b, int i, int v,
                      const EditCostModel& c) {
    if (!c.label_sensitive) return 0.0;
    return a.node_labels[i] == b.node_labels[v] ? 0.0 : c.node_substitute;
}

double edge_pair_cost(const IndexedGraph& a, const IndexedGraph& b, int i, int j,
                      int vi, int vj, const EditCostModel& c) {
    if (!c.label_sensitive) return 0.0;
    return a.edge_label(i, j) == b.edge_label(vi, vj) ? 0.0 : c.edge_substitute;
}

/// Full cost and op list of a complete mapping (g2 index or -1 per g1 node).
std::pair<double, std::vector<EditOp>> realize_mapping(
    const IndexedGraph& a, const IndexedGraph& b, const std::vector<int>& map,
    const EditCostModel& c) {
    double total = 0.0;
    std::vector<EditOp> ops;
    std::vector<int> inverse(b.n, -1);
    for (int i = 0; i < a.n; ++i) {
        if (map[i] >= 0) inverse[map[i]] = i;
    }

    for (int i = 0; i < a.n; ++i) {
        if (map[i] >= 0) {
            double cost = node_pair_cost(a, b, i, map[i], c);
            ops.push_back({EditOp::Kind::NodeMatch, a.ids[i], "", b.ids[map[i]], "", cost});
            total += cost;
        } else {
            ops.push_back({EditOp::Kind::NodeDelete, a.ids[i], "", "", "", c.node_delete});
            total += c.node_delete;
        }
    }
    for (int v = 0; v < b.n; ++v) {
        if (inverse[v] < 0) {
            ops.push_back({EditOp::Kind::NodeInsert, "", "", b.ids[v], "", c.node_insert});
            total += c.node_insert;
        }
    }
    for (const auto& [i, j] : a.edge_list) {
        int vi = map[i], vj = map[j];
        if (vi >= 0 && vj >= 0 && b.has(vi, vj)) {
            double cost = edge_pair_cost(a, b, i, j, vi, vj, c);
            if (cost > 0.0) {
                ops.push_back({EditOp::Kind::EdgeMatch, a.ids[i], a.ids[j],
                               b.ids[vi], b.ids[vj], cost});
                total += cost;
            }
        } else {
            ops.push_back({EditOp::Kind::EdgeDelete, a.ids[i], a.ids[j], "", "",
                           c.edge_delete});
            total += c.edge_delete;
        }
    }
    for (const auto& [p, q] : b.edge_list) {
        bool covered = inverse[p] >= 0 && inverse[q] >= 0 &&
                       a.has(inverse[p], inverse[q]);
        if (!covered) {
            ops.push_back({EditOp::Kind::EdgeInsert, "", "", b.ids[p], b.ids[q],
                           c.edge_insert});
            total += c.edge_insert;
        }
    }
    return {total, std::move(ops)};
}

std::vector<int> natural_mapping(const IndexedGraph& a, const IndexedGraph& b) {
    std::vector<int> map(a.n, -1);
    for (int i = 0; i < a.n; ++i) {
        auto it = b.index.find(a.ids[i]);
        if (it != b.index.end()) map[i] = it->second;
    }
    return map;
}

struct PoolNode {
    int parent = -1;
    int choice = -2;  // g2 index, or -1 for delete
    int depth = 0;
    int covered2 = 0;  // g2 edges with both endpoints mapped
    double g = 0.0;
};

struct QueueEntry {
    double f;
    std::uint64_t seq;  // deterministic tie-break
    int pool_index;
    bool operator>(const QueueEntry& other) const {
        if (f != other.f) return f > other.f;
        return seq > other.seq;
    }
};

}  // namespace

GedResult ged(const DirectedGraph& g1, const DirectedGraph& g2,
              const GedOptions& options) {
    const EditCostModel& c = options.costs;
    IndexedGraph a = index_graph(g1);
    IndexedGraph b = index_graph(g2);

    GedResult best;
    best.distance = std::numeric_limits<double>::infinity();

    // Shared-id embedding: often already optimal for policies that were
    // edited in place, in which case no search is needed.
    {
        auto [cost, ops] = realize_mapping(a, b, natural_mapping(a, b), c);
        best.distance = cost;
        best.edit_path = std::move(ops);
        if (!c.label_sensitive && cost == structural_lower_bound(g1, g2)) {
            best.exact = true;
            return best;
        }
    }

    // Number of g1 edges with both endpoints among the first k nodes.
    std::vector<int> e1_within(a.n + 1, 0);
    for (int k = 1; k <= a.n; ++k) {
        int count = 0;
        for (const auto& [i, j] : a.edge_list) {
            if (i < k && j < k) ++count;
        }
        e1_within[k] = count;
    }

    auto heuristic = [&](int depth, int mapped_count, int covered2) {
        int r1 = a.n - depth;
        int r2 = b.n - mapped_count;
        double h = r1 > r2 ? (r1 - r2) * c.node_delete : (r2 - r1) * c.node_insert;
        int e1r = static_cast<int>(a.edge_list.size()) - e1_within[depth];
        int e2r = static_cast<int>(b.edge_list.size()) - covered2;
        h += e1r > e2r ? (e1r - e2r) * c.edge_delete : (e2r - e1r) * c.edge_insert;
        return h;
    };

    std::vector<PoolNode> pool;
    pool.push_back({});
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>> open;
    std::uint64_t seq = 0;
    open.push({heuristic(0, 0, 0), seq++, 0});

    std::vector<int> assignment(a.n, -2);
    GedResult result;
    while (!open.empty()) {
        QueueEntry top = open.top();
        open.pop();
        ++result.expanded;
        if (result.expanded > options.expansion_budget) {
            result.distance = best.distance;
            result.edit_path = best.edit_path;
            result.exact = false;
            return result;
        }
        const PoolNode node = pool[top.pool_index];
        if (top.f >= best.distance && node.depth < a.n) continue;

        // Reconstruct the partial assignment along the parent chain.
        std::fill(assignment.begin(), assignment.end(), -2);
        {
            int walk = top.pool_index;
            while (walk > 0) {
                const PoolNode& p = pool[walk];
                assignment[p.depth - 1] = p.choice;
                walk = p.parent;
            }
        }

        if (node.depth == a.n) {
            // Admissible heuristic: the first completed state popped is optimal.
            auto [cost, ops] = realize_mapping(a, b, assignment, c);
            result.distance = cost;
            result.edit_path = std::move(ops);
            result.exact = true;
            return result;
        }

        int u = node.depth;
        int mapped_count = 0;
        std::vector<bool> used(b.n, false);
        for (int i = 0; i < u; ++i) {
            if (assignment[i] >= 0) {
                used[assignment[i]] = true;
                ++mapped_count;
            }
        }

        auto push_child = [&](int choice, double g_child, int covered_child) {
            double f = g_child + heuristic(u + 1,
                                           mapped_count + (choice >= 0 ? 1 : 0),
                                           covered_child);
            // Only completions strictly better than the best known path are
            // worth exploring; equal-cost ones cannot improve the distance.
            if (f >= best.distance) return;
            pool.push_back({top.pool_index, choice, u + 1, covered_child, g_child});
            open.push({f, seq++, static_cast<int>(pool.size()) - 1});
        };

        // Delete u: its edges towards already-processed nodes (and its
        // self-loop) all become deletions.
        {
            double g_child = node.g + c.node_delete;
            for (int j = 0; j < u; ++j) {
                if (a.has(u, j)) g_child += c.edge_delete;
                if (a.has(j, u)) g_child += c.edge_delete;
            }
            if (a.has(u, u)) g_child += c.edge_delete;
            push_child(-1, g_child, node.covered2);
        }

        // Map u to each unused g2 node.
        for (int v = 0; v < b.n; ++v) {
            if (used[v]) continue;
            double g_child = node.g + node_pair_cost(a, b, u, v, c);
            int covered_child = node.covered2;
            for (int j = 0; j < u; ++j) {
                int vj = assignment[j];
                bool e1 = a.has(u, j);
                bool e2 = vj >= 0 && b.has(v, vj);
                if (e1 && e2) {
                    g_child += edge_pair_cost(a, b, u, j, v, vj, c);
                    ++covered_child;
                } else if (e1) {
                    g_child += c.edge_delete;
                } else if (e2) {
                    g_child += c.edge_insert;
                    ++covered_child;
                }
                e1 = a.has(j, u);
                e2 = vj >= 0 && b.has(vj, v);
                if (e1 && e2) {
                    g_child += edge_pair_cost(a, b, j, u, vj, v, c);
                    ++covered_child;
                } else if (e1) {
                    g_child += c.edge_delete;
                } else if (e2) {
                    g_child += c.edge_insert;
                    ++covered_child;
                }
            }
            bool self1 = a.has(u, u);
            bool self2 = b.has(v, v);
            if (self1 && self2) {
                g_child += edge_pair_cost(a, b, u, u, v, v, c);
                ++covered_child;
            } else if (self1) {
                g_child += c.edge_delete;
            } else if (self2) {
                g_child += c.edge_insert;
                ++covered_child;
            }
            push_child(v, g_child, covered_child);
        }
    }

    // Queue exhausted without beating the natural embedding: it was optimal.
    best.exact = true;
    best.expanded = result.expanded;
    return best;
}

namespace {

/// From-scratch cost of one complete mapping; intentionally a separate,
/// simpler computation than the search's accounting.
double bruteforce_eval(const IndexedGraph& a, const IndexedGraph& b,
                       const std::vector<int>& map, const EditCostModel& c) {
    double cost = 0.0;
    std::vector<int> inverse(b.n, -1);
    int mapped = 0;
    for (int i = 0; i < a.n; ++i) {
        if (map[i] >= 0) {
            inverse[map[i]] = i;
            ++mapped;
            if (c.label_sensitive && a.node_labels[i] != b.node_labels[map[i]]) {
                cost += c.node_substitute;
            }
        } else {
            cost += c.node_delete;
        }
    }
    cost += (b.n - mapped) * c.node_insert;
    for (const auto& [i, j] : a.edge_list) {
        if (map[i] >= 0 && map[j] >= 0 && b.has(map[i], map[j])) {
            if (c.label_sensitive &&
                a.edge_label(i, j) != b.edge_label(map[i], map[j])) {
                cost += c.edge_substitute;
            }
        } else {
            cost += c.edge_delete;
        }
    }
    for (const auto& [p, q] : b.edge_list) {
        bool covered =
            inverse[p] >= 0 && inverse[q] >= 0 && a.has(inverse[p], inverse[q]);
        if (!covered) cost += c.edge_insert;
    }
    return cost;
}

void bruteforce_recurse(const IndexedGraph& a, const IndexedGraph& b,
                        const EditCostModel& c, std::vector<int>& map, int depth,
                        std::vector<bool>& used, double& best) {
    if (depth == a.n) {
        best = std::min(best, bruteforce_eval(a, b, map, c));
        return;
    }
    map[depth] = -1;
    bruteforce_recurse(a, b, c, map, depth + 1, used, best);
    for (int v = 0; v < b.n; ++v) {
        if (used[v]) continue;
        used[v] = true;
        map[depth] = v;
        bruteforce_recurse(a, b, c, map, depth + 1, used, best);
        map[depth] = -1;
        used[v] = false;
    }
}

}  // namespace

double ged_bruteforce(const DirectedGraph& g1, const DirectedGraph& g2,
                      const EditCostModel& costs) {
    if (g1.node_count() > 6 || g2.node_count() > 6) {
        throw TooLargeError("ged_bruteforce supports at most 6 nodes per graph");
    }
    IndexedGraph a = index_graph(g1);
    IndexedGraph b = index_graph(g2);
    std::vector<int> map(a.n, -1);
    std::vector<bool> used(b.n, false);
    double best = std::numeric_limits<double>::infinity();
    bruteforce_recurse(a, b, costs, map, 0, used, best);
    return best;
}

DirectedGraph apply_edit_path(const DirectedGraph& g1,
                              const std::vector<EditOp>& path) {
    std::unordered_map<std::string, std::string> rename;
    std::unordered_set<std::string> deleted_nodes;
    std::unordered_set<std::string> deleted_edges;
    for (const auto& op : path) {
        switch (op.kind) {
            case EditOp::Kind::NodeMatch:
                rename[op.from1] = op.from2;
                break;
            case EditOp::Kind::NodeDelete:
                deleted_nodes.insert(op.from1);
                break;
            case EditOp::Kind::EdgeDelete:
                deleted_edges.insert(op.from1 + "\x1f" + op.to1);
                break;
            default:
                break;
        }
    }

    DirectedGraph out;
    for (const auto& id : g1.nodes()) {
        if (deleted_nodes.count(id)) continue;
        auto it = rename.find(id);
        out.add_node(it != rename.end() ? it->second : id, g1.node_label(id));
    }
    for (const auto& op : path) {
        if (op.kind == EditOp::Kind::NodeInsert) out.add_node(op.from2);
    }
    for (const auto& e : g1.edges()) {
        if (deleted_edges.count(e.from + "\x1f" + e.to)) continue;
        if (deleted_nodes.count(e.from) || deleted_nodes.count(e.to)) continue;
        auto from = rename.count(e.from) ? rename.at(e.from) : e.from;
        auto to = rename.count(e.to) ? rename.at(e.to) : e.to;
        out.add_edge(from, to, e.label);
    }
    for (const auto& op : path) {
        if (op.kind == EditOp::Kind::EdgeInsert) {
            out.add_node(op.from2);
            out.add_node(op.to2);
            out.add_edge(op.from2, op.to2);
        }
    }
    return out;
}

bool same_structure(const DirectedGraph& a, const DirectedGraph& b) {
    if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) {
        return false;
    }
    auto an = a.nodes();
    auto bn = b.nodes();
    std::sort(an.begin(), an.end());
    std::sort(bn.begin(), bn.end());
    if (an != bn) return false;
    for (const auto& e : a.edges()) {
        if (!b.has_edge(e.from, e.to)) return false;
    }
    return true;
}

int cyclomatic_complexity(const DirectedGraph& g) {
    if (g.node_count() == 0) {
        throw EmptyGraphError("cyclomatic complexity of an empty graph");
    }
    int arcs = static_cast<int>(g.edge_count());
    int sinks = static_cast<int>(g.sink_count());
    int nodes = static_cast<int>(g.node_count());
    return arcs + sinks - nodes + 1;
}

}  // namespace polcomp::metrics
