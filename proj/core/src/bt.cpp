#include "polcomp/bt.hpp"

#include <algorithm>

namespace polcomp {

std::string_view to_string(NodeType type) {
    switch (type) {
        case NodeType::Sequence: return "sequence";
        case NodeType::Fallback: return "fallback";
        case NodeType::Condition: return "condition";
        case NodeType::Action: return "action";
    }
    return "?";
}

NodeId PolicyTree::create(TreeNode node) {
    NodeId id = next_id_++;
    node.id = id;
    node.parent = -1;
    nodes_.emplace(id, std::move(node));
    ++totals_.nodes_created;
    return id;
}

NodeId PolicyTree::add_sequence() {
    TreeNode n;
    n.type = NodeType::Sequence;
    return create(std::move(n));
}

NodeId PolicyTree::add_fallback() {
    TreeNode n;
    n.type = NodeType::Fallback;
    return create(std::move(n));
}

NodeId PolicyTree::add_condition(Condition condition) {
    TreeNode n;
    n.type = NodeType::Condition;
    n.condition = std::move(condition);
    return create(std::move(n));
}

NodeId PolicyTree::add_action(Skill skill) {
    TreeNode n;
    n.type = NodeType::Action;
    n.skill = std::move(skill);
    return create(std::move(n));
}

const TreeNode& PolicyTree::node(NodeId id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) {
        throw UnknownHandleError("no node with handle " + std::to_string(id));
    }
    return it->second;
}

TreeNode& PolicyTree::mutable_node(NodeId id) {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) {
        throw UnknownHandleError("no node with handle " + std::to_string(id));
    }
    return it->second;
}

void PolicyTree::check_cycle(NodeId parent, NodeId child) const {
    for (NodeId walk = parent; walk != -1; walk = node(walk).parent) {
        if (walk == child) {
            throw MalformedTreeError("attaching " + std::to_string(child) + " under " +
                                     std::to_string(parent) + " would close a cycle");
        }
    }
}

void PolicyTree::attach_at(NodeId parent, NodeId child, std::size_t index) {
    TreeNode& p = mutable_node(parent);
    TreeNode& c = mutable_node(child);
    if (p.type != NodeType::Sequence && p.type != NodeType::Fallback) {
        throw NotAControlNodeError("node " + std::to_string(parent) +
                                   " cannot take children");
    }
    if (c.parent != -1) {
        throw MalformedTreeError("node " + std::to_string(child) +
                                 " already has a parent");
    }
    if (index > p.children.size()) {
        throw IndexOutOfRangeError("index " + std::to_string(index) + " exceeds " +
                                   std::to_string(p.children.size()) + " children");
    }
    check_cycle(parent, child);
    p.children.insert(p.children.begin() + static_cast<std::ptrdiff_t>(index), child);
    c.parent = parent;
    ++totals_.links_added;
}

void PolicyTree::attach(NodeId parent, NodeId child) {
    attach_at(parent, child, node(parent).children.size());
}

void PolicyTree::detach(NodeId child) {
    TreeNode& c = mutable_node(child);
    if (c.parent == -1) {
        throw MalformedTreeError("node " + std::to_string(child) + " has no parent");
    }
    TreeNode& p = mutable_node(c.parent);
    auto it = std::find(p.children.begin(), p.children.end(), child);
    p.children.erase(it);
    c.parent = -1;
    ++totals_.links_removed;
}

void PolicyTree::remove_subtree(NodeId id) {
    if (id == root_) {
        throw RootRemovalError("refusing to remove the root subtree");
    }
    const TreeNode& n = node(id);
    if (n.parent != -1) detach(id);
    // Children first, then the node itself.
    std::vector<NodeId> stack{id};
    std::vector<NodeId> order;
    while (!stack.empty()) {
        NodeId cur = stack.back();
        stack.pop_back();
        order.push_back(cur);
        const TreeNode& c = node(cur);
        stack.insert(stack.end(), c.children.begin(), c.children.end());
    }
    for (NodeId cur : order) {
        totals_.links_removed += static_cast<int>(node(cur).children.size());
        ++totals_.nodes_removed;
        nodes_.erase(cur);
    }
}

void PolicyTree::set_root(NodeId id) {
    const TreeNode& n = node(id);
    if (n.parent != -1) {
        throw MalformedTreeError("root must not have a parent");
    }
    root_ = id;
}

NodeId PolicyTree::wrap_root(NodeType type) {
    if (type != NodeType::Sequence && type != NodeType::Fallback) {
        throw NotAControlNodeError("only control nodes can wrap the root");
    }
    if (root_ == -1) {
        throw MalformedTreeError("no root to wrap");
    }
    NodeId wrapper = type == NodeType::Sequence ? add_sequence() : add_fallback();
    NodeId old_root = root_;
    root_ = -1;  // release so the old root may take a parent
    attach(wrapper, old_root);
    set_root(wrapper);
    return wrapper;
}

std::vector<NodeId> PolicyTree::preorder() const {
    if (root_ == -1) {
        throw MalformedTreeError("tree has no root");
    }
    std::vector<NodeId> out;
    std::vector<NodeId> stack{root_};
    while (!stack.empty()) {
        NodeId id = stack.back();
        stack.pop_back();
        out.push_back(id);
        const TreeNode& n = node(id);
        for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) {
            stack.push_back(*it);
        }
    }
    return out;
}

NodeId PolicyTree::find_action(const Skill& skill) const {
    for (NodeId id : preorder()) {
        const TreeNode& n = node(id);
        if (n.type == NodeType::Action && n.skill == skill) return id;
    }
    return -1;
}

NodeId PolicyTree::find_condition(const Condition& condition) const {
    for (NodeId id : preorder()) {
        const TreeNode& n = node(id);
        if (n.type == NodeType::Condition && n.condition == condition) return id;
    }
    return -1;
}

void PolicyTree::validate() const {
    for (NodeId id : preorder()) {
        const TreeNode& n = node(id);
        bool control = n.type == NodeType::Sequence || n.type == NodeType::Fallback;
        if (control && n.children.empty()) {
            throw MalformedTreeError("control node " + std::to_string(id) +
                                     " has no children");
        }
        if (!control && !n.children.empty()) {
            throw MalformedTreeError("leaf node " + std::to_string(id) +
                                     " has children");
        }
    }
}

DirectedGraph PolicyTree::to_graph() const {
    DirectedGraph g;
    for (NodeId id : preorder()) {
        const TreeNode& n = node(id);
        std::string label;
        switch (n.type) {
            case NodeType::Sequence: label = "sequence"; break;
            case NodeType::Fallback: label = "fallback"; break;
            case NodeType::Condition: label = n.condition.text() + "?"; break;
            case NodeType::Action: label = n.skill.text() + "!"; break;
        }
        g.add_node("n" + std::to_string(id), label);
    }
    for (NodeId id : preorder()) {
        for (NodeId child : node(id).children) {
            g.add_edge("n" + std::to_string(id), "n" + std::to_string(child));
        }
    }
    return g;
}

Status BtExecution::tick(WorldView& world, TickTrace* trace) {
    if (trace) trace->visits.clear();
    std::set<NodeId> reached;
    Status status = tick_node(tree_->root(), world, trace, reached);
    if (trace) trace->root_status = status;

    // Preemption: anything left Running that this tick routed around gets its
    // command withdrawn.
    for (auto it = running_.begin(); it != running_.end();) {
        if (reached.count(*it) == 0) {
            if (tree_->has_node(*it)) world.cancel(tree_->node(*it).skill);
            it = running_.erase(it);
        } else {
            ++it;
        }
    }
    return status;
}

Status BtExecution::tick_node(NodeId id, WorldView& world, TickTrace* trace,
                              std::set<NodeId>& reached) {
    const TreeNode& n = tree_->node(id);
    Status status = Status::Running;
    switch (n.type) {
        case NodeType::Condition:
            status = world.check(n.condition) ? Status::Success : Status::Failure;
            break;
        case NodeType::Action:
            reached.insert(id);
            world.send(n.skill);
            status = world.monitor(n.skill);
            if (status == Status::Running) {
                running_.insert(id);
            } else {
                running_.erase(id);
            }
            break;
        case NodeType::Sequence: {
            if (n.children.empty()) {
                throw MalformedTreeError("ticked an empty sequence");
            }
            status = Status::Success;
            for (NodeId child : n.children) {
                Status s = tick_node(child, world, trace, reached);
                if (s != Status::Success) {
                    status = s;
                    break;
                }
            }
            break;
        }
        case NodeType::Fallback: {
            if (n.children.empty()) {
                throw MalformedTreeError("ticked an empty fallback");
            }
            status = Status::Failure;
            for (NodeId child : n.children) {
                Status s = tick_node(child, world, trace, reached);
                if (s != Status::Failure) {
                    status = s;
                    break;
                }
            }
            break;
        }
    }
    if (trace) trace->visits.emplace_back(id, status);
    return status;
}

void BtExecution::halt(WorldView& world) {
    for (NodeId id : running_) {
        if (tree_->has_node(id)) world.cancel(tree_->node(id).skill);
    }
    running_.clear();
}

}  // namespace polcomp
