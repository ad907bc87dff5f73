#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "polcomp/graph.hpp"
#include "polcomp/receipt.hpp"
#include "polcomp/skills.hpp"
#include "polcomp/world.hpp"

namespace polcomp {

class TreeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class UnknownHandleError : public TreeError {
  public:
    using TreeError::TreeError;
};

class NotAControlNodeError : public TreeError {
  public:
    using TreeError::TreeError;
};

class IndexOutOfRangeError : public TreeError {
  public:
    using TreeError::TreeError;
};

class MalformedTreeError : public TreeError {
  public:
    using TreeError::TreeError;
};

class RootRemovalError : public TreeError {
  public:
    using TreeError::TreeError;
};

enum class NodeType { Sequence, Fallback, Condition, Action };

std::string_view to_string(NodeType type);

using NodeId = int;

struct TreeNode {
    NodeId id = 0;
    NodeType type = NodeType::Sequence;
    Condition condition;  // Condition leaves only
    Skill skill;          // Action leaves only
    std::vector<NodeId> children;
    NodeId parent = -1;
};

// Ticked policy: controls are sequences (stop at the first child that is not
// Success) and fallbacks (stop at the first child that is not Failure); leaves
// poll a condition or drive a skill. Node handles are handed out by a
// monotonic counter and never reused, so a handle stays valid for the life of
// the node across arbitrary edits around it.
class PolicyTree {
  public:
    NodeId add_sequence();
    NodeId add_fallback();
    NodeId add_condition(Condition condition);
    NodeId add_action(Skill skill);

    // Appends `child` under `parent`; attach_at picks the position among the
    // existing children. The child must currently have no parent.
    void attach(NodeId parent, NodeId child);
    void attach_at(NodeId parent, NodeId child, std::size_t index);

    // Unlinks `child` from its parent, leaving it as a detached subtree.
    void detach(NodeId child);

    // Detaches and destroys a whole subtree. The root must be removed through
    // set_root or not at all.
    void remove_subtree(NodeId id);

    void set_root(NodeId id);

    // Interposes a fresh control node between the root and the rest of the
    // tree; returns the new root's handle.
    NodeId wrap_root(NodeType type);

    NodeId root() const { return root_; }
    bool has_node(NodeId id) const { return nodes_.count(id) > 0; }
    const TreeNode& node(NodeId id) const;
    std::size_t size() const { return nodes_.size(); }

    // Handles in the reachable tree, preorder. Throws if no root is set.
    std::vector<NodeId> preorder() const;

    // First action/condition node carrying exactly this instance, or -1.
    NodeId find_action(const Skill& skill) const;
    NodeId find_condition(const Condition& condition) const;

    // Structural soundness of the reachable tree: a root exists, every
    // control node has at least one child, leaves have none. Throws
    // MalformedTreeError otherwise.
    void validate() const;

    // Running tally of elementary operations applied so far; diff two
    // snapshots to cost an edit.
    EditReceipt totals() const { return totals_; }

    DirectedGraph to_graph() const;

  private:
    NodeId create(TreeNode node);
    TreeNode& mutable_node(NodeId id);
    void check_cycle(NodeId parent, NodeId child) const;

    std::unordered_map<NodeId, TreeNode> nodes_;
    NodeId next_id_ = 1;
    NodeId root_ = -1;
    EditReceipt totals_;
};

// One tick's worth of visits; children appear before the parent whose status
// they decided.
struct TickTrace {
    std::vector<std::pair<NodeId, Status>> visits;
    Status root_status = Status::Running;
};

// Tick-to-tick state of one tree: which actions were left Running, so that a
// later tick that routes around them cancels their commands.
class BtExecution {
  public:
    explicit BtExecution(const PolicyTree& tree) : tree_(&tree) {}

    Status tick(WorldView& world, TickTrace* trace = nullptr);

    // Abandons every action still Running.
    void halt(WorldView& world);

  private:
    Status tick_node(NodeId id, WorldView& world, TickTrace* trace,
                     std::set<NodeId>& reached);

    const PolicyTree* tree_;
    std::set<NodeId> running_;
};

}  // namespace polcomp
