#include "polcomp/edits.hpp"

#include <algorithm>

#include "polcomp/synthesis.hpp"

namespace polcomp {

namespace {

std::string receipt_text(const EditReceipt& r) {
    return std::to_string(r.total()) + " ops (+" + std::to_string(r.nodes_created) +
           "/-" + std::to_string(r.nodes_removed) + " nodes, +" +
           std::to_string(r.links_added) + "/-" + std::to_string(r.links_removed) +
           " links)";
}

// The skill that restores the battery: its postconditions mention a battery
// level.
const SkillDecl& battery_skill(const Library& library) {
    for (const SkillDecl& s : library.skills()) {
        for (const Condition& post : s.post) {
            const ConditionDecl* decl = library.find_condition(post.name);
            if (decl && decl->kind() == ConditionKind::BatteryAbove) return s;
        }
    }
    throw EditError("no declared skill restores the battery");
}

const ConditionDecl& battery_condition(const Library& library) {
    for (const ConditionDecl& c : library.conditions()) {
        if (c.kind() == ConditionKind::BatteryAbove) return c;
    }
    throw EditError("no declared condition watches the battery");
}

Skill instance_of(const SkillDecl& decl) {
    if (!decl.params.empty()) {
        throw EditError("skill " + decl.name + " needs arguments; recipes only take " +
                        "parameterless skills");
    }
    return {decl.name, {}};
}

// Ground postconditions of a parameterless skill.
std::vector<Condition> ground_posts(const SkillDecl& decl) {
    return decl.post;
}

void require_policy(const Document& doc) {
    if (!doc.tree && !doc.machine) {
        throw EditError("the document has no policy to edit");
    }
}

}  // namespace

RecipeResult apply_add_recharge(Document& doc, double threshold) {
    require_policy(doc);
    const SkillDecl& decl = battery_skill(doc.library);
    Skill responder = instance_of(decl);
    Condition guard{battery_condition(doc.library).name, {Arg::number(threshold)}};

    EditReceipt receipt;
    if (doc.tree) {
        PolicyTree& tree = *doc.tree;
        EditReceipt before = tree.totals();
        if (tree.node(tree.root()).type != NodeType::Sequence) {
            tree.wrap_root(NodeType::Sequence);
        }
        NodeId fb = tree.add_fallback();
        tree.attach(fb, tree.add_condition(guard));
        tree.attach(fb, tree.add_action(responder));
        tree.attach_at(tree.root(), fb, 0);
        receipt = tree.totals() - before;
    } else {
        receipt = doc.machine->add_connected_state(responder.text(), responder, guard,
                                                   /*negate_trigger=*/true);
    }
    return {receipt, responder.text() + " guarded at " + guard.text() + ": " +
                         receipt_text(receipt)};
}

RecipeResult apply_add_tail(Document& doc, const std::string& skill_name) {
    require_policy(doc);
    const SkillDecl& decl = doc.library.skill(skill_name);
    Skill tail = instance_of(decl);
    if (decl.post.empty()) {
        throw EditError("skill " + skill_name + " achieves nothing to append");
    }
    Condition objective = decl.post.front();

    EditReceipt receipt;
    if (doc.tree) {
        PolicyTree& tree = *doc.tree;
        EditReceipt before = tree.totals();
        if (tree.node(tree.root()).type != NodeType::Sequence) {
            tree.wrap_root(NodeType::Sequence);
        }
        tree.attach(tree.root(), expand_condition(tree, doc.library, objective));
        receipt = tree.totals() - before;
    } else {
        StateMachine& machine = *doc.machine;
        // The state currently finishing the chain hands over to the tail.
        const MachineState* predecessor = nullptr;
        for (const MachineState& s : machine.states()) {
            auto it = s.on.find(Status::Success);
            if (it != s.on.end() && it->second == StateMachine::kSuccess &&
                !s.connected) {
                predecessor = &s;
            }
        }
        if (!predecessor) {
            throw EditError("no state finishes at $success to splice behind");
        }
        // Entering the tail requires everything the machine used to call done.
        std::vector<Condition> entry;
        for (const DispatchEntry& e : machine.dispatch()) {
            if (e.target == StateMachine::kSuccess) {
                entry = e.require;
                break;
            }
        }
        receipt = machine.add_sequential_state(tail.text(), tail, predecessor->id,
                                               std::move(entry), objective);
    }
    return {receipt, tail.text() + " appended for " + objective.text() + ": " +
                         receipt_text(receipt)};
}

namespace {

NodeId enclosing_fragment(const PolicyTree& tree, NodeId leaf) {
    NodeId parent = tree.node(leaf).parent;
    if (parent == -1) return leaf;
    if (tree.node(parent).type == NodeType::Sequence) {
        NodeId grand = tree.node(parent).parent;
        if (grand != -1 && tree.node(grand).type == NodeType::Fallback) return grand;
        return parent;
    }
    return parent;
}

}  // namespace

RecipeResult apply_remove(Document& doc, const std::string& skill_name) {
    require_policy(doc);
    const SkillDecl& decl = doc.library.skill(skill_name);

    EditReceipt receipt;
    if (doc.tree) {
        PolicyTree& tree = *doc.tree;
        NodeId target = -1;
        for (NodeId id : tree.preorder()) {
            const TreeNode& n = tree.node(id);
            if (n.type == NodeType::Action && n.skill.name == skill_name) {
                target = id;
                break;
            }
        }
        if (target == -1) throw EditError(skill_name + " does not appear in the policy");
        NodeId fragment = enclosing_fragment(tree, target);
        if (fragment == tree.root()) {
            throw EditError("removing " + skill_name + " would empty the policy");
        }
        EditReceipt before = tree.totals();
        tree.remove_subtree(fragment);
        NodeId root = tree.root();
        const TreeNode& root_node = tree.node(root);
        if ((root_node.type == NodeType::Sequence ||
             root_node.type == NodeType::Fallback) &&
            root_node.children.size() == 1) {
            NodeId only = root_node.children.front();
            tree.detach(only);
            tree.set_root(only);
            tree.remove_subtree(root);
        }
        receipt = tree.totals() - before;
    } else {
        StateMachine& machine = *doc.machine;
        const MachineState* victim = nullptr;
        for (const MachineState& s : machine.states()) {
            if (s.skill.name == skill_name) {
                victim = &s;
                break;
            }
        }
        if (!victim) throw EditError(skill_name + " does not appear in the policy");
        std::string id = victim->id;
        std::vector<Condition> posts = ground_posts(decl);
        EditReceipt before = machine.totals();
        machine.remove_state(id);
        receipt = machine.totals() - before;
        // Finishing no longer involves what the state achieved.
        for (std::size_t i = 0; i < machine.dispatch().size(); ++i) {
            DispatchEntry entry = machine.dispatch()[i];
            if (entry.target != StateMachine::kSuccess) continue;
            auto drop = [&](const Condition& c) {
                return std::any_of(posts.begin(), posts.end(),
                                   [&](const Condition& p) { return p == c; });
            };
            entry.require.erase(
                std::remove_if(entry.require.begin(), entry.require.end(), drop),
                entry.require.end());
            machine.replace_dispatch(i, std::move(entry));
        }
    }
    return {receipt, skill_name + " removed: " + receipt_text(receipt)};
}

RecipeResult apply_recipe(Document& doc, const std::string& recipe,
                          const std::string& target) {
    if (recipe == "add-recharge") return apply_add_recharge(doc);
    if (recipe == "add-dock") return apply_add_tail(doc, target.empty() ? "dock" : target);
    if (recipe == "remove") {
        if (target.empty()) throw EditError("remove needs a skill name");
        return apply_remove(doc, target);
    }
    throw EditError("unknown recipe " + recipe +
                    " (known: add-recharge, add-dock, remove)");
}

}  // namespace polcomp
