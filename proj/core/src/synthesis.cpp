#include "polcomp/synthesis.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace polcomp {

void check_goal_ordering(const Library& library, const std::vector<Condition>& goals) {
    for (std::size_t i = 0; i < goals.size(); ++i) {
        for (std::size_t j = i + 1; j < goals.size(); ++j) {
            ConditionKind ki = library.condition(goals[i].name).kind();
            ConditionKind kj = library.condition(goals[j].name).kind();
            bool conflict = false;
            if (ki == ConditionKind::InHand && kj == ConditionKind::InHand &&
                !(goals[i].args[0] == goals[j].args[0])) {
                conflict = true;  // one gripper
            }
            if ((ki == ConditionKind::InHand && kj == ConditionKind::ObjectAt &&
                 goals[i].args[0] == goals[j].args[0]) ||
                (ki == ConditionKind::ObjectAt && kj == ConditionKind::InHand &&
                 goals[i].args[0] == goals[j].args[0])) {
                conflict = true;  // held and placed are exclusive
            }
            if (conflict) {
                throw OrderingConflictError("goals " + goals[i].text() + " and " +
                                            goals[j].text() + " cannot both hold");
            }
        }
    }
}

Achiever resolve_achiever(const Library& library, const Condition& goal) {
    std::vector<Achiever> found = library.achievers_for(goal);
    if (found.empty()) {
        throw UnachievableConditionError("no skill achieves " + goal.text());
    }
    if (found.size() > 1) {
        std::string names;
        for (const Achiever& a : found) {
            if (!names.empty()) names += ", ";
            names += a.instance.text();
        }
        throw AmbiguousAchieverError(goal.text() + " has several achievers: " + names);
    }
    return std::move(found.front());
}

namespace {

NodeId expand(PolicyTree& tree, const Library& library, const Condition& goal,
              std::set<std::string>& active) {
    std::string key = goal.text();
    if (!active.insert(key).second) {
        throw CyclicDependencyError(key + " depends on itself");
    }
    Achiever achiever = resolve_achiever(library, goal);

    NodeId fallback = tree.add_fallback();
    tree.attach(fallback, tree.add_condition(goal));
    if (achiever.preconditions.empty()) {
        tree.attach(fallback, tree.add_action(achiever.instance));
    } else {
        NodeId seq = tree.add_sequence();
        for (const Condition& pre : achiever.preconditions) {
            tree.attach(seq, expand(tree, library, pre, active));
        }
        tree.attach(seq, tree.add_action(achiever.instance));
        tree.attach(fallback, seq);
    }
    active.erase(key);
    return fallback;
}

void linearize_condition(const Library& library, const Condition& goal,
                         std::set<std::string>& active, std::vector<Milestone>& out) {
    std::string key = goal.text();
    if (!active.insert(key).second) {
        throw CyclicDependencyError(key + " depends on itself");
    }
    Achiever achiever = resolve_achiever(library, goal);
    for (const Condition& pre : achiever.preconditions) {
        linearize_condition(library, pre, active, out);
    }
    out.push_back({achiever.instance, goal});
    active.erase(key);
}

// Repeated instances get ".2", ".3", ... so every state id stays unique.
std::vector<std::string> state_ids(const std::vector<Milestone>& milestones) {
    std::vector<std::string> ids;
    std::map<std::string, int> seen;
    for (const Milestone& m : milestones) {
        std::string id = m.skill.text();
        int n = ++seen[id];
        if (n > 1) id += "." + std::to_string(n);
        ids.push_back(std::move(id));
    }
    return ids;
}

}  // namespace

NodeId expand_condition(PolicyTree& tree, const Library& library,
                        const Condition& goal) {
    std::set<std::string> active;
    return expand(tree, library, goal, active);
}

PolicyTree backchain(const Library& library, const std::vector<Condition>& goals) {
    if (goals.empty()) throw SynthesisError("nothing to achieve");
    check_goal_ordering(library, goals);
    PolicyTree tree;
    std::set<std::string> active;
    if (goals.size() == 1) {
        tree.set_root(expand(tree, library, goals.front(), active));
    } else {
        NodeId root = tree.add_sequence();
        for (const Condition& goal : goals) {
            tree.attach(root, expand(tree, library, goal, active));
        }
        tree.set_root(root);
    }
    tree.validate();
    return tree;
}

std::vector<Milestone> linearize(const Library& library,
                                 const std::vector<Condition>& goals) {
    if (goals.empty()) throw SynthesisError("nothing to achieve");
    check_goal_ordering(library, goals);
    std::vector<Milestone> out;
    std::set<std::string> active;
    for (const Condition& goal : goals) {
        linearize_condition(library, goal, active, out);
    }
    return out;
}

StateMachine assemble_fault_tolerant_fsm(const Library& library,
                                         const std::vector<Condition>& goals) {
    std::vector<Milestone> milestones = linearize(library, goals);
    std::vector<std::string> ids = state_ids(milestones);

    StateMachine machine;
    for (std::size_t i = 0; i < milestones.size(); ++i) {
        machine.add_state(ids[i], milestones[i].skill);
    }
    for (std::size_t i = 0; i < milestones.size(); ++i) {
        machine.set_transition(ids[i], Status::Running, ids[i]);
        machine.set_transition(ids[i], Status::Failure, StateMachine::kIdle);
        machine.set_transition(ids[i], Status::Success,
                               i + 1 < ids.size() ? ids[i + 1] : StateMachine::kSuccess);
    }

    machine.add_dispatch({goals, StateMachine::kSuccess});
    for (std::size_t i = milestones.size(); i-- > 1;) {
        machine.add_dispatch({{milestones[i - 1].achieves}, ids[i]});
    }
    machine.add_dispatch({{}, ids.front()});
    machine.validate();
    return machine;
}

StateMachine assemble_sequential_fsm(const Library& library,
                                     const std::vector<Condition>& goals) {
    std::vector<Milestone> milestones = linearize(library, goals);
    std::vector<std::string> ids = state_ids(milestones);

    StateMachine machine;
    for (std::size_t i = 0; i < milestones.size(); ++i) {
        machine.add_state(ids[i], milestones[i].skill);
    }
    for (std::size_t i = 0; i < milestones.size(); ++i) {
        machine.set_transition(ids[i], Status::Running, ids[i]);
        machine.set_transition(ids[i], Status::Failure, StateMachine::kFailure);
        machine.set_transition(ids[i], Status::Success,
                               i + 1 < ids.size() ? ids[i + 1] : StateMachine::kSuccess);
    }
    machine.add_dispatch({goals, StateMachine::kSuccess});
    machine.add_dispatch({{}, ids.front()});
    return machine;
}

}  // namespace polcomp
