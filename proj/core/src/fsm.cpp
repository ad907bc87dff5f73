#include "polcomp/fsm.hpp"

#include <algorithm>

namespace polcomp {

StateMachine::StateMachine() {
    ++totals_.nodes_created;
    // Idle waits on itself until a dispatch row or guard moves it on.
    ref_edge(kIdle, kIdle);
    ref_edge(kIdle, kIdle);
}

void StateMachine::ref_edge(const std::string& from, const std::string& to) {
    if (++edge_refs_[{from, to}] == 1) ++totals_.links_added;
}

void StateMachine::unref_edge(const std::string& from, const std::string& to) {
    auto it = edge_refs_.find({from, to});
    if (it == edge_refs_.end()) return;
    if (--it->second == 0) {
        edge_refs_.erase(it);
        ++totals_.links_removed;
    }
}

void StateMachine::check_known_target(const std::string& target) const {
    if (target == kIdle || is_terminal(target) || has_state(target)) return;
    throw UnknownStateError("unknown state " + target);
}

bool StateMachine::has_state(const std::string& id) const {
    return std::any_of(states_.begin(), states_.end(),
                       [&](const MachineState& s) { return s.id == id; });
}

const MachineState& StateMachine::state(const std::string& id) const {
    for (const MachineState& s : states_) {
        if (s.id == id) return s;
    }
    throw UnknownStateError("unknown state " + id);
}

MachineState& StateMachine::mutable_state(const std::string& id) {
    for (MachineState& s : states_) {
        if (s.id == id) return s;
    }
    throw UnknownStateError("unknown state " + id);
}

void StateMachine::add_state(std::string id, Skill skill) {
    if (id == kIdle || is_terminal(id)) {
        throw DuplicateStateIdError(id + " is reserved");
    }
    if (has_state(id)) {
        throw DuplicateStateIdError("state " + id + " already exists");
    }
    MachineState s;
    s.id = std::move(id);
    s.skill = std::move(skill);
    states_.push_back(std::move(s));
    ++totals_.nodes_created;
}

void StateMachine::set_transition(const std::string& from, Status outcome,
                                  std::string to) {
    if (from == kIdle) {
        throw MachineError("idle routes through its dispatch table, not outcomes");
    }
    check_known_target(to);
    MachineState& s = mutable_state(from);
    auto it = s.on.find(outcome);
    if (it != s.on.end()) {
        if (it->second == to) return;
        unref_edge(from, it->second);
        it->second = to;
    } else {
        s.on.emplace(outcome, to);
    }
    ref_edge(from, to);
}

void StateMachine::clear_transition(const std::string& from, Status outcome) {
    MachineState& s = mutable_state(from);
    auto it = s.on.find(outcome);
    if (it == s.on.end()) return;
    unref_edge(from, it->second);
    s.on.erase(it);
}

void StateMachine::add_guard(const std::string& from, GuardLink link) {
    check_known_target(link.target);
    MachineState& s = mutable_state(from);
    ref_edge(from, link.target);
    s.guards.push_back(std::move(link));
}

void StateMachine::add_idle_guard(GuardLink link) {
    check_known_target(link.target);
    ref_edge(kIdle, link.target);
    idle_guards_.push_back(std::move(link));
}

void StateMachine::mark_connected(const std::string& id, GuardLink trigger) {
    MachineState& s = mutable_state(id);
    s.connected = true;
    s.trigger = std::move(trigger);
}

void StateMachine::add_dispatch(DispatchEntry entry) {
    insert_dispatch(dispatch_.size(), entry);
}

void StateMachine::insert_dispatch(std::size_t index, DispatchEntry entry) {
    if (index > dispatch_.size()) {
        throw MachineError("dispatch index out of range");
    }
    check_known_target(entry.target);
    ref_edge(kIdle, entry.target);
    dispatch_.insert(dispatch_.begin() + static_cast<std::ptrdiff_t>(index),
                     std::move(entry));
}

void StateMachine::replace_dispatch(std::size_t index, DispatchEntry entry) {
    if (index >= dispatch_.size()) {
        throw MachineError("dispatch index out of range");
    }
    check_known_target(entry.target);
    unref_edge(kIdle, dispatch_[index].target);
    ref_edge(kIdle, entry.target);
    dispatch_[index] = std::move(entry);
}

EditReceipt StateMachine::add_connected_state(std::string id, Skill skill,
                                              Condition trigger, bool negate_trigger) {
    EditReceipt before = totals_;
    add_state(id, std::move(skill));
    GuardLink link{std::move(trigger), negate_trigger, id};
    add_idle_guard(link);
    for (MachineState& s : states_) {
        if (s.id == id) continue;
        ref_edge(s.id, link.target);
        s.guards.push_back(link);
    }
    set_transition(id, Status::Running, id);
    set_transition(id, Status::Failure, kIdle);
    set_transition(id, Status::Success, kIdle);
    MachineState& self = mutable_state(id);
    self.connected = true;
    self.trigger = link;
    return totals_ - before;
}

EditReceipt StateMachine::add_sequential_state(std::string id, Skill skill,
                                               std::string predecessor,
                                               std::vector<Condition> entry_require,
                                               Condition goal_condition) {
    EditReceipt before = totals_;
    const MachineState& pred = state(predecessor);
    auto old = pred.on.find(Status::Success);
    if (old == pred.on.end()) {
        throw UnmappedOutcomeError(predecessor + " has no success target to inherit");
    }
    std::string inherited = old->second;

    add_state(id, std::move(skill));
    set_transition(predecessor, Status::Success, id);
    set_transition(id, Status::Success, inherited);
    set_transition(id, Status::Running, id);
    set_transition(id, Status::Failure, kIdle);
    for (const MachineState& s : states_) {
        if (s.connected && s.id != id) add_guard(id, s.trigger);
    }

    // The new work comes right after the finished-row(s), ahead of the other
    // milestones, and finishing now additionally requires its milestone.
    std::size_t index = 0;
    while (index < dispatch_.size() && dispatch_[index].target == kSuccess) ++index;
    insert_dispatch(index, {std::move(entry_require), id});
    for (DispatchEntry& entry : dispatch_) {
        if (entry.target == kSuccess) entry.require.push_back(goal_condition);
    }
    return totals_ - before;
}

void StateMachine::remove_state(std::string id) {
    if (id == kIdle) throw IdleRemovalError("idle cannot be removed");
    if (!has_state(id)) throw UnknownStateError("unknown state " + id);

    std::string relink = kIdle;
    {
        const MachineState& victim = state(id);
        auto it = victim.on.find(Status::Success);
        if (it != victim.on.end() && it->second != id) relink = it->second;
    }

    for (MachineState& s : states_) {
        if (s.id == id) continue;
        for (auto& [outcome, target] : s.on) {
            if (target == id) {
                unref_edge(s.id, target);
                target = relink;
                ref_edge(s.id, relink);
            }
        }
        for (auto it = s.guards.begin(); it != s.guards.end();) {
            if (it->target == id) {
                unref_edge(s.id, id);
                it = s.guards.erase(it);
            } else {
                ++it;
            }
        }
    }
    for (auto it = idle_guards_.begin(); it != idle_guards_.end();) {
        if (it->target == id) {
            unref_edge(kIdle, id);
            it = idle_guards_.erase(it);
        } else {
            ++it;
        }
    }
    for (auto it = dispatch_.begin(); it != dispatch_.end();) {
        if (it->target == id) {
            unref_edge(kIdle, id);
            it = dispatch_.erase(it);
        } else {
            ++it;
        }
    }

    MachineState& victim = mutable_state(id);
    for (const auto& [outcome, target] : victim.on) unref_edge(id, target);
    for (const GuardLink& g : victim.guards) unref_edge(id, g.target);
    states_.erase(std::find_if(states_.begin(), states_.end(),
                               [&](const MachineState& s) { return s.id == id; }));
    ++totals_.nodes_removed;
}

void StateMachine::validate() const {
    for (const MachineState& s : states_) {
        auto running = s.on.find(Status::Running);
        if (running == s.on.end() || running->second != s.id) {
            throw NotFaultTolerantError("state " + s.id + " does not hold while Running");
        }
        auto failure = s.on.find(Status::Failure);
        if (failure == s.on.end() || failure->second != kIdle) {
            throw NotFaultTolerantError("state " + s.id + " does not fall back to idle");
        }
        auto success = s.on.find(Status::Success);
        if (success == s.on.end()) {
            throw NotFaultTolerantError("state " + s.id + " has no success target");
        }
        check_known_target(success->second);
        for (const GuardLink& g : s.guards) check_known_target(g.target);
        // Idle must be able to reach every working state directly.
        if (edge_refs_.find({kIdle, s.id}) == edge_refs_.end()) {
            throw NotFaultTolerantError("state " + s.id + " is unreachable from idle");
        }
    }
    for (const GuardLink& g : idle_guards_) check_known_target(g.target);
    for (const DispatchEntry& e : dispatch_) check_known_target(e.target);
    if (dispatch_.empty() || !dispatch_.back().require.empty()) {
        throw NotFaultTolerantError("dispatch table needs a catch-all last row");
    }
}

DirectedGraph StateMachine::to_graph() const {
    DirectedGraph g;
    g.add_node(kIdle);
    for (const MachineState& s : states_) g.add_node(s.id);
    for (const char* terminal : {kSuccess, kFailure}) {
        for (const auto& [edge, refs] : edge_refs_) {
            if (edge.second == terminal) {
                g.add_node(terminal);
                break;
            }
        }
    }

    g.add_edge(kIdle, kIdle, "wait");
    for (const DispatchEntry& e : dispatch_) {
        std::string label;
        for (const Condition& c : e.require) {
            if (!label.empty()) label += " & ";
            label += c.text();
        }
        if (label.empty()) label = "else";
        g.add_edge(kIdle, e.target, label);
    }
    for (const GuardLink& gl : idle_guards_) {
        g.add_edge(kIdle, gl.target,
                   std::string(gl.negate ? "unless " : "when ") + gl.condition.text());
    }
    for (const MachineState& s : states_) {
        for (Status outcome : {Status::Success, Status::Failure, Status::Running}) {
            auto it = s.on.find(outcome);
            if (it != s.on.end()) {
                g.add_edge(s.id, it->second, std::string(to_string(outcome)));
            }
        }
        for (const GuardLink& gl : s.guards) {
            g.add_edge(s.id, gl.target,
                       std::string(gl.negate ? "unless " : "when ") + gl.condition.text());
        }
    }
    return g;
}

Status FsmExecution::step(WorldView& world) {
    if (StateMachine::is_terminal(current_)) {
        return current_ == StateMachine::kSuccess ? Status::Success : Status::Failure;
    }

    const std::vector<GuardLink>& guards = current_ == StateMachine::kIdle
                                               ? machine_->idle_guards()
                                               : machine_->state(current_).guards;
    for (const GuardLink& g : guards) {
        if (world.check(g.condition) == g.negate) continue;
        if (current_ != StateMachine::kIdle && sent_) {
            world.cancel(machine_->state(current_).skill);
        }
        current_ = g.target;
        sent_ = false;
        break;
    }

    if (current_ == StateMachine::kIdle) {
        const DispatchEntry* chosen = nullptr;
        for (const DispatchEntry& e : machine_->dispatch()) {
            bool all = true;
            for (const Condition& c : e.require) {
                if (!world.check(c)) {
                    all = false;
                    break;
                }
            }
            if (all) {
                chosen = &e;
                break;
            }
        }
        if (!chosen) throw NoDispatchMatchError("no dispatch row matched");
        current_ = chosen->target;
        sent_ = false;
    }
    if (StateMachine::is_terminal(current_)) {
        return current_ == StateMachine::kSuccess ? Status::Success : Status::Failure;
    }

    const MachineState& s = machine_->state(current_);
    if (!sent_) {
        world.send(s.skill);
        sent_ = true;
    }
    Status outcome = world.monitor(s.skill);
    auto it = s.on.find(outcome);
    if (it == s.on.end()) {
        throw UnmappedOutcomeError("state " + s.id + " has no target for " +
                                   std::string(to_string(outcome)));
    }
    if (it->second != current_) {
        current_ = it->second;
        sent_ = false;
    }
    if (StateMachine::is_terminal(current_)) {
        return current_ == StateMachine::kSuccess ? Status::Success : Status::Failure;
    }
    return Status::Running;
}

void FsmExecution::halt(WorldView& world) {
    if (!StateMachine::is_terminal(current_) && current_ != StateMachine::kIdle &&
        sent_) {
        world.cancel(machine_->state(current_).skill);
    }
    sent_ = false;
}

}  // namespace polcomp
