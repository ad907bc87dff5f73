#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polcomp/graph.hpp"
#include "polcomp/receipt.hpp"
#include "polcomp/skills.hpp"
#include "polcomp/world.hpp"

namespace polcomp {

class MachineError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class UnknownStateError : public MachineError {
  public:
    using MachineError::MachineError;
};

class DuplicateStateIdError : public MachineError {
  public:
    using MachineError::MachineError;
};

class UnmappedOutcomeError : public MachineError {
  public:
    using MachineError::MachineError;
};

class NoDispatchMatchError : public MachineError {
  public:
    using MachineError::MachineError;
};

class NotFaultTolerantError : public MachineError {
  public:
    using MachineError::MachineError;
};

class IdleRemovalError : public MachineError {
  public:
    using MachineError::MachineError;
};

// Reroute checked before a state's own outcome: when the condition (or its
// negation) holds, control moves to `target` and any running attempt is
// abandoned.
struct GuardLink {
    Condition condition;
    bool negate = false;
    std::string target;

    bool operator==(const GuardLink&) const = default;
};

// One row of the idle state's dispatch table. The first row whose
// requirements all hold wins; an empty requirement list always matches.
struct DispatchEntry {
    std::vector<Condition> require;
    std::string target;

    bool operator==(const DispatchEntry&) const = default;
};

struct MachineState {
    std::string id;
    Skill skill;
    std::map<Status, std::string> on;
    std::vector<GuardLink> guards;
    // Connected states answer a standing trigger from everywhere; the trigger
    // is kept so that states added later can be wired to it too.
    bool connected = false;
    GuardLink trigger;
};

// State machine with a distinguished idle state that re-dispatches work after
// every failure, and implicit $success / $failure terminals. The fault
// tolerance contract: every working state loops to itself while Running and
// falls back to idle on Failure, so no single skill failure can wedge the
// machine.
class StateMachine {
  public:
    static constexpr const char* kIdle = "idle";
    static constexpr const char* kSuccess = "$success";
    static constexpr const char* kFailure = "$failure";

    StateMachine();

    static bool is_terminal(std::string_view id) {
        return id == kSuccess || id == kFailure;
    }

    void add_state(std::string id, Skill skill);

    // Drops a state and splices the success chain around it: predecessors
    // pointing at it are retargeted to its own success target, and dispatch
    // rows and guards leading to it are dropped. Takes its argument by value
    // because callers tend to pass ids owned by the state being erased.
    void remove_state(std::string id);

    void set_transition(const std::string& from, Status outcome, std::string to);
    void clear_transition(const std::string& from, Status outcome);

    void add_guard(const std::string& from, GuardLink link);
    void add_dispatch(DispatchEntry entry);
    void insert_dispatch(std::size_t index, DispatchEntry entry);
    void replace_dispatch(std::size_t index, DispatchEntry entry);

    // Wires a new state reachable from everywhere: the trigger is registered
    // as a guard on idle and every existing working state, and the new state
    // loops on Running, returns to idle on both Success and Failure.
    EditReceipt add_connected_state(std::string id, Skill skill, Condition trigger,
                                    bool negate_trigger);

    // Splices a new state into the success chain behind `predecessor`: takes
    // over its success target, gains the standard loop-and-fallback wiring
    // plus guards to every connected state, and gets a dispatch row gated on
    // `entry_require` right after the terminal row, whose requirements grow
    // by `goal_condition`. `predecessor` is taken by value: adding the state
    // reallocates the state list, which would invalidate a caller's
    // reference into it.
    EditReceipt add_sequential_state(std::string id, Skill skill,
                                     std::string predecessor,
                                     std::vector<Condition> entry_require,
                                     Condition goal_condition);

    bool has_state(const std::string& id) const;
    const MachineState& state(const std::string& id) const;
    const std::vector<MachineState>& states() const { return states_; }
    const std::vector<GuardLink>& idle_guards() const { return idle_guards_; }
    const std::vector<DispatchEntry>& dispatch() const { return dispatch_; }

    void add_idle_guard(GuardLink link);

    // Remembers that a state answers a standing trigger, so later structural
    // edits wire new states to it. The guards themselves are not touched.
    void mark_connected(const std::string& id, GuardLink trigger);

    // Checks the fault tolerance contract and that every transition, guard
    // and dispatch target exists. Throws NotFaultTolerantError or
    // UnknownStateError.
    void validate() const;

    EditReceipt totals() const { return totals_; }

    DirectedGraph to_graph() const;

  private:
    MachineState& mutable_state(const std::string& id);
    void ref_edge(const std::string& from, const std::string& to);
    void unref_edge(const std::string& from, const std::string& to);
    void check_known_target(const std::string& target) const;

    std::vector<MachineState> states_;
    std::vector<GuardLink> idle_guards_;
    std::vector<DispatchEntry> dispatch_;
    std::map<std::pair<std::string, std::string>, int> edge_refs_;
    EditReceipt totals_;
};

// Steps one machine against a world. The idle state is transient: guards,
// dispatch and the first send of the chosen skill all happen within the step
// that visits it.
class FsmExecution {
  public:
    explicit FsmExecution(const StateMachine& machine) : machine_(&machine) {}

    // Running while work remains; Success / Failure once a terminal state is
    // reached (and on every step after).
    Status step(WorldView& world);

    void halt(WorldView& world);

    const std::string& current() const { return current_; }

  private:
    const StateMachine* machine_;
    std::string current_ = StateMachine::kIdle;
    bool sent_ = false;
};

}  // namespace polcomp
