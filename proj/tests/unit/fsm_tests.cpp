#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "polcomp/fsm.hpp"
#include "polcomp/metrics.hpp"
#include "scripted_world.hpp"

using namespace polcomp;
using polcomp::testing::ScriptedWorld;

namespace {

Condition cond(const std::string& name) { return Condition{name, {}}; }
Skill act(const std::string& name) { return Skill{name, {}}; }

// Chain of k working states wired with the fault-tolerance contract, a
// finished row and a catch-all dispatch row.
StateMachine chain_machine(int k) {
    StateMachine m;
    std::vector<std::string> ids;
    for (int i = 0; i < k; ++i) {
        std::string id = "s" + std::to_string(i);
        m.add_state(id, act("skill" + std::to_string(i)));
        ids.push_back(id);
    }
    for (int i = 0; i < k; ++i) {
        m.set_transition(ids[i], Status::Running, ids[i]);
        m.set_transition(ids[i], Status::Failure, StateMachine::kIdle);
        m.set_transition(ids[i], Status::Success,
                         i + 1 < k ? ids[i + 1]
                                   : std::string(StateMachine::kSuccess));
    }
    m.add_dispatch({{cond("all_done")}, StateMachine::kSuccess});
    for (int i = k - 1; i > 0; --i) {
        m.add_dispatch({{cond("done" + std::to_string(i - 1))}, ids[i]});
    }
    m.add_dispatch({{}, ids.front()});
    return m;
}

}  // namespace

TEST_CASE("a fresh machine is just idle waiting on itself") {
    StateMachine m;
    CHECK(m.states().empty());
    CHECK(m.dispatch().empty());
    EditReceipt t = m.totals();
    CHECK(t.nodes_created == 1);
    CHECK(t.links_added == 1);

    DirectedGraph g = m.to_graph();
    CHECK(g.node_count() == 1);
    CHECK(g.edge_count() == 1);
    CHECK(g.has_edge("idle", "idle"));
}

TEST_CASE("state ids must be fresh and not reserved") {
    StateMachine m;
    m.add_state("work", act("w"));
    CHECK_THROWS_AS(m.add_state("work", act("w")), DuplicateStateIdError);
    CHECK_THROWS_AS(m.add_state("idle", act("w")), DuplicateStateIdError);
    CHECK_THROWS_AS(m.add_state("$success", act("w")), DuplicateStateIdError);
    CHECK_THROWS_AS(m.add_state("$failure", act("w")), DuplicateStateIdError);
}

TEST_CASE("transitions are checked and reference counted") {
    StateMachine m;
    m.add_state("a", act("a"));
    m.add_state("b", act("b"));

    CHECK_THROWS_AS(m.set_transition("a", Status::Success, "ghost"),
                    UnknownStateError);
    CHECK_THROWS_AS(m.set_transition("idle", Status::Success, "a"), MachineError);
    CHECK_THROWS_AS(m.set_transition("ghost", Status::Success, "a"),
                    UnknownStateError);

    EditReceipt before = m.totals();
    m.set_transition("a", Status::Success, "idle");
    m.set_transition("a", Status::Failure, "idle");  // same arrow, no new link
    EditReceipt delta = m.totals() - before;
    CHECK(delta.links_added == 1);
    CHECK(m.to_graph().has_edge("a", "idle"));

    m.clear_transition("a", Status::Success);
    CHECK((m.totals() - before).links_removed == 0);  // failure still holds it
    CHECK(m.to_graph().has_edge("a", "idle"));

    m.clear_transition("a", Status::Failure);
    CHECK((m.totals() - before).links_removed == 1);
    CHECK_FALSE(m.to_graph().has_edge("a", "idle"));

    // Rewiring to a new target swaps one link for another.
    m.set_transition("a", Status::Success, "b");
    EditReceipt rewire_base = m.totals();
    m.set_transition("a", Status::Success, "b");  // same target, free
    CHECK((m.totals() - rewire_base).total() == 0);
    m.set_transition("a", Status::Success, "idle");
    EditReceipt rewired = m.totals() - rewire_base;
    CHECK(rewired.links_added == 1);
    CHECK(rewired.links_removed == 1);
}

TEST_CASE("net link totals always match the graph view") {
    StateMachine m = chain_machine(3);
    m.add_guard("s1", {cond("alarm"), false, "s0"});
    m.add_idle_guard({cond("alarm"), true, "s2"});
    EditReceipt t = m.totals();
    CHECK(t.links_added - t.links_removed ==
          static_cast<int>(m.to_graph().edge_count()));

    m.remove_state("s1");
    t = m.totals();
    CHECK(t.links_added - t.links_removed ==
          static_cast<int>(m.to_graph().edge_count()));
}

TEST_CASE("dispatch rows insert, replace and bounds-check") {
    StateMachine m;
    m.add_state("a", act("a"));
    m.add_state("b", act("b"));

    CHECK_THROWS_AS(m.insert_dispatch(1, {{}, "a"}), MachineError);
    CHECK_THROWS_AS(m.add_dispatch({{}, "ghost"}), UnknownStateError);

    m.add_dispatch({{cond("x")}, "a"});
    m.add_dispatch({{}, "a"});
    m.insert_dispatch(1, {{cond("y")}, "b"});
    REQUIRE(m.dispatch().size() == 3);
    CHECK(m.dispatch()[1].target == "b");

    CHECK_THROWS_AS(m.replace_dispatch(3, {{}, "a"}), MachineError);
    m.replace_dispatch(1, {{cond("y")}, "a"});
    CHECK(m.dispatch()[1].target == "a");
    CHECK_FALSE(m.to_graph().has_edge("idle", "b"));
}

TEST_CASE("removing a state splices its predecessor to its successor") {
    StateMachine m = chain_machine(3);
    m.add_guard("s0", {cond("watch"), false, "s1"});
    DirectedGraph before = m.to_graph();
    CHECK(before.has_edge("s0", "s1"));

    m.remove_state("s1");
    CHECK_FALSE(m.has_state("s1"));
    DirectedGraph after = m.to_graph();
    // s0's success inherits s1's success target.
    CHECK(after.has_edge("s0", "s2"));
    CHECK_FALSE(after.has_edge("s0", "s1"));
    // The dispatch row that resumed at s1 is gone with it.
    for (const DispatchEntry& e : m.dispatch()) CHECK(e.target != "s1");
    // So is the guard that pointed there.
    CHECK(m.state("s0").guards.empty());

    CHECK_THROWS_AS(m.remove_state("idle"), IdleRemovalError);
    CHECK_THROWS_AS(m.remove_state("ghost"), UnknownStateError);
}

TEST_CASE("validate enforces the fault-tolerance contract") {
    SUBCASE("running must hold the state") {
        StateMachine m = chain_machine(2);
        m.set_transition("s0", Status::Running, "s1");
        CHECK_THROWS_AS(m.validate(), NotFaultTolerantError);
    }
    SUBCASE("failure must return to idle") {
        StateMachine m = chain_machine(2);
        m.set_transition("s0", Status::Failure, "$failure");
        CHECK_THROWS_AS(m.validate(), NotFaultTolerantError);
    }
    SUBCASE("success must lead somewhere") {
        StateMachine m = chain_machine(2);
        m.clear_transition("s1", Status::Success);
        CHECK_THROWS_AS(m.validate(), NotFaultTolerantError);
    }
    SUBCASE("idle must reach every state") {
        StateMachine m = chain_machine(2);
        // Retarget the only row that resumes at s1.
        for (std::size_t i = 0; i < m.dispatch().size(); ++i) {
            if (m.dispatch()[i].target == "s1") {
                m.replace_dispatch(i, {m.dispatch()[i].require, "s0"});
            }
        }
        CHECK_THROWS_AS(m.validate(), NotFaultTolerantError);
    }
    SUBCASE("the dispatch table needs a catch-all last row") {
        StateMachine m = chain_machine(2);
        m.replace_dispatch(m.dispatch().size() - 1, {{cond("guarded")}, "s0"});
        CHECK_THROWS_AS(m.validate(), NotFaultTolerantError);
        StateMachine empty;
        CHECK_THROWS_AS(empty.validate(), NotFaultTolerantError);
    }
    SUBCASE("the full chain passes") {
        chain_machine(3).validate();
    }
}

TEST_CASE("a connected state is reachable from everywhere") {
    StateMachine m = chain_machine(2);
    DirectedGraph before = m.to_graph();

    EditReceipt receipt =
        m.add_connected_state("guarded", act("respond"), cond("alarm"), false);
    CHECK(receipt.nodes_created == 1);
    // One idle guard, one guard per prior working state, the self-loop, and
    // the shared arrow back to idle.
    CHECK(receipt.links_added == 5);
    CHECK(receipt.total() == 6);

    DirectedGraph after = m.to_graph();
    CHECK(after.edge_count() - before.edge_count() ==
          static_cast<std::size_t>(receipt.links_added));
    CHECK(after.has_edge("idle", "guarded"));
    CHECK(after.has_edge("s0", "guarded"));
    CHECK(after.has_edge("s1", "guarded"));
    CHECK(after.has_edge("guarded", "guarded"));
    CHECK(after.has_edge("guarded", "idle"));

    const MachineState& s = m.state("guarded");
    CHECK(s.connected);
    CHECK(s.trigger.condition == cond("alarm"));
    CHECK(m.idle_guards().size() == 1);
    m.validate();
}

TEST_CASE("the connected-state cost grows with the number of states") {
    for (int working : {2, 4, 9}) {
        StateMachine m = chain_machine(working);
        EditReceipt receipt =
            m.add_connected_state("guarded", act("respond"), cond("alarm"), true);
        // n + 2 links for n = idle plus the working states.
        CHECK(receipt.links_added == working + 3);
        CHECK(receipt.nodes_created == 1);
        m.validate();
    }
}

TEST_CASE("a sequential state splices in front of its predecessor's target") {
    StateMachine m = chain_machine(2);
    m.add_connected_state("guarded", act("respond"), cond("alarm"), false);
    EditReceipt receipt = m.add_sequential_state(
        "tail", act("finish"), "s1", {cond("done1")}, cond("finished"));

    CHECK(receipt.nodes_created == 1);
    // s1's old success arrow is replaced, so one link out, six in: the splice,
    // the new success, self-loop, failure, the connected guard, the dispatch
    // row.
    CHECK(receipt.links_removed == 1);
    CHECK(receipt.links_added == 6);

    DirectedGraph g = m.to_graph();
    CHECK(g.has_edge("s1", "tail"));
    CHECK(g.has_edge("tail", "$success"));
    CHECK_FALSE(g.has_edge("s1", "$success"));
    CHECK(g.has_edge("tail", "guarded"));

    // The resume row lands right after the finished row and the finished row
    // now also requires the new milestone.
    REQUIRE(m.dispatch().size() >= 2);
    CHECK(m.dispatch()[0].target == "$success");
    CHECK(m.dispatch()[0].require.back() == cond("finished"));
    CHECK(m.dispatch()[1].target == "tail");
    CHECK(m.dispatch()[1].require == std::vector<Condition>{cond("done1")});
    m.validate();

    CHECK_THROWS_AS(m.add_sequential_state("more", act("x"), "ghost", {},
                                           cond("c")),
                    UnknownStateError);
}

TEST_CASE("adding and removing a connected state restores the old graph") {
    StateMachine m = chain_machine(3);
    DirectedGraph before = m.to_graph();
    m.add_connected_state("guarded", act("respond"), cond("alarm"), false);
    m.remove_state("guarded");
    CHECK(metrics::same_structure(before, m.to_graph()));
}

TEST_CASE("idle dispatches to the first matching row") {
    StateMachine m = chain_machine(2);
    ScriptedWorld world;
    world.set("done0()", true);
    world.script("skill1()", {Status::Running});

    FsmExecution exec(m);
    CHECK(exec.current() == "idle");
    CHECK(exec.step(world) == Status::Running);
    // The finished row did not match, the milestone row did: straight to s1,
    // with its command sent the same step.
    CHECK(exec.current() == "s1");
    CHECK(world.sends == std::vector<std::string>{"skill1()"});
}

TEST_CASE("idle can finish transiently without sending anything") {
    StateMachine m = chain_machine(2);
    ScriptedWorld world;
    world.set("all_done()", true);

    FsmExecution exec(m);
    CHECK(exec.step(world) == Status::Success);
    CHECK(exec.current() == "$success");
    CHECK(world.sends.empty());
    // Terminal states absorb without touching the world again.
    std::size_t checks = world.checks.size();
    CHECK(exec.step(world) == Status::Success);
    CHECK(world.checks.size() == checks);
}

TEST_CASE("running holds the state without resending") {
    StateMachine m = chain_machine(1);
    ScriptedWorld world;
    world.script("skill0()", {Status::Running, Status::Running, Status::Success});

    FsmExecution exec(m);
    CHECK(exec.step(world) == Status::Running);
    CHECK(exec.current() == "s0");
    CHECK(exec.step(world) == Status::Running);
    CHECK(exec.current() == "s0");
    CHECK(exec.step(world) == Status::Success);
    CHECK(world.sends == std::vector<std::string>{"skill0()"});
}

TEST_CASE("failure falls back to idle and the next step retries") {
    StateMachine m = chain_machine(1);
    ScriptedWorld world;
    world.script("skill0()", {Status::Failure});
    world.script("skill0()", {Status::Success});

    FsmExecution exec(m);
    CHECK(exec.step(world) == Status::Running);
    CHECK(exec.current() == "idle");
    CHECK(exec.step(world) == Status::Success);
    CHECK(world.sends == std::vector<std::string>{"skill0()", "skill0()"});
}

TEST_CASE("guards cancel the running command and move on") {
    StateMachine m = chain_machine(2);
    m.add_guard("s0", {cond("alarm"), false, "s1"});
    ScriptedWorld world;
    world.script("skill0()", {Status::Running, Status::Running});
    world.script("skill1()", {Status::Running});

    FsmExecution exec(m);
    CHECK(exec.step(world) == Status::Running);
    CHECK(exec.current() == "s0");

    world.set("alarm()", true);
    CHECK(exec.step(world) == Status::Running);
    CHECK(exec.current() == "s1");
    CHECK(world.cancels == std::vector<std::string>{"skill0()"});
    CHECK(world.sends == std::vector<std::string>{"skill0()", "skill1()"});
}

TEST_CASE("a negated guard fires while the condition is absent") {
    StateMachine m = chain_machine(2);
    m.add_guard("s1", {cond("battery_ok"), true, "s0"});
    ScriptedWorld world;
    world.set("done0()", true);       // resume at s1
    world.set("battery_ok()", true);  // guard quiet
    world.script("skill1()", {Status::Running, Status::Running});
    world.script("skill0()", {Status::Running});

    FsmExecution exec(m);
    CHECK(exec.step(world) == Status::Running);
    CHECK(exec.current() == "s1");

    world.set("battery_ok()", false);
    CHECK(exec.step(world) == Status::Running);
    CHECK(exec.current() == "s0");
}

TEST_CASE("idle guards run before the dispatch table") {
    StateMachine m = chain_machine(2);
    m.add_idle_guard({cond("alarm"), false, "s1"});
    ScriptedWorld world;
    world.set("alarm()", true);
    world.script("skill1()", {Status::Running});

    FsmExecution exec(m);
    CHECK(exec.step(world) == Status::Running);
    CHECK(exec.current() == "s1");
    CHECK(world.sends == std::vector<std::string>{"skill1()"});
}

TEST_CASE("an idle with no matching row refuses to guess") {
    StateMachine m;
    m.add_state("a", act("a"));
    m.set_transition("a", Status::Running, "a");
    m.set_transition("a", Status::Failure, "idle");
    m.set_transition("a", Status::Success, "$success");
    m.add_dispatch({{cond("never")}, "a"});

    ScriptedWorld world;
    FsmExecution exec(m);
    CHECK_THROWS_AS(exec.step(world), NoDispatchMatchError);
}

TEST_CASE("an unmapped outcome is an error, not a silent stall") {
    StateMachine m;
    m.add_state("a", act("a"));
    m.set_transition("a", Status::Running, "a");
    m.set_transition("a", Status::Success, "$success");
    m.add_dispatch({{}, "a"});

    ScriptedWorld world;
    world.script("a()", {Status::Failure});
    FsmExecution exec(m);
    CHECK_THROWS_AS(exec.step(world), UnmappedOutcomeError);
}

TEST_CASE("halt cancels an in-flight command") {
    StateMachine m = chain_machine(1);
    ScriptedWorld world;
    world.script("skill0()", {Status::Running, Status::Running});

    FsmExecution exec(m);
    CHECK(exec.step(world) == Status::Running);
    exec.halt(world);
    CHECK(world.cancels == std::vector<std::string>{"skill0()"});

    // Halting at idle has nothing to cancel.
    FsmExecution fresh(m);
    fresh.halt(world);
    CHECK(world.cancels.size() == 1);
}

TEST_CASE("the graph view names idle's waiting loop and catch-all row") {
    StateMachine m = chain_machine(2);
    DirectedGraph g = m.to_graph();
    bool wait = false;
    bool catch_all = false;
    for (const DirectedGraph::Edge& e : g.edges()) {
        if (e.from == "idle" && e.to == "idle" && e.label == "wait") wait = true;
        if (e.from == "idle" && e.to == "s0" && e.label == "else") catch_all = true;
    }
    CHECK(wait);
    CHECK(catch_all);
    CHECK(g.nodes().front() == "idle");
}
