#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "polcomp/dsl.hpp"
#include "polcomp/metrics.hpp"
#include "polcomp/synthesis.hpp"

using namespace polcomp;

namespace {

std::string fixture(const std::string& name) {
    return std::string(POLCOMP_TEST_FIXTURES) + "/" + name;
}

const Document& fetch_doc() {
    static Document doc = load_document(fixture("fetch_task.pol"));
    return doc;
}

Condition cond(const std::string& name, std::vector<Arg> args = {}) {
    return Condition{name, std::move(args)};
}

// Two flag conditions whose achievers depend on each other.
Library cyclic_library() {
    Library lib;
    lib.add_condition({"warmed_up", {}, {}});
    lib.add_condition({"calibrated", {}, {}});
    SkillDecl warm;
    warm.name = "warm_up";
    warm.pre = {cond("calibrated")};
    warm.post = {cond("warmed_up")};
    lib.add_skill(warm);
    SkillDecl calibrate;
    calibrate.name = "calibrate";
    calibrate.pre = {cond("warmed_up")};
    calibrate.post = {cond("calibrated")};
    lib.add_skill(calibrate);
    return lib;
}

}  // namespace

TEST_CASE("the fetch task grows the expected tree") {
    const Document& doc = fetch_doc();
    PolicyTree tree = backchain(doc.library, doc.goal_conditions());
    tree.validate();

    DirectedGraph g = tree.to_graph();
    CHECK(g.node_count() == 14);
    CHECK(g.edge_count() == 13);

    // The root asks for the goal first and works only if it is missing.
    const TreeNode& root = tree.node(tree.root());
    CHECK(root.type == NodeType::Fallback);
    REQUIRE(root.children.size() == 2);
    const TreeNode& observed = tree.node(root.children.front());
    CHECK(observed.type == NodeType::Condition);
    CHECK(observed.condition.text() == "object_at(cube, delivery)");

    CHECK(tree.find_action(Skill{"pick", {Arg::symbol("cube")}}) != -1);
    CHECK(tree.find_condition(cond("in_hand", {Arg::symbol("cube")})) != -1);
}

TEST_CASE("achievers without preconditions skip the sequence wrapper") {
    const Document& doc = fetch_doc();
    PolicyTree tree = backchain(doc.library, doc.goal_conditions());

    NodeId drive = tree.find_action(Skill{"move_to", {Arg::pose_of("cube")}});
    REQUIRE(drive != -1);
    const TreeNode& parent = tree.node(tree.node(drive).parent);
    CHECK(parent.type == NodeType::Fallback);
    REQUIRE(parent.children.size() == 2);
    CHECK(tree.node(parent.children.front()).condition.text() ==
          "robot_at(@cube)");
    CHECK(parent.children.back() == drive);
}

TEST_CASE("achievers with preconditions expand them ahead of the work") {
    const Document& doc = fetch_doc();
    PolicyTree tree = backchain(doc.library, doc.goal_conditions());

    NodeId pick = tree.find_action(Skill{"pick", {Arg::symbol("cube")}});
    REQUIRE(pick != -1);
    const TreeNode& seq = tree.node(tree.node(pick).parent);
    CHECK(seq.type == NodeType::Sequence);
    // Preconditions come first, the action itself is last.
    CHECK(seq.children.back() == pick);
    const TreeNode& pre = tree.node(seq.children.front());
    CHECK(pre.type == NodeType::Fallback);
}

TEST_CASE("multiple goals share a sequence root") {
    const Document& doc = fetch_doc();
    std::vector<Condition> goals = doc.goal_conditions();
    goals.push_back(cond("docked"));

    PolicyTree tree = backchain(doc.library, goals);
    tree.validate();
    const TreeNode& root = tree.node(tree.root());
    CHECK(root.type == NodeType::Sequence);
    REQUIRE(root.children.size() == 2);
    CHECK(tree.node(root.children[0]).type == NodeType::Fallback);
    CHECK(tree.node(root.children[1]).type == NodeType::Fallback);
    CHECK(tree.find_action(Skill{"dock", {}}) != -1);
}

TEST_CASE("expand_condition hands back a detached fragment") {
    const Document& doc = fetch_doc();
    PolicyTree tree;
    NodeId fragment = expand_condition(tree, doc.library, cond("docked"));
    CHECK(tree.node(fragment).parent == -1);
    CHECK(tree.node(fragment).type == NodeType::Fallback);

    NodeId root = tree.add_sequence();
    tree.attach(root, fragment);
    tree.set_root(root);
    tree.validate();
}

TEST_CASE("linearize lays the milestones out in execution order") {
    const Document& doc = fetch_doc();
    std::vector<Milestone> plan = linearize(doc.library, doc.goal_conditions());
    REQUIRE(plan.size() == 4);
    CHECK(plan[0].skill.text() == "move_to(@cube)");
    CHECK(plan[0].achieves.text() == "robot_at(@cube)");
    CHECK(plan[1].skill.text() == "pick(cube)");
    CHECK(plan[2].skill.text() == "move_to(delivery)");
    CHECK(plan[3].skill.text() == "place(cube, delivery)");
    CHECK(plan[3].achieves.text() == "object_at(cube, delivery)");
}

TEST_CASE("the fault-tolerant machine resumes at the furthest milestone") {
    const Document& doc = fetch_doc();
    StateMachine m = assemble_fault_tolerant_fsm(doc.library, doc.goal_conditions());
    m.validate();

    REQUIRE(m.states().size() == 4);
    CHECK(m.states().front().id == "move_to(@cube)");
    CHECK(m.states().back().id == "place(cube, delivery)");

    DirectedGraph g = m.to_graph();
    CHECK(g.node_count() == 6);
    CHECK(g.edge_count() == 18);
    CHECK(metrics::cyclomatic_complexity(g) == 14);

    // One row per milestone plus the finished row, most progress first.
    REQUIRE(m.dispatch().size() == 5);
    CHECK(m.dispatch().front().target == "$success");
    CHECK(m.dispatch().front().require ==
          std::vector<Condition>{cond("object_at", {Arg::symbol("cube"),
                                                    Arg::symbol("delivery")})});
    CHECK(m.dispatch()[1].target == "place(cube, delivery)");
    CHECK(m.dispatch().back().require.empty());
    CHECK(m.dispatch().back().target == "move_to(@cube)");

    // Every state holds while Running and retreats to idle on Failure.
    for (const MachineState& s : m.states()) {
        CHECK(s.on.at(Status::Running) == s.id);
        CHECK(s.on.at(Status::Failure) == "idle");
    }
}

TEST_CASE("repeated skills get ordinal state ids") {
    // Collecting five objects drives to the same drop-off five times.
    Document doc = load_document(fixture("fetch_5cubes.pol"));
    StateMachine m = assemble_fault_tolerant_fsm(doc.library, doc.goal_conditions());
    m.validate();
    CHECK(m.has_state("move_to(delivery)"));
    CHECK(m.has_state("move_to(delivery).2"));
}

TEST_CASE("the brittle chain fails outright instead of retreating") {
    const Document& doc = fetch_doc();
    StateMachine m = assemble_sequential_fsm(doc.library, doc.goal_conditions());

    DirectedGraph g = m.to_graph();
    CHECK(g.has_node("$failure"));
    for (const MachineState& s : m.states()) {
        CHECK(s.on.at(Status::Failure) == "$failure");
    }
    // Which is exactly what the fault-tolerance check rejects.
    CHECK_THROWS_AS(m.validate(), NotFaultTolerantError);
}

TEST_CASE("a goal nothing can achieve is refused") {
    Document doc = load_document(fixture("invalid/unknown_goal.pol"));
    CHECK_THROWS_AS(backchain(doc.library, doc.goal_conditions()),
                    UnachievableConditionError);
    CHECK_THROWS_AS(linearize(doc.library, doc.goal_conditions()),
                    UnachievableConditionError);
}

TEST_CASE("two achievers for the same condition are ambiguous") {
    Library lib;
    lib.add_condition({"lit", {}, {}});
    SkillDecl lamp;
    lamp.name = "lamp_on";
    lamp.post = {cond("lit")};
    lib.add_skill(lamp);
    SkillDecl torch;
    torch.name = "torch_on";
    torch.post = {cond("lit")};
    lib.add_skill(torch);

    CHECK_THROWS_AS(resolve_achiever(lib, cond("lit")), AmbiguousAchieverError);
    CHECK_THROWS_AS(backchain(lib, {cond("lit")}), AmbiguousAchieverError);
}

TEST_CASE("mutually dependent preconditions are reported as a cycle") {
    Library lib = cyclic_library();
    CHECK_THROWS_AS(backchain(lib, {cond("warmed_up")}), CyclicDependencyError);
    CHECK_THROWS_AS(linearize(lib, {cond("warmed_up")}), CyclicDependencyError);
}

TEST_CASE("goal lists that unmake themselves are rejected") {
    const Library& lib = fetch_doc().library;
    Condition hold_a = cond("in_hand", {Arg::symbol("cube")});
    Condition hold_b = cond("in_hand", {Arg::symbol("other")});
    Condition placed = cond("object_at", {Arg::symbol("cube"),
                                          Arg::symbol("delivery")});

    CHECK_THROWS_AS(check_goal_ordering(lib, {hold_a, hold_b}),
                    OrderingConflictError);
    CHECK_THROWS_AS(check_goal_ordering(lib, {hold_a, placed}),
                    OrderingConflictError);
    CHECK_THROWS_AS(check_goal_ordering(lib, {placed, hold_a}),
                    OrderingConflictError);
    // Same object held twice is merely redundant, not contradictory.
    check_goal_ordering(lib, {hold_a, hold_a});
    check_goal_ordering(lib, {placed, cond("docked")});
}
