#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "generators.hpp"
#include "polcomp/graph.hpp"
#include "polcomp/metrics.hpp"

using namespace polcomp;
using namespace polcomp::metrics;

namespace {

DirectedGraph chain(std::initializer_list<const char*> ids) {
    DirectedGraph g;
    const char* prev = nullptr;
    for (const char* id : ids) {
        g.add_node(id);
        if (prev) g.add_edge(prev, id);
        prev = id;
    }
    return g;
}

}  // namespace

TEST_CASE("cyclomatic complexity counts arcs, sinks and nodes") {
    DirectedGraph single;
    single.add_node("a");
    CHECK(cyclomatic_complexity(single) == 1);

    CHECK(cyclomatic_complexity(chain({"a", "b", "c"})) == 1);

    DirectedGraph diamond;
    for (const char* id : {"a", "b", "c", "d"}) diamond.add_node(id);
    diamond.add_edge("a", "b");
    diamond.add_edge("a", "c");
    diamond.add_edge("b", "d");
    diamond.add_edge("c", "d");
    CHECK(cyclomatic_complexity(diamond) == 2);

    // A self-loop is an outgoing arc, so the node is not a sink.
    DirectedGraph loop;
    loop.add_node("a");
    loop.add_edge("a", "a");
    CHECK(cyclomatic_complexity(loop) == 1);

    DirectedGraph split = chain({"a", "b"});
    split.add_node("c");
    CHECK(cyclomatic_complexity(split) == 1);
}

TEST_CASE("cyclomatic complexity rejects the empty graph") {
    CHECK_THROWS_AS(cyclomatic_complexity(DirectedGraph{}), EmptyGraphError);
}

TEST_CASE("structural lower bound is the size difference") {
    DirectedGraph a = chain({"a", "b", "c"});
    DirectedGraph b = chain({"x", "y"});
    CHECK(structural_lower_bound(a, b) == doctest::Approx(2.0));
    CHECK(structural_lower_bound(b, a) == doctest::Approx(2.0));
    CHECK(structural_lower_bound(a, a) == doctest::Approx(0.0));
}

TEST_CASE("identical graphs are distance zero") {
    DirectedGraph g = chain({"a", "b", "c"});
    GedResult r = ged(g, g);
    CHECK(r.distance == doctest::Approx(0.0));
    CHECK(r.exact);
    CHECK(apply_edit_path(g, r.edit_path).node_count() == 3);
}

TEST_CASE("empty graphs are distance zero") {
    GedResult r = ged(DirectedGraph{}, DirectedGraph{});
    CHECK(r.distance == doctest::Approx(0.0));
    CHECK(r.exact);
}

TEST_CASE("a renamed node costs nothing under label-blind matching") {
    DirectedGraph a;
    a.add_node("a");
    DirectedGraph b;
    b.add_node("b");
    GedResult r = ged(a, b);
    CHECK(r.distance == doctest::Approx(0.0));
    CHECK(r.exact);
    CHECK_FALSE(same_structure(a, b));
    CHECK(same_structure(apply_edit_path(a, r.edit_path), b));
}

TEST_CASE("closing a cycle is one edge insertion") {
    DirectedGraph path = chain({"a", "b", "c"});
    DirectedGraph cycle = chain({"a", "b", "c"});
    cycle.add_edge("c", "a");
    GedResult r = ged(path, cycle);
    CHECK(r.distance == doctest::Approx(1.0));
    CHECK(r.exact);
    CHECK(same_structure(apply_edit_path(path, r.edit_path), cycle));
}

TEST_CASE("disjoint ids still map structurally") {
    DirectedGraph a = chain({"x", "y"});
    DirectedGraph b;
    b.add_node("p");
    b.add_node("q");
    b.add_edge("p", "q");
    b.add_edge("q", "p");
    GedResult r = ged(a, b);
    CHECK(r.distance == doctest::Approx(1.0));
    CHECK(r.exact);
    CHECK(same_structure(apply_edit_path(a, r.edit_path), b));
}

TEST_CASE("label-sensitive matching charges for differing labels") {
    DirectedGraph a;
    a.add_node("n", "red");
    DirectedGraph b;
    b.add_node("n", "blue");

    GedOptions blind;
    CHECK(ged(a, b, blind).distance == doctest::Approx(0.0));

    GedOptions sensitive;
    sensitive.costs.label_sensitive = true;
    GedResult r = ged(a, b, sensitive);
    CHECK(r.distance == doctest::Approx(1.0));
    CHECK(r.exact);

    DirectedGraph ea = chain({"a", "b"});
    DirectedGraph eb;
    eb.add_node("a");
    eb.add_node("b");
    eb.add_edge("a", "b", "other");
    CHECK(ged(ea, eb, blind).distance == doctest::Approx(0.0));
    CHECK(ged(ea, eb, sensitive).distance == doctest::Approx(1.0));
}

TEST_CASE("an exhausted budget reports an upper bound") {
    DirectedGraph a = chain({"a", "b", "c", "d", "e"});
    DirectedGraph b;
    for (const char* id : {"p", "q", "r", "s", "t"}) b.add_node(id);
    b.add_edge("p", "q");
    b.add_edge("p", "r");
    b.add_edge("p", "s");
    b.add_edge("p", "t");

    GedOptions tight;
    tight.expansion_budget = 1;
    GedResult bounded = ged(a, b, tight);
    CHECK_FALSE(bounded.exact);

    GedResult free_search = ged(a, b);
    CHECK(free_search.exact);
    CHECK(bounded.distance >= free_search.distance);
    CHECK(free_search.distance >= structural_lower_bound(a, b));
    CHECK(free_search.distance == doctest::Approx(ged_bruteforce(a, b)));
}

TEST_CASE("brute force refuses graphs beyond six nodes") {
    DirectedGraph big;
    for (int i = 0; i < 7; ++i) big.add_node("n" + std::to_string(i));
    CHECK_THROWS_AS(ged_bruteforce(big, big), TooLargeError);
}

TEST_CASE("search agrees with brute force on random graph pairs") {
    std::mt19937 rng(7001);
    for (int i = 0; i < 120; ++i) {
        DirectedGraph a = polcomp::testing::random_graph(rng, 5);
        DirectedGraph b = polcomp::testing::random_graph(rng, 5);
        GedResult forward = ged(a, b);
        REQUIRE(forward.exact);
        double reference = ged_bruteforce(a, b);
        CHECK(forward.distance == doctest::Approx(reference));
        CHECK(same_structure(apply_edit_path(a, forward.edit_path), b));

        GedResult backward = ged(b, a);
        REQUIRE(backward.exact);
        CHECK(backward.distance == doctest::Approx(forward.distance));
    }
}

TEST_CASE("distance behaves like a metric on random graphs") {
    std::mt19937 rng(7002);
    for (int i = 0; i < 40; ++i) {
        DirectedGraph a = polcomp::testing::random_graph(rng, 5);
        DirectedGraph b = polcomp::testing::random_graph(rng, 5);
        DirectedGraph c = polcomp::testing::random_graph(rng, 5);
        CHECK(ged(a, a).distance == doctest::Approx(0.0));
        double ab = ged(a, b).distance;
        double bc = ged(b, c).distance;
        double ac = ged(a, c).distance;
        CHECK(ac <= ab + bc + 1e-9);
        CHECK(ab >= structural_lower_bound(a, b) - 1e-9);
    }
}
