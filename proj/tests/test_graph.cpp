#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <sstream>

#include "cuckoo/graph.hpp"

using cuckoo::build_graph;
using cuckoo::components;
using cuckoo::count_cyclic_components;
using cuckoo::CuckooGraph;
using cuckoo::cyclomatic_number;
using cuckoo::excess;
using cuckoo::HashPairSource;
using cuckoo::is_leafless;
using cuckoo::two_core;

using Edge = CuckooGraph::Edge;

namespace {

CuckooGraph path3() {
    // L0-R0, R0-L1, L1-R1: a path with 4 nodes and 3 edges
    return CuckooGraph(4, {{0, 0, 0}, {1, 0, 1}, {1, 1, 2}});
}

CuckooGraph four_cycle(std::uint64_t base, std::uint64_t id0) {
    return CuckooGraph(8, {{base, base, id0},
                           {base + 1, base, id0 + 1},
                           {base + 1, base + 1, id0 + 2},
                           {base, base + 1, id0 + 3}});
}

}  // namespace

TEST_CASE("build_graph places one edge per key") {
    const HashPairSource src = HashPairSource::make_random(10, 42);

    const CuckooGraph empty = build_graph(std::vector<std::uint64_t>{}, src);
    CHECK(empty.edge_count() == 0);
    CHECK(components(empty).zeta == 0);

    const std::vector<std::uint64_t> one{12345};
    const CuckooGraph g1 = build_graph(one, src);
    REQUIRE(g1.edge_count() == 1);
    CHECK(g1.edges()[0].left == src(12345).h1);
    CHECK(g1.edges()[0].right == src(12345).h2);
    CHECK(g1.edges()[0].key == 12345);

    CHECK_THROWS_AS(build_graph(std::vector<std::uint64_t>{7, 7}, src),
                    std::invalid_argument);
}

TEST_CASE("keys colliding on both hashes become parallel edges") {
    // force both keys onto the same cells by using a size-1 range
    const HashPairSource src = HashPairSource::make_random(1, 1);
    const CuckooGraph g = build_graph(std::vector<std::uint64_t>{1, 2}, src);
    REQUIRE(g.edge_count() == 2);
    CHECK(g.edges()[0].left == g.edges()[1].left);
    CHECK(g.edges()[0].right == g.edges()[1].right);
    CHECK(cyclomatic_number(g) == 1);  // the 2-cycle
}

TEST_CASE("component counting ignores isolated nodes") {
    CHECK(components(CuckooGraph(100)).zeta == 0);

    const CuckooGraph two(10, {{0, 0, 0}, {5, 5, 1}});
    CHECK(components(two).zeta == 2);

    const auto summary = components(path3());
    CHECK(summary.zeta == 1);
    REQUIRE(summary.components.size() == 1);
    CHECK(summary.components[0].nodes == 4);
    CHECK(summary.components[0].edges == 3);
}

TEST_CASE("cyclomatic number on canonical shapes") {
    CHECK(cyclomatic_number(path3()) == 0);

    const CuckooGraph parallel2(4, {{0, 0, 0}, {0, 0, 1}});
    CHECK(cyclomatic_number(parallel2) == 1);  // 2 - 2 + 1

    const CuckooGraph a = four_cycle(0, 0), b = four_cycle(4, 10);
    std::vector<Edge> edges;
    for (const auto& e : a.edges()) edges.push_back(e);
    for (const auto& e : b.edges()) edges.push_back(e);
    const CuckooGraph cycles(8, edges);
    CHECK(cyclomatic_number(cycles) == 2);  // 8 - 8 + 2
    CHECK(count_cyclic_components(cycles) == 2);
    CHECK(excess(cycles) == 0);
}

TEST_CASE("cyclic component counting") {
    CHECK(count_cyclic_components(path3()) == 0);

    const CuckooGraph cyc = four_cycle(0, 0);
    std::vector<Edge> edges = cyc.edges();
    edges.push_back({5, 5, 99});  // disjoint single edge
    CHECK(count_cyclic_components(CuckooGraph(8, edges)) == 1);

    const CuckooGraph three_pairs(6, {{0, 0, 0}, {0, 0, 1}, {1, 1, 2},
                                      {1, 1, 3}, {2, 2, 4}, {2, 2, 5}});
    CHECK(count_cyclic_components(three_pairs) == 3);
}

TEST_CASE("excess on canonical shapes") {
    CHECK(excess(path3()) == 0);
    CHECK(excess(four_cycle(0, 0)) == 0);  // unicyclic

    const CuckooGraph parallel3(4, {{0, 0, 0}, {0, 0, 1}, {0, 0, 2}});
    CHECK(cyclomatic_number(parallel3) == 2);
    CHECK(excess(parallel3) == 1);
}

TEST_CASE("two_core peels down to the maximum leafless subgraph") {
    CHECK(two_core(path3()).edge_count() == 0);

    const CuckooGraph cyc = four_cycle(0, 0);
    const CuckooGraph core = two_core(cyc);
    CHECK(core.edge_count() == 4);

    // lollipop: 4-cycle plus a pendant path of two edges hanging off L0
    std::vector<Edge> edges;
    for (const auto& e : cyc.edges()) edges.push_back(e);
    edges.push_back({0, 2, 50});  // L0-R2
    edges.push_back({2, 2, 51});  // L2-R2
    const CuckooGraph lollipop(8, edges);
    const CuckooGraph peeled = two_core(lollipop);
    std::set<std::uint64_t> kept;
    for (const auto& e : peeled.edges()) kept.insert(e.key);
    CHECK(kept == std::set<std::uint64_t>{0, 1, 2, 3});
}

TEST_CASE("leafless predicate") {
    CHECK_FALSE(is_leafless(path3()));
    CHECK(is_leafless(four_cycle(0, 0)));
    CHECK(is_leafless(CuckooGraph(5)));  // no nodes at all
}

TEST_CASE("graph validation") {
    CHECK_THROWS_AS(CuckooGraph(3, {{3, 0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(CuckooGraph(3, {{0, 0, 0}, {1, 1, 0}}), std::invalid_argument);
}

TEST_CASE("edge-list dump format") {
    const CuckooGraph g(7, {{3, 5, 11}, {0, 6, 22}});
    std::ostringstream os;
    g.dump(os);
    CHECK(os.str() == "m 7\n3 5 11\n0 6 22\n");
}
