#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "treepin/error.hpp"
#include "treepin/graph.hpp"

using namespace treepin;
using namespace treepin::testing;

namespace {

Tree tree13() {
    return Tree(13, {Edge::of(1, 2), Edge::of(2, 3), Edge::of(2, 4), Edge::of(4, 5), Edge::of(5, 6), Edge::of(5, 7),
                     Edge::of(5, 8), Edge::of(6, 9), Edge::of(6, 10), Edge::of(6, 11), Edge::of(11, 12),
                     Edge::of(11, 13)});
}

std::set<std::uint32_t> masks(const std::vector<NodeSet>& sets) {
    std::set<std::uint32_t> out;
    for (auto s : sets) out.insert(s.mask());
    return out;
}

NodeSet set_of(std::initializer_list<Node> nodes) {
    NodeSet s;
    for (Node j : nodes) s.insert(j);
    return s;
}

}  // namespace

TEST_CASE("tree construction validates its input") {
    CHECK_NOTHROW(Tree(1, {}));
    CHECK_THROWS_AS(Tree(3, {Edge::of(1, 2)}), std::invalid_argument);
    CHECK_THROWS_AS(Tree(3, {Edge::of(1, 2), Edge::of(1, 2)}), std::invalid_argument);
    CHECK_THROWS_AS(Tree(4, {Edge::of(1, 2), Edge::of(2, 3), Edge::of(1, 3)}), std::invalid_argument);
    CHECK_THROWS(Tree(2, {Edge::of(1, 3)}));
    CHECK_THROWS(Edge::of(2, 2));
    CHECK(Edge::of(3, 1) == Edge{1, 3});
}

TEST_CASE("path between adjacent nodes is the single edge") {
    const Tree t = tree13();
    CHECK(t.path(5, 6) == std::vector<Edge>{Edge::of(5, 6)});
    CHECK(t.path(6, 5) == std::vector<Edge>{Edge::of(5, 6)});
    CHECK_THROWS_AS(t.path(7, 7), std::invalid_argument);
    CHECK_THROWS(t.path(1, 14));
}

TEST_CASE("path length matches BFS distance on the 13-node tree") {
    const Tree t = tree13();
    CHECK(t.path(2, 3).size() == static_cast<std::size_t>(bfs_distance(t, 2, 3)));
    for (Node i = 1; i <= 13; ++i)
        for (Node j = 1; j <= 13; ++j) {
            if (i == j) continue;
            const auto p = t.path(i, j);
            CHECK(p.size() == static_cast<std::size_t>(bfs_distance(t, i, j)));
            CHECK(t.distance(i, j) == bfs_distance(t, i, j));
            const auto nodes = t.path_nodes(i, j);
            REQUIRE(nodes.size() == p.size() + 1);
            CHECK(nodes.front() == i);
            CHECK(nodes.back() == j);
            for (std::size_t k = 0; k < p.size(); ++k) CHECK(p[k] == Edge::of(nodes[k], nodes[k + 1]));
        }
}

TEST_CASE("random trees: paths agree with BFS and are edges of the tree") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 2 + trial % 9;
        const Tree t = random_tree(m, rng);
        CHECK(t.edges().size() == static_cast<std::size_t>(m - 1));
        for (Node i = 1; i <= m; ++i)
            for (Node j = 1; j <= m; ++j) {
                CHECK(t.distance(i, j) == bfs_distance(t, i, j));
                if (i == j) continue;
                auto forward = t.path(i, j);
                for (const Edge& e : forward) CHECK(t.has_edge(e));
                std::reverse(forward.begin(), forward.end());
                CHECK(forward == t.path(j, i));
            }
    }
}

TEST_CASE("Steiner subtree examples") {
    const Tree path(3, {Edge::of(1, 2), Edge::of(2, 3)});
    auto all = steiner_subtree(path, NodeSet::all(3));
    CHECK(all.edges == path.edges());
    CHECK(all.nodes == std::vector<Node>{1, 2, 3});

    auto single = steiner_subtree(path, set_of({2}));
    CHECK(single.nodes == std::vector<Node>{2});
    CHECK(single.edges.empty());

    auto ends = steiner_subtree(path, set_of({1, 3}));
    CHECK(ends.nodes == std::vector<Node>{1, 2, 3});
    CHECK(ends.edges == path.edges());

    CHECK_THROWS(steiner_subtree(path, NodeSet{}));
}

TEST_CASE("Steiner subtree equals the leaf-pruning oracle") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        const int m = 2 + trial % 9;
        const Tree t = random_tree(m, rng);
        const NodeSet a = random_targets(m, rng);
        const auto sub = steiner_subtree(t, a);
        CHECK(sub.edges == leaf_pruned_subtree(t, a));
        // A tree on k nodes has k - 1 edges and every target is inside.
        CHECK(sub.edges.size() + 1 == sub.nodes.size());
        for (Node j : a.members()) CHECK(sub.has_node(j));
    }
}

TEST_CASE("constraint subsets") {
    CHECK(masks(enumerate_constraint_subsets(2, NodeSet::all(2))) == masks({set_of({1}), set_of({2})}));
    CHECK(enumerate_constraint_subsets(3, NodeSet::all(3)).size() == 6);
    CHECK(masks(enumerate_constraint_subsets(3, set_of({1, 2}))) ==
          masks({set_of({1}), set_of({2}), set_of({3}), set_of({1, 3}), set_of({2, 3})}));
    CHECK_THROWS_AS(enumerate_constraint_subsets(21, NodeSet::all(21)), CapabilityError);
}

TEST_CASE("constraint subsets match a power-set filter") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 60; ++trial) {
        const int m = 2 + trial % 7;
        const NodeSet a = random_targets(m, rng);
        std::set<std::uint32_t> expect;
        for (std::uint32_t mask = 1; mask + 1 < (1u << m); ++mask)
            if (!a.subset_of(NodeSet(mask))) expect.insert(mask);
        const auto got = enumerate_constraint_subsets(m, a);
        CHECK(got.size() == expect.size());
        CHECK(masks(got) == expect);
        // 2^m - 2^(m - |A|) - 1 subsets in total.
        CHECK(got.size() == (1u << m) - (1u << (m - a.size())) - 1);
    }
}

TEST_CASE("partition enumeration examples") {
    CHECK(enumerate_partitions(2, NodeSet::all(2)).size() == 1);
    CHECK(enumerate_partitions(3, NodeSet::all(3)).size() == 4);
    const auto restricted = enumerate_partitions(3, set_of({1, 2}));
    CHECK(restricted.size() == 2);
    for (const auto& p : restricted) {
        CHECK(p.blocks.size() == 2);
        for (auto b : p.blocks) CHECK(b.intersects(set_of({1, 2})));
    }
    CHECK_THROWS_AS(enumerate_partitions(11, NodeSet::all(11)), CapabilityError);
}

TEST_CASE("partition counts match a Bell-number style oracle") {
    // Number of partitions of 1..m into >= 2 blocks is Bell(m) - 1.
    const int bell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140};
    for (int m = 2; m <= 8; ++m)
        CHECK(enumerate_partitions(m, NodeSet::all(m)).size() == static_cast<std::size_t>(bell[m] - 1));

    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const int m = 2 + trial % 6;
        const NodeSet a = random_targets(m, rng);
        std::size_t expect = 0;
        for_each_set_partition(m, [&](const std::vector<int>& label, int k) {
            if (k < 2) return;
            std::vector<bool> meets(k, false);
            for (Node j : a.members()) meets[label[j]] = true;
            if (std::find(meets.begin(), meets.end(), false) == meets.end()) ++expect;
        });
        CHECK(enumerate_partitions(m, a).size() == expect);
    }
}

TEST_CASE("max-flow examples") {
    Multigraph two(2);
    two.add(Edge::of(1, 2), 5);
    CHECK(max_edge_disjoint_paths(two, 1, 2) == 5);

    Multigraph path(3);
    path.add(Edge::of(1, 2), 3);
    path.add(Edge::of(2, 3), 7);
    CHECK(max_edge_disjoint_paths(path, 1, 3) == 3);

    Multigraph apart(3);
    apart.add(Edge::of(1, 2), 4);
    CHECK(max_edge_disjoint_paths(apart, 1, 3) == 0);
}

TEST_CASE("max-flow equals the brute-force minimum cut") {
    std::mt19937_64 rng(37);
    std::uniform_int_distribution<int> mult(0, 6);
    for (int trial = 0; trial < 150; ++trial) {
        const int m = 2 + trial % 7;
        Multigraph g(m);
        for (Node i = 1; i <= m; ++i)
            for (Node j = i + 1; j <= m; ++j)
                if (rng() % 2) g.add(Edge::of(i, j), mult(rng));
        std::uniform_int_distribution<int> node(1, m);
        Node s = node(rng), t = node(rng);
        if (s == t) t = s % m + 1;
        CHECK(max_edge_disjoint_paths(g, s, t) == brute_min_cut(g, s, t));
    }
}

TEST_CASE("Nash-Williams examples") {
    Multigraph two(2);
    two.add(Edge::of(1, 2), 4);
    CHECK(nash_williams_value(two) == 4);

    Multigraph path(3);
    path.add(Edge::of(1, 2), 6);
    path.add(Edge::of(2, 3), 6);
    CHECK(nash_williams_value(path) == 6);

    Multigraph triangle(3);
    triangle.add(Edge::of(1, 2), 1);
    triangle.add(Edge::of(2, 3), 1);
    triangle.add(Edge::of(1, 3), 1);
    CHECK(nash_williams_value(triangle) == 1);
}

TEST_CASE("Nash-Williams value matches direct partition enumeration") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> mult(0, 5);
    for (int trial = 0; trial < 80; ++trial) {
        const int m = 2 + trial % 6;
        Multigraph g(m);
        for (Node i = 1; i <= m; ++i)
            for (Node j = i + 1; j <= m; ++j) g.add(Edge::of(i, j), mult(rng));
        CHECK(nash_williams_value(g) == brute_nash_williams(g));
    }
}
