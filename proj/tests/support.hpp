#pragma once

// Random instance generators and brute-force oracles shared by the test
// binaries. Oracles here avoid the library's own algorithms on purpose.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <vector>

#include "treepin/graph.hpp"
#include "treepin/network.hpp"

namespace treepin::testing {

/// Random labelled tree: node k attaches to a uniform earlier node, then the
/// labels are shuffled so that node 1 is not always the hub.
inline Tree random_tree(int m, std::mt19937_64& rng) {
    std::vector<Node> label(m);
    for (int k = 0; k < m; ++k) label[k] = k + 1;
    std::shuffle(label.begin(), label.end(), rng);
    std::vector<Edge> edges;
    for (int k = 1; k < m; ++k) {
        std::uniform_int_distribution<int> pick(0, k - 1);
        edges.push_back(Edge::of(label[k], label[pick(rng)]));
    }
    return Tree(m, edges);
}

/// Uniform random target set with at least two members.
inline NodeSet random_targets(int m, std::mt19937_64& rng) {
    for (;;) {
        std::uniform_int_distribution<std::uint32_t> pick(0, (1u << m) - 1);
        NodeSet a(pick(rng));
        if (a.size() >= 2) return a;
    }
}

/// Weights uniform in (0, 2].
inline std::map<Edge, double> random_weights(const Tree& tree, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 2.0);
    std::map<Edge, double> w;
    for (const Edge& e : tree.edges()) {
        double x = 0.0;
        while (x == 0.0) x = 2.0 - u(rng);
        w[e] = x;
    }
    return w;
}

inline std::map<Edge, double> random_integer_weights(const Tree& tree, std::mt19937_64& rng, int max_weight) {
    std::uniform_int_distribution<int> u(1, max_weight);
    std::map<Edge, double> w;
    for (const Edge& e : tree.edges()) w[e] = u(rng);
    return w;
}

/// Adjacency-list BFS distance.
inline int bfs_distance(const Tree& tree, Node s, Node t) {
    std::vector<int> dist(tree.node_count() + 1, -1);
    std::queue<Node> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
        Node x = q.front();
        q.pop();
        for (const Edge& e : tree.edges()) {
            if (!e.has(x)) continue;
            Node y = e.other(x);
            if (dist[y] < 0) {
                dist[y] = dist[x] + 1;
                q.push(y);
            }
        }
    }
    return dist[t];
}

/// T(A) by repeatedly deleting leaves outside A.
inline std::vector<Edge> leaf_pruned_subtree(const Tree& tree, NodeSet targets) {
    std::vector<Edge> edges = tree.edges();
    for (bool changed = true; changed;) {
        changed = false;
        for (Node j = 1; j <= tree.node_count(); ++j) {
            if (targets.contains(j)) continue;
            int deg = 0;
            for (const Edge& e : edges) deg += e.has(j) ? 1 : 0;
            if (deg == 1) {
                std::erase_if(edges, [j](const Edge& e) { return e.has(j); });
                changed = true;
            }
        }
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

/// Minimum s-t cut by enumerating every vertex bipartition.
inline long long brute_min_cut(const Multigraph& g, Node s, Node t) {
    const int m = g.node_count();
    long long best = -1;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        NodeSet side(mask);
        if (!side.contains(s) || side.contains(t)) continue;
        long long cut = 0;
        for (const auto& [e, c] : g.edges())
            if (side.contains(e.u) != side.contains(e.v)) cut += c;
        if (best < 0 || cut < best) best = cut;
    }
    return best;
}

/// Calls visit(block_label) for every set partition of 1..m, block_label[j]
/// in 0..k-1 (index 0 unused). Plain recursion, independent of the library.
inline void for_each_set_partition(int m, const std::function<void(const std::vector<int>&, int)>& visit) {
    std::vector<int> label(m + 1, 0);
    std::function<void(int, int)> rec = [&](int j, int blocks) {
        if (j > m) {
            visit(label, blocks);
            return;
        }
        for (int b = 0; b <= blocks; ++b) {
            label[j] = b;
            rec(j + 1, std::max(blocks, b + 1));
        }
    };
    rec(1, 0);
}

/// Nash-Williams/Tutte value by direct partition enumeration.
inline long long brute_nash_williams(const Multigraph& g) {
    long long best = -1;
    for_each_set_partition(g.node_count(), [&](const std::vector<int>& label, int k) {
        if (k < 2) return;
        long long crossing = 0;
        for (const auto& [e, c] : g.edges())
            if (label[e.u] != label[e.v]) crossing += c;
        const long long v = crossing / (k - 1);
        if (best < 0 || v < best) best = v;
    });
    return best;
}

/// Partition bound with partitions filtered by hand.
inline double brute_partition_bound(const Network& net) {
    const NodeSet a = net.targets();
    double best = INFINITY;
    for_each_set_partition(net.node_count(), [&](const std::vector<int>& label, int k) {
        if (k < 2) return;
        std::vector<bool> meets(k, false);
        for (Node j = 1; j <= net.node_count(); ++j)
            if (a.contains(j)) meets[label[j]] = true;
        if (std::find(meets.begin(), meets.end(), false) != meets.end()) return;
        double crossing = 0.0;
        for (const auto& [e, model] : net.edges())
            if (label[e.u] != label[e.v]) crossing += model.entropy;
        best = std::min(best, crossing / (k - 1));
    });
    return best;
}

/// Minimum entropy over edges of the leaf-pruned subtree.
inline double brute_wsk(const Network& net) {
    double best = INFINITY;
    for (const Edge& e : leaf_pruned_subtree(net.tree(), net.targets())) best = std::min(best, net.edge_entropy(e));
    return best;
}

}  // namespace treepin::testing
