#include "treepin/graph.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

#include "treepin/error.hpp"

namespace treepin {

Edge Edge::of(Node a, Node b) {
    if (a == b) throw std::invalid_argument("self-loop on node " + std::to_string(a));
    return a < b ? Edge{a, b} : Edge{b, a};
}

Node Edge::other(Node x) const {
    if (x == u) return v;
    if (x == v) return u;
    throw std::invalid_argument("node " + std::to_string(x) + " is not an endpoint");
}

NodeSet NodeSet::of(std::span<const Node> nodes) {
    NodeSet s;
    for (Node j : nodes) s.insert(j);
    return s;
}

NodeSet NodeSet::all(int m) {
    if (m < 0 || m > 32) throw std::invalid_argument("node set size out of range");
    return NodeSet(m == 32 ? ~0u : ((1u << m) - 1u));
}

void NodeSet::insert(Node j) {
    if (j < 1 || j > 32) throw std::invalid_argument("node label out of range: " + std::to_string(j));
    mask_ |= 1u << (j - 1);
}

int NodeSet::size() const { return std::popcount(mask_); }

std::vector<Node> NodeSet::members() const {
    std::vector<Node> out;
    for (Node j = 1; j <= 32; ++j)
        if (contains(j)) out.push_back(j);
    return out;
}

// ---------------------------------------------------------------------------

Tree::Tree(int node_count, std::vector<Edge> edges)
    : node_count_(node_count), edges_(std::move(edges)), adjacency_(node_count + 1) {
    if (node_count < 1 || node_count > 32)
        throw std::invalid_argument("tree must have between 1 and 32 nodes");
    if (static_cast<int>(edges_.size()) != node_count - 1)
        throw std::invalid_argument("a tree on " + std::to_string(node_count) + " nodes needs " +
                                    std::to_string(node_count - 1) + " edges, got " +
                                    std::to_string(edges_.size()));
    for (auto& e : edges_) {
        e = Edge::of(e.u, e.v);
        check_node(e.u);
        check_node(e.v);
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw std::invalid_argument("duplicate edge");
    for (const auto& e : edges_) {
        adjacency_[e.u].push_back(e.v);
        adjacency_[e.v].push_back(e.u);
    }
    for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());

    // m-1 edges plus connectivity implies acyclic.
    auto parent = parents_from(1);
    for (Node j = 1; j <= node_count_; ++j)
        if (parent[j] == 0) throw std::invalid_argument("edges do not connect node " + std::to_string(j));
}

void Tree::check_node(Node j) const {
    if (j < 1 || j > node_count_) throw std::out_of_range("unknown node " + std::to_string(j));
}

std::span<const Node> Tree::neighbors(Node j) const {
    check_node(j);
    return adjacency_[j];
}

bool Tree::has_edge(Edge e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

std::size_t Tree::edge_index(Edge e) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e)
        throw std::out_of_range("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") not in tree");
    return static_cast<std::size_t>(it - edges_.begin());
}

// parent[root] = root; unreachable nodes keep 0.
std::vector<Node> Tree::parents_from(Node root) const {
    std::vector<Node> parent(node_count_ + 1, 0);
    std::queue<Node> q;
    parent[root] = root;
    q.push(root);
    while (!q.empty()) {
        Node x = q.front();
        q.pop();
        for (Node y : adjacency_[x]) {
            if (parent[y] != 0) continue;
            parent[y] = x;
            q.push(y);
        }
    }
    return parent;
}

std::vector<Node> Tree::path_nodes(Node i, Node j) const {
    check_node(i);
    check_node(j);
    auto parent = parents_from(j);
    std::vector<Node> out{i};
    for (Node x = i; x != j; x = parent[x]) out.push_back(parent[x]);
    return out;
}

std::vector<Edge> Tree::path(Node i, Node j) const {
    if (i == j) throw std::invalid_argument("path endpoints must differ");
    auto nodes = path_nodes(i, j);
    std::vector<Edge> out;
    out.reserve(nodes.size() - 1);
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) out.push_back(Edge::of(nodes[k], nodes[k + 1]));
    return out;
}

int Tree::distance(Node i, Node j) const { return static_cast<int>(path_nodes(i, j).size()) - 1; }

// ---------------------------------------------------------------------------

bool SteinerSubtree::has_node(Node j) const { return std::binary_search(nodes.begin(), nodes.end(), j); }

bool SteinerSubtree::has_edge(Edge e) const { return std::binary_search(edges.begin(), edges.end(), e); }

SteinerSubtree steiner_subtree(const Tree& tree, NodeSet targets) {
    if (targets.empty()) throw std::invalid_argument("target set must be nonempty");
    auto members = targets.members();
    if (members.back() > tree.node_count()) throw std::out_of_range("target node outside the tree");

    // Union of the paths from one target to every other target.
    NodeSet nodes;
    nodes.insert(members.front());
    std::vector<Edge> edges;
    for (std::size_t k = 1; k < members.size(); ++k) {
        for (Node x : tree.path_nodes(members.front(), members[k])) nodes.insert(x);
        for (const Edge& e : tree.path(members.front(), members[k])) edges.push_back(e);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return SteinerSubtree{nodes.members(), std::move(edges)};
}

// ---------------------------------------------------------------------------

Multigraph::Multigraph(int node_count) : node_count_(node_count) {
    if (node_count < 1 || node_count > 32) throw std::invalid_argument("multigraph node count out of range");
}

void Multigraph::add(Edge e, long long count) {
    if (count < 0) throw std::invalid_argument("negative multiplicity");
    if (e.u < 1 || e.v > node_count_) throw std::out_of_range("multigraph edge endpoint out of range");
    edges_[e] += count;
}

long long Multigraph::multiplicity(Edge e) const {
    auto it = edges_.find(e);
    return it == edges_.end() ? 0 : it->second;
}

long long Multigraph::degree(Node j) const {
    long long d = 0;
    for (const auto& [e, c] : edges_)
        if (e.has(j)) d += c;
    return d;
}

int Partition::block_of(Node j) const {
    for (std::size_t b = 0; b < blocks.size(); ++b)
        if (blocks[b].contains(j)) return static_cast<int>(b);
    return -1;
}

// ---------------------------------------------------------------------------

std::vector<NodeSet> enumerate_constraint_subsets(int m, NodeSet targets) {
    if (m < 1) throw std::invalid_argument("node count must be positive");
    if (m > kMaxSubsetNodes)
        throw CapabilityError("subset enumeration supports at most " + std::to_string(kMaxSubsetNodes) +
                              " nodes, got " + std::to_string(m));
    const std::uint32_t full = NodeSet::all(m).mask();
    std::vector<NodeSet> out;
    for (std::uint32_t mask = 1; mask < full; ++mask) {
        NodeSet b(mask);
        if (!targets.subset_of(b)) out.push_back(b);
    }
    return out;
}

namespace {

void grow_partitions(int m, int next, std::vector<int>& label, int used, NodeSet targets, int min_blocks,
                     std::vector<Partition>& out) {
    if (next > m) {
        if (used < min_blocks) return;
        Partition p;
        p.blocks.resize(used);
        for (Node j = 1; j <= m; ++j) p.blocks[label[j]].insert(j);
        for (const auto& b : p.blocks)
            if (!b.intersects(targets)) return;
        out.push_back(std::move(p));
        return;
    }
    for (int b = 0; b <= used; ++b) {
        label[next] = b;
        grow_partitions(m, next + 1, label, std::max(used, b + 1), targets, min_blocks, out);
    }
}

}  // namespace

std::vector<Partition> enumerate_partitions(int m, NodeSet targets, int min_blocks) {
    if (m < 1) throw std::invalid_argument("node count must be positive");
    if (m > kMaxPartitionNodes)
        throw CapabilityError("partition enumeration supports at most " + std::to_string(kMaxPartitionNodes) +
                              " nodes, got " + std::to_string(m));
    std::vector<Partition> out;
    std::vector<int> label(m + 1, 0);
    grow_partitions(m, 1, label, 0, targets, min_blocks, out);
    return out;
}

long long max_edge_disjoint_paths(const Multigraph& graph, Node s, Node t) {
    const int m = graph.node_count();
    if (s == t) throw std::invalid_argument("source and sink must differ");
    if (s < 1 || s > m || t < 1 || t > m) throw std::out_of_range("flow endpoint out of range");

    std::vector<std::vector<long long>> residual(m + 1, std::vector<long long>(m + 1, 0));
    for (const auto& [e, c] : graph.edges()) {
        residual[e.u][e.v] += c;
        residual[e.v][e.u] += c;
    }
    long long flow = 0;
    for (;;) {
        std::vector<Node> prev(m + 1, 0);
        prev[s] = s;
        std::queue<Node> q;
        q.push(s);
        while (!q.empty() && prev[t] == 0) {
            Node x = q.front();
            q.pop();
            for (Node y = 1; y <= m; ++y) {
                if (prev[y] != 0 || residual[x][y] <= 0) continue;
                prev[y] = x;
                q.push(y);
            }
        }
        if (prev[t] == 0) return flow;
        long long push = std::numeric_limits<long long>::max();
        for (Node y = t; y != s; y = prev[y]) push = std::min(push, residual[prev[y]][y]);
        for (Node y = t; y != s; y = prev[y]) {
            residual[prev[y]][y] -= push;
            residual[y][prev[y]] += push;
        }
        flow += push;
    }
}

long long nash_williams_value(const Multigraph& graph) {
    const int m = graph.node_count();
    if (m < 2) throw std::invalid_argument("spanning-tree packing needs at least two nodes");
    long long best = std::numeric_limits<long long>::max();
    for (const auto& p : enumerate_partitions(m, NodeSet::all(m), 2)) {
        long long crossing = 0;
        for (const auto& [e, c] : graph.edges())
            if (p.crosses(e)) crossing += c;
        best = std::min(best, crossing / static_cast<long long>(p.blocks.size() - 1));
    }
    return best;
}

}  // namespace treepin
