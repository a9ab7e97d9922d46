#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace treepin {

/// Terminal label. All public interfaces use the 1-based labels 1..m.
using Node = int;

/// Undirected edge, stored with u < v so that e_ij and e_ji compare equal.
struct Edge {
    Node u = 0;
    Node v = 0;

    static Edge of(Node a, Node b);

    bool has(Node x) const { return x == u || x == v; }
    Node other(Node x) const;

    auto operator<=>(const Edge&) const = default;
};

/// Directed pair used for per-neighbour rate components and broadcasts.
struct Arc {
    Node from = 0;
    Node to = 0;

    auto operator<=>(const Arc&) const = default;
};

/// Subset of 1..m packed into a bitmask (m <= 32).
class NodeSet {
public:
    NodeSet() = default;
    explicit NodeSet(std::uint32_t mask) : mask_(mask) {}

    static NodeSet of(std::span<const Node> nodes);
    static NodeSet all(int m);

    bool contains(Node j) const { return j >= 1 && j <= 32 && ((mask_ >> (j - 1)) & 1u) != 0; }
    void insert(Node j);
    int size() const;
    bool empty() const { return mask_ == 0; }
    bool subset_of(NodeSet other) const { return (mask_ & ~other.mask_) == 0; }
    bool intersects(NodeSet other) const { return (mask_ & other.mask_) != 0; }
    std::vector<Node> members() const;
    std::uint32_t mask() const { return mask_; }

    auto operator<=>(const NodeSet&) const = default;

private:
    std::uint32_t mask_ = 0;
};

/// Undirected tree on nodes 1..m. Connectivity and acyclicity are checked
/// at construction; invalid input raises std::invalid_argument.
class Tree {
public:
    Tree(int node_count, std::vector<Edge> edges);

    int node_count() const { return node_count_; }
    /// Sorted lexicographically.
    const std::vector<Edge>& edges() const { return edges_; }
    std::span<const Node> neighbors(Node j) const;
    bool has_edge(Edge e) const;
    std::size_t edge_index(Edge e) const;

    int distance(Node i, Node j) const;
    /// The unique simple path, as edges ordered from i to j.
    std::vector<Edge> path(Node i, Node j) const;
    /// Nodes visited from i to j inclusive.
    std::vector<Node> path_nodes(Node i, Node j) const;

private:
    void check_node(Node j) const;
    std::vector<Node> parents_from(Node root) const;

    int node_count_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Node>> adjacency_;
};

struct SteinerSubtree {
    std::vector<Node> nodes;  // sorted
    std::vector<Edge> edges;  // sorted

    bool has_node(Node j) const;
    bool has_edge(Edge e) const;
};

/// Smallest subtree T(A) connecting every node of `targets`.
SteinerSubtree steiner_subtree(const Tree& tree, NodeSet targets);

/// Edge multiplicities over nodes 1..m.
class Multigraph {
public:
    explicit Multigraph(int node_count);

    int node_count() const { return node_count_; }
    void add(Edge e, long long count);
    long long multiplicity(Edge e) const;
    const std::map<Edge, long long>& edges() const { return edges_; }
    /// Sum of multiplicities on edges incident to j.
    long long degree(Node j) const;

private:
    int node_count_;
    std::map<Edge, long long> edges_;
};

struct Partition {
    std::vector<NodeSet> blocks;

    /// Index of the block containing j, or -1.
    int block_of(Node j) const;
    bool crosses(Edge e) const { return block_of(e.u) != block_of(e.v); }
};

inline constexpr int kMaxSubsetNodes = 20;
inline constexpr int kMaxPartitionNodes = 10;

/// Every B with {} != B != {1..m} and targets not a subset of B.
/// Throws CapabilityError when m > kMaxSubsetNodes.
std::vector<NodeSet> enumerate_constraint_subsets(int m, NodeSet targets);

/// Every partition of 1..m into at least `min_blocks` blocks, each block
/// meeting `targets`. Restricted-growth-string order.
/// Throws CapabilityError when m > kMaxPartitionNodes.
std::vector<Partition> enumerate_partitions(int m, NodeSet targets, int min_blocks = 2);

/// Maximum number of edge-disjoint s-t paths (integral max-flow, each
/// parallel edge contributing unit capacity). Disconnected s, t give 0.
long long max_edge_disjoint_paths(const Multigraph& graph, Node s, Node t);

/// Tutte/Nash-Williams spanning-tree packing number:
/// min over partitions with >= 2 blocks of floor(crossing / (blocks - 1)).
long long nash_williams_value(const Multigraph& graph);

}  // namespace treepin
