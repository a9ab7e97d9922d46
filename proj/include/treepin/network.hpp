#pragma once

#include <map>
#include <optional>

#include "treepin/graph.hpp"
#include "treepin/model.hpp"

namespace treepin {

/// Per-edge correlation: either a full source with its wiretap channel, or
/// just the number H(V_ij | Z) (synthetic-weight mode).
struct EdgeModel {
    std::optional<EdgeSource> source;
    double entropy = 0.0;

    static EdgeModel from_source(EdgeSource source);
    static EdgeModel from_weight(double weight);
};

/// A Tree-PIN: the tree, one EdgeModel per tree edge, and the target set A.
class Network {
public:
    Network(Tree tree, std::map<Edge, EdgeModel> edges, NodeSet targets);

    static Network from_weights(Tree tree, const std::map<Edge, double>& weights, NodeSet targets);
    static Network from_sources(Tree tree, const std::map<Edge, EdgeSource>& sources, NodeSet targets);

    const Tree& tree() const { return tree_; }
    int node_count() const { return tree_.node_count(); }
    NodeSet targets() const { return targets_; }
    const std::map<Edge, EdgeModel>& edges() const { return edges_; }

    /// H(V_ij | Z_ij) in bits.
    double edge_entropy(Edge e) const;
    /// nullptr for weight-only edges.
    const EdgeSource* source(Edge e) const;
    /// True when every edge carries a full source.
    bool has_sources() const;

    Network with_targets(NodeSet targets) const;

private:
    Tree tree_;
    std::map<Edge, EdgeModel> edges_;
    NodeSet targets_;
};

/// H(X_M | Z) = sum over tree edges of H(V_ij | Z).
double total_conditional_entropy(const Network& network);

}  // namespace treepin
