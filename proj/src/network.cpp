#include "treepin/network.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace treepin {

EdgeModel EdgeModel::from_source(EdgeSource source) {
    const double h = conditional_entropy(source);
    return EdgeModel{std::move(source), h};
}

EdgeModel EdgeModel::from_weight(double weight) {
    if (!std::isfinite(weight) || weight < 0.0) throw std::invalid_argument("edge weight must be finite and >= 0");
    return EdgeModel{std::nullopt, weight};
}

Network::Network(Tree tree, std::map<Edge, EdgeModel> edges, NodeSet targets)
    : tree_(std::move(tree)), edges_(std::move(edges)), targets_(targets) {
    if (edges_.size() != tree_.edges().size()) throw std::invalid_argument("every tree edge needs exactly one source");
    for (const Edge& e : tree_.edges())
        if (!edges_.contains(e))
            throw std::invalid_argument("missing source for edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                        ")");
    if (targets_.empty()) throw std::invalid_argument("target set must be nonempty");
    if (!targets_.subset_of(NodeSet::all(tree_.node_count())))
        throw std::invalid_argument("target set contains nodes outside 1..m");
}

Network Network::from_weights(Tree tree, const std::map<Edge, double>& weights, NodeSet targets) {
    std::map<Edge, EdgeModel> edges;
    for (const auto& [e, w] : weights) edges.emplace(e, EdgeModel::from_weight(w));
    return Network(std::move(tree), std::move(edges), targets);
}

Network Network::from_sources(Tree tree, const std::map<Edge, EdgeSource>& sources, NodeSet targets) {
    std::map<Edge, EdgeModel> edges;
    for (const auto& [e, s] : sources) edges.emplace(e, EdgeModel::from_source(s));
    return Network(std::move(tree), std::move(edges), targets);
}

double Network::edge_entropy(Edge e) const {
    auto it = edges_.find(e);
    if (it == edges_.end()) throw std::out_of_range("edge not in network");
    return it->second.entropy;
}

const EdgeSource* Network::source(Edge e) const {
    auto it = edges_.find(e);
    if (it == edges_.end()) throw std::out_of_range("edge not in network");
    return it->second.source ? &*it->second.source : nullptr;
}

bool Network::has_sources() const {
    for (const auto& [e, model] : edges_)
        if (!model.source) return false;
    return true;
}

Network Network::with_targets(NodeSet targets) const { return Network(tree_, edges_, targets); }

double total_conditional_entropy(const Network& network) {
    double total = 0.0;
    for (const auto& [e, model] : network.edges()) total += model.entropy;
    return total;
}

}  // namespace treepin
