#include "treepin/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "treepin/error.hpp"
#include "treepin/lp.hpp"

namespace treepin {

double RateVector::rate(Node j) const {
    auto it = rates.find(j);
    return it == rates.end() ? 0.0 : it->second;
}

double RateVector::sum() const {
    double s = 0.0;
    for (const auto& [j, r] : rates) s += r;
    return s;
}

WskCapacity wsk_capacity(const Network& network) {
    if (network.targets().size() < 2) throw std::invalid_argument("key agreement needs at least two target terminals");
    const auto sub = steiner_subtree(network.tree(), network.targets());
    WskCapacity best{std::numeric_limits<double>::infinity(), Edge{}};
    // sub.edges is sorted, so strict < keeps the lexicographically first tie.
    for (const Edge& e : sub.edges) {
        const double h = network.edge_entropy(e);
        if (h < best.value) best = {h, e};
    }
    return best;
}

RateVector rate_assignment(const Network& network) {
    const Tree& tree = network.tree();
    const Edge root = wsk_capacity(network).argmin;
    const Node anchor = root.u;

    RateVector out;
    for (Node j = 1; j <= tree.node_count(); ++j) out.rates[j] = 0.0;
    for (const Edge& e : tree.edges()) {
        if (e == root) {
            out.components[{e.u, e.v}] = 0.0;
            out.components[{e.v, e.u}] = 0.0;
            continue;
        }
        const int du = tree.distance(e.u, anchor);
        const int dv = tree.distance(e.v, anchor);
        if (du == dv) throw InvariantError("adjacent tree nodes at equal distance from i*");
        const Node near = du < dv ? e.u : e.v;
        const Node far = e.other(near);
        const double w = network.edge_entropy(e);
        out.components[{near, far}] = w;
        out.components[{far, near}] = 0.0;
        out.rates[near] += w;
    }
    return out;
}

double internal_entropy(const Network& network, NodeSet block) {
    double h = 0.0;
    for (const auto& [e, model] : network.edges())
        if (block.contains(e.u) && block.contains(e.v)) h += model.entropy;
    return h;
}

FeasibilityCheck check_feasibility(const RateVector& rates, const Network& network, double tolerance) {
    FeasibilityCheck check;
    for (NodeSet b : enumerate_constraint_subsets(network.node_count(), network.targets())) {
        ++check.constraints_checked;
        double lhs = 0.0;
        for (Node j : b.members()) lhs += rates.rate(j);
        if (lhs + tolerance < internal_entropy(network, b)) {
            check.feasible = false;
            check.violated.push_back(b);
        }
    }
    for (const auto& [j, r] : rates.rates)
        if (r < -tolerance) check.feasible = false;
    return check;
}

double r_co_closed_form(const Network& network) {
    return total_conditional_entropy(network) - wsk_capacity(network).value;
}

LpOracleResult r_co_lp_oracle(const Network& network) {
    const int m = network.node_count();
    if (m > kMaxLpNodes)
        throw CapabilityError("the LP oracle supports at most " + std::to_string(kMaxLpNodes) + " nodes, got " +
                              std::to_string(m));
    if (network.targets().size() < 2) throw std::invalid_argument("key agreement needs at least two target terminals");

    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    for (NodeSet b : enumerate_constraint_subsets(m, network.targets())) {
        std::vector<double> row(m, 0.0);
        for (Node j : b.members()) row[j - 1] = 1.0;
        rows.push_back(std::move(row));
        rhs.push_back(internal_entropy(network, b));
    }
    const auto sol = solve_covering_lp(std::vector<double>(m, 1.0), rows, rhs);

    LpOracleResult out;
    out.value = sol.value;
    for (Node j = 1; j <= m; ++j) out.rates.rates[j] = sol.x[j - 1];
    return out;
}

double pk_capacity(const Network& network) { return total_conditional_entropy(network) - r_co_closed_form(network); }

double partition_upper_bound(const Network& network) {
    if (network.targets().size() < 2) throw std::invalid_argument("key agreement needs at least two target terminals");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : enumerate_partitions(network.node_count(), network.targets(), 2)) {
        double crossing = 0.0;
        for (const auto& [e, model] : network.edges())
            if (p.crosses(e)) crossing += model.entropy;
        best = std::min(best, crossing / static_cast<double>(p.blocks.size() - 1));
    }
    return best;
}

double tolerant_floor(double x) { return std::floor(x + 1e-9 * std::max(1.0, std::abs(x))); }

Multigraph packing_multigraph(const Network& network, long long rounds) {
    if (rounds < 1) throw std::invalid_argument("packing bound needs n >= 1");
    Multigraph g(network.node_count());
    for (const auto& [e, model] : network.edges()) {
        g.add(e, static_cast<long long>(tolerant_floor(static_cast<double>(rounds) * model.entropy)));
    }
    return g;
}

std::optional<double> packing_lower_bound(const Network& network, long long rounds) {
    const NodeSet a = network.targets();
    const int m = network.node_count();
    const bool all = a == NodeSet::all(m);
    if (!all && a.size() != 2) return std::nullopt;
    if (a.size() < 2) return std::nullopt;
    const Multigraph g = packing_multigraph(network, rounds);
    long long packing = 0;
    if (a.size() == 2) {
        const auto ends = a.members();
        packing = max_edge_disjoint_paths(g, ends[0], ends[1]);
    } else {
        packing = nash_williams_value(g);
    }
    return static_cast<double>(packing) / static_cast<double>(rounds);
}

CapacityReport compute_capacity_report(const Network& network, const CapacityOptions& options) {
    CapacityReport r;
    r.total_entropy = total_conditional_entropy(network);
    r.wsk = wsk_capacity(network);
    r.r_co_closed_form = r_co_closed_form(network);
    r.c_pk = pk_capacity(network);
    r.provenance["total_entropy"] = "sum of per-edge H(V|Z)";
    r.provenance["c_wsk"] = "closed form: min H(V|Z) over edges of T(A)";
    r.provenance["r_co_closed_form"] = "H(X_M|Z) - c_wsk";
    r.provenance["c_pk"] = "H(X_M|Z) - r_co_closed_form";
    if (options.verify_lp) {
        const auto lp = r_co_lp_oracle(network);
        r.r_co_lp = lp.value;
        r.c_pk_lp = r.total_entropy - lp.value;
        r.provenance["r_co_lp"] = "simplex over all subset constraints";
        r.provenance["c_pk_lp"] = "H(X_M|Z) - r_co_lp";
    }
    if (options.bounds) {
        r.partition_bound = partition_upper_bound(network);
        r.provenance["partition_bound"] = "enumeration of partitions whose blocks meet A";
    }
    if (options.packing_rounds > 0) {
        r.packing_rounds = options.packing_rounds;
        r.packing_bound = packing_lower_bound(network, options.packing_rounds);
        const bool all = network.targets() == NodeSet::all(network.node_count());
        r.provenance["packing_bound"] = !r.packing_bound ? "unavailable: A is neither M nor a pair"
                                        : network.targets().size() == 2
                                            ? "max-flow (edge-disjoint paths) on G^n, divided by n"
                                            : (all ? "Nash-Williams partition formula on G^n, divided by n" : "");
    }
    return r;
}

}  // namespace treepin
