#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "treepin/graph.hpp"
#include "treepin/network.hpp"

namespace treepin {

/// C_WSK = min over edges of T(A) of H(V_ij | Z), with the minimising edge.
/// Ties go to the lexicographically smallest edge.
struct WskCapacity {
    double value = 0.0;
    Edge argmin;
};

/// Throws std::invalid_argument when |A| < 2.
WskCapacity wsk_capacity(const Network& network);

/// Per-terminal public rates R_j with their per-neighbour split:
/// components[{j, i}] is the share of R_j attributed to neighbour i.
struct RateVector {
    std::map<Node, double> rates;
    std::map<Arc, double> components;

    double rate(Node j) const;
    double sum() const;
};

/// Closed-form rate assignment: zero on the minimising edge of T(A), every
/// other tree edge's full entropy charged to its endpoint nearer i*.
RateVector rate_assignment(const Network& network);

inline constexpr double kFeasibilityTolerance = 1e-9;

struct FeasibilityCheck {
    bool feasible = true;
    std::size_t constraints_checked = 0;
    std::vector<NodeSet> violated;
};

/// sum_{j in B} R_j >= H(X_B | X_{B^c}, Z) for every B from
/// enumerate_constraint_subsets(m, A).
FeasibilityCheck check_feasibility(const RateVector& rates, const Network& network,
                                   double tolerance = kFeasibilityTolerance);

/// H(X_B | X_{B^c}, Z): the entropy of edges with both endpoints in B.
double internal_entropy(const Network& network, NodeSet block);

/// R_CO = H(X_M | Z) - C_WSK.
double r_co_closed_form(const Network& network);

inline constexpr int kMaxLpNodes = 8;

struct LpOracleResult {
    double value = 0.0;
    RateVector rates;  // components left empty
};

/// Solves the omniscience LP over all enumerated subset constraints with a
/// generic simplex. Throws CapabilityError when m > kMaxLpNodes.
LpOracleResult r_co_lp_oracle(const Network& network);

/// C_PK = H(X_M | Z) - R_CO using the closed-form R_CO.
double pk_capacity(const Network& network);

/// min over partitions P (each block meeting A, |P| >= 2) of
/// sum_{crossing edges} H(V_ij|Z) / (|P| - 1). Throws CapabilityError for m > 10.
double partition_upper_bound(const Network& network);

/// floor(x), except that x within a relative 1e-9 below an integer rounds up
/// to it. Entropies like 1 - 1e-16 must still yield n whole bits.
double tolerant_floor(double x);

/// Multigraph with floor(n * H(V_ij | Z)) parallel copies of every tree edge.
Multigraph packing_multigraph(const Network& network, long long rounds);

/// mu(G^n, A) / n via Nash-Williams (A = M) or Menger (|A| = 2);
/// nullopt for any other target shape.
std::optional<double> packing_lower_bound(const Network& network, long long rounds);

struct CapacityOptions {
    bool verify_lp = false;
    bool bounds = false;
    long long packing_rounds = 0;  // 0 skips the packing bound
};

struct CapacityReport {
    double total_entropy = 0.0;
    WskCapacity wsk;
    double c_pk = 0.0;
    double r_co_closed_form = 0.0;
    std::optional<double> r_co_lp;
    std::optional<double> c_pk_lp;
    std::optional<double> partition_bound;
    std::optional<double> packing_bound;
    long long packing_rounds = 0;
    /// Field name -> how it was computed.
    std::map<std::string, std::string> provenance;
};

CapacityReport compute_capacity_report(const Network& network, const CapacityOptions& options);

}  // namespace treepin
