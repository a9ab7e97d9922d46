#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "treepin/network.hpp"

namespace treepin {

using Symbols = std::vector<std::uint8_t>;

/// n IID rounds of every edge: values[k] and observations[k] belong to the
/// k-th edge of network.tree().edges().
struct SampleBatch {
    std::size_t rounds = 0;
    std::uint64_t seed = 0;
    std::vector<Symbols> values;
    std::vector<Symbols> observations;
};

/// Deterministic under `seed`. Every edge must carry a full source.
SampleBatch sample(const Network& network, std::size_t rounds, std::uint64_t seed);

/// Joint-state cap for exhaustive enumeration: TREEPIN_STATE_CAP when set,
/// otherwise 2^24.
std::uint64_t default_state_cap();

/// One complete outcome of every edge's value and wiretap sequences.
struct JointRealization {
    std::vector<Symbols> values;
    std::vector<Symbols> observations;
};

using JointVisitor = std::function<void(const JointRealization&, double probability)>;

/// Number of (value, observation) sequence combinations over all edges,
/// prod_e (|V_e| |Z_e|)^n, saturated at UINT64_MAX.
std::uint64_t joint_state_count(const Network& network, std::size_t rounds);

/// Visits every positive-probability realization with its exact probability.
/// Throws CapabilityError when joint_state_count exceeds `cap`.
void enumerate_joint(const Network& network, std::size_t rounds, const JointVisitor& visit,
                     std::uint64_t cap = default_state_cap());

/// splitmix64 finaliser, used to derive independent per-stream seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace treepin
