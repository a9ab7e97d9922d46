#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "treepin/graph.hpp"
#include "treepin/network.hpp"
#include "treepin/sampling.hpp"

namespace treepin {

/// Bit string, one bit (0 or 1) per element, most significant first.
using Bits = std::vector<std::uint8_t>;

Bits xor_bits(const Bits& a, const Bits& b);
/// MSB-first hex; the last nibble is zero-padded on the right.
std::string to_hex(const Bits& bits);
Bits from_hex(const std::string& hex, std::size_t bit_count);
/// Index of a bit string read as a big-endian integer (bits.size() <= 63).
std::uint64_t bits_to_index(const Bits& bits);
Bits index_to_bits(std::uint64_t index, std::size_t bit_count);

/// Fixed-width big-endian encoding, bits_per_symbol(alphabet) bits each.
Bits encode_symbols(std::span<const std::uint8_t> symbols, Alphabet alphabet);

/// Seed length of the modified Toeplitz hash {0,1}^input -> {0,1}^output.
std::size_t toeplitz_seed_length(std::size_t input_bits, std::size_t output_bits);

/// Modified Toeplitz hash h(x) = x[0..l) XOR T x[l..L), where T is the
/// l x (L - l) Toeplitz matrix T[r][c] = seed[r - c + L - l - 1]. The
/// identity block keeps the map surjective for every seed; the family is
/// 2-universal.
Bits toeplitz_hash(const Bits& input, const Bits& seed, std::size_t output_bits);

/// Pairwise key S'_ij: hash V_ij^n to `key_bits` bits with `seed`, then keep
/// the first `lambda` bits. Throws std::invalid_argument when lambda exceeds
/// key_bits or the encoded input length.
Bits extract_pairwise(std::span<const std::uint8_t> values, Alphabet alphabet, const Bits& seed,
                      std::size_t key_bits, std::size_t lambda);

struct ProtocolConfig {
    std::size_t rounds = 0;
    double delta = 0.0;
    double delta_n = 0.0;
    std::size_t lambda = 0;
    Edge root_edge;
};

struct ProtocolParams {
    std::size_t rounds = 0;
    double delta = 0.0;
    double delta_n = 0.0;
    std::optional<std::size_t> lambda;
    std::optional<Edge> root_edge;
};

struct LambdaChoice {
    std::size_t lambda = 0;
    double rate = 0.0;  // lambda / n
};

/// lambda = floor(n (C_WSK - delta - delta_n)). Throws ConfigError when
/// delta is outside (0, C_WSK) or the result is below one bit at this n.
LambdaChoice choose_lambda(const Network& network, std::size_t rounds, double delta, double delta_n);

/// Validates parameters against the network and fills defaults: lambda from
/// choose_lambda, root edge = smallest edge of T(A). An explicit lambda must
/// satisfy 1 <= lambda <= floor(n (C_WSK - delta_n)).
ProtocolConfig make_protocol_config(const Network& network, const ProtocolParams& params);

/// Raw pairwise key length before truncation:
/// clamp(floor(n (H(V_e|Z) - delta_n)), lambda, n * bits_per_symbol).
std::size_t pairwise_key_length(const Network& network, Edge e, const ProtocolConfig& config);

/// T(A) oriented towards the root edge. parent(j) is the neighbour of j
/// closest to the root edge; each root endpoint's parent is the other one.
class RootedSubtree {
public:
    RootedSubtree(const Network& network, Edge root_edge);

    const SteinerSubtree& subtree() const { return subtree_; }
    Edge root_edge() const { return root_; }
    Node parent(Node j) const;
    bool is_root_endpoint(Node j) const { return root_.has(j); }
    /// Neighbours of j inside T(A).
    std::vector<Node> neighbors(Node j) const;

private:
    SteinerSubtree subtree_;
    Edge root_;
    std::map<Node, Node> parent_;
    std::map<Node, std::vector<Node>> adjacency_;
};

/// What terminal j holds after pairwise extraction: S'_{j,i} per neighbour i.
using LocalKeys = std::map<Node, Bits>;

/// F_{j,i} = S'_{j,parent(j)} XOR S'_{j,i} for every non-parent neighbour i.
/// Uses only terminal j's local keys.
std::map<Arc, Bits> terminal_broadcasts(const RootedSubtree& rooted, Node j, const LocalKeys& local);

/// K_j = S'_{j,parent(j)} XOR F along Path(j -> root edge).
Bits reconstruct_key(const RootedSubtree& rooted, Node j, const LocalKeys& local,
                     const std::map<Arc, Bits>& broadcasts);

struct Transcript {
    std::size_t rounds = 0;
    std::size_t lambda = 0;
    Edge root_edge;
    std::map<Edge, Bits> seeds;          // Q_ij
    std::map<Edge, Bits> pairwise_keys;  // S'_ij
    std::map<Arc, Bits> broadcasts;      // F_ji keyed by (sender j, neighbour i)
    std::map<Node, Bits> keys;           // K_j for every node of T(A)
    std::map<Node, LocalKeys> local_keys;
};

/// Derives every public extractor seed of a run from `seed`.
std::map<Edge, Bits> derive_extractor_seeds(const Network& network, const ProtocolConfig& config, std::uint64_t seed);

/// Runs the XOR-propagation protocol on T(A) with freshly sampled sources.
Transcript run_protocol(const Network& network, const ProtocolConfig& config, std::uint64_t seed);

/// Same, on a caller-provided sample batch and seed set.
Transcript run_protocol_on(const Network& network, const ProtocolConfig& config, const SampleBatch& samples,
                           const std::map<Edge, Bits>& seeds);

struct ReliabilityAndComm {
    double epsilon_observed = 0.0;
    std::size_t communication_bits = 0;
    std::size_t messages = 0;
};

ReliabilityAndComm reliability_and_comm(const Transcript& transcript, const ProtocolConfig& config);

enum class SeedMode { Enumerated, Fixed };

struct SecrecyOptions {
    std::uint64_t cap = default_state_cap();
    /// Seeds of at most this many bits per edge are enumerated; longer ones
    /// are fixed from `fixed_seed` and the distance is conditional on them.
    std::size_t max_enumerated_seed_bits = 12;
    std::uint64_t fixed_seed = 0;
};

struct SecrecyReport {
    double statistical_distance = 0.0;  // SD((K,F,Q,Z); (U,F,Q,Z))
    double sigma = 0.0;                 // max pairwise SD
    std::map<Edge, double> pairwise_sd;
    double composition_bound = 0.0;  // 2 |E_T(A)| sigma
    double reliability_failure = 0.0;
    std::size_t communication_bits = 0;
    SeedMode seed_mode = SeedMode::Enumerated;
    std::uint64_t states = 0;
};

/// Exact secrecy of the protocol by exhaustive enumeration of every edge's
/// (seed, V^n, Z^n). Throws CapabilityError when the enumeration exceeds
/// options.cap.
SecrecyReport exact_secrecy(const Network& network, const ProtocolConfig& config, const SecrecyOptions& options = {});

}  // namespace treepin
