#include "treepin/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "treepin/capacity.hpp"
#include "treepin/error.hpp"

namespace treepin {

Bits xor_bits(const Bits& a, const Bits& b) {
    if (a.size() != b.size()) throw std::invalid_argument("xor of bit strings of different length");
    Bits out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] ^ b[k];
    return out;
}

std::string to_hex(const Bits& bits) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    for (std::size_t k = 0; k < bits.size(); k += 4) {
        unsigned nibble = 0;
        for (std::size_t b = 0; b < 4; ++b) nibble = (nibble << 1) | (k + b < bits.size() ? bits[k + b] : 0u);
        out.push_back(kDigits[nibble]);
    }
    return out;
}

Bits from_hex(const std::string& hex, std::size_t bit_count) {
    if (hex.size() != (bit_count + 3) / 4) throw std::invalid_argument("hex string has the wrong length");
    Bits out;
    for (char c : hex) {
        int v = 0;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
        else throw std::invalid_argument("invalid hex digit");
        for (int b = 3; b >= 0; --b) out.push_back(static_cast<std::uint8_t>((v >> b) & 1));
    }
    out.resize(bit_count);
    return out;
}

std::uint64_t bits_to_index(const Bits& bits) {
    if (bits.size() > 63) throw std::invalid_argument("bit string too long to index");
    std::uint64_t idx = 0;
    for (auto b : bits) idx = (idx << 1) | b;
    return idx;
}

Bits index_to_bits(std::uint64_t index, std::size_t bit_count) {
    Bits out(bit_count);
    for (std::size_t k = 0; k < bit_count; ++k) out[bit_count - 1 - k] = static_cast<std::uint8_t>((index >> k) & 1);
    return out;
}

Bits encode_symbols(std::span<const std::uint8_t> symbols, Alphabet alphabet) {
    const std::size_t width = bits_per_symbol(alphabet);
    Bits out;
    out.reserve(symbols.size() * width);
    for (auto s : symbols) {
        if (s >= alphabet.size) throw std::invalid_argument("symbol outside the alphabet");
        for (std::size_t b = width; b-- > 0;) out.push_back(static_cast<std::uint8_t>((s >> b) & 1));
    }
    return out;
}

std::size_t toeplitz_seed_length(std::size_t input_bits, std::size_t output_bits) {
    if (output_bits > input_bits) throw std::invalid_argument("hash output longer than its input");
    return output_bits < input_bits ? input_bits - 1 : 0;
}

Bits toeplitz_hash(const Bits& input, const Bits& seed, std::size_t output_bits) {
    const std::size_t length = input.size();
    if (seed.size() != toeplitz_seed_length(length, output_bits))
        throw std::invalid_argument("Toeplitz seed has length " + std::to_string(seed.size()) + ", expected " +
                                    std::to_string(toeplitz_seed_length(length, output_bits)));
    const std::size_t cols = length - output_bits;
    Bits out(input.begin(), input.begin() + static_cast<std::ptrdiff_t>(output_bits));
    for (std::size_t r = 0; r < output_bits; ++r) {
        std::uint8_t acc = 0;
        for (std::size_t c = 0; c < cols; ++c) acc ^= seed[r + cols - 1 - c] & input[output_bits + c];
        out[r] ^= acc;
    }
    return out;
}

Bits extract_pairwise(std::span<const std::uint8_t> values, Alphabet alphabet, const Bits& seed,
                      std::size_t key_bits, std::size_t lambda) {
    const Bits input = encode_symbols(values, alphabet);
    if (key_bits > input.size())
        throw std::invalid_argument("pairwise key of " + std::to_string(key_bits) + " bits exceeds the " +
                                    std::to_string(input.size()) + "-bit input");
    if (lambda > key_bits) throw std::invalid_argument("lambda exceeds the pairwise key length");
    Bits key = toeplitz_hash(input, seed, key_bits);
    key.resize(lambda);
    return key;
}

// ---------------------------------------------------------------------------

LambdaChoice choose_lambda(const Network& network, std::size_t rounds, double delta, double delta_n) {
    if (rounds < 1) throw ConfigError("protocol needs n >= 1");
    if (delta_n < 0.0) throw ConfigError("delta_n must be >= 0");
    const double c = wsk_capacity(network).value;
    if (!(delta > 0.0) || !(delta < c))
        throw ConfigError("delta must lie in (0, C_WSK) = (0, " + std::to_string(c) + ")");
    const double budget = static_cast<double>(rounds) * (c - delta - delta_n);
    const double lambda = tolerant_floor(budget);
    if (lambda < 1.0)
        throw ConfigError("n = " + std::to_string(rounds) + " leaves n(C - delta - delta_n) = " +
                          std::to_string(budget) + " < 1 bit; raise n or lower delta");
    return {static_cast<std::size_t>(lambda), lambda / static_cast<double>(rounds)};
}

ProtocolConfig make_protocol_config(const Network& network, const ProtocolParams& params) {
    if (params.rounds < 1) throw ConfigError("protocol needs n >= 1");
    if (!(params.delta > 0.0)) throw ConfigError("delta must be > 0");
    if (!(params.delta_n >= 0.0)) throw ConfigError("delta_n must be >= 0");
    const auto cap = wsk_capacity(network);

    ProtocolConfig config;
    config.rounds = params.rounds;
    config.delta = params.delta;
    config.delta_n = params.delta_n;
    if (params.lambda) {
        const double limit = tolerant_floor(static_cast<double>(params.rounds) * (cap.value - params.delta_n));
        if (*params.lambda < 1 || static_cast<double>(*params.lambda) > limit)
            throw ConfigError("lambda = " + std::to_string(*params.lambda) + " is outside [1, floor(n(C - delta_n))] = [1, " +
                              std::to_string(static_cast<long long>(std::max(limit, 0.0))) + "]");
        config.lambda = *params.lambda;
    } else {
        config.lambda = choose_lambda(network, params.rounds, params.delta, params.delta_n).lambda;
    }

    const auto sub = steiner_subtree(network.tree(), network.targets());
    if (params.root_edge) {
        if (!sub.has_edge(*params.root_edge))
            throw ConfigError("root edge (" + std::to_string(params.root_edge->u) + "," +
                              std::to_string(params.root_edge->v) + ") is not an edge of T(A)");
        config.root_edge = *params.root_edge;
    } else {
        config.root_edge = sub.edges.front();
    }
    return config;
}

std::size_t pairwise_key_length(const Network& network, Edge e, const ProtocolConfig& config) {
    const EdgeSource* src = network.source(e);
    if (src == nullptr) throw std::invalid_argument("sources required for simulation");
    const std::size_t input_bits = config.rounds * bits_per_symbol(src->value_alphabet());
    const double raw = tolerant_floor(static_cast<double>(config.rounds) * (network.edge_entropy(e) - config.delta_n));
    std::size_t len = raw > 0.0 ? static_cast<std::size_t>(raw) : 0;
    len = std::clamp(len, config.lambda, input_bits);
    if (config.lambda > input_bits) throw ConfigError("lambda exceeds the encoded length of V^n");
    return len;
}

// ---------------------------------------------------------------------------

RootedSubtree::RootedSubtree(const Network& network, Edge root_edge)
    : subtree_(steiner_subtree(network.tree(), network.targets())), root_(root_edge) {
    if (!subtree_.has_edge(root_edge)) throw std::invalid_argument("root edge is not in T(A)");
    for (const Edge& e : subtree_.edges) {
        adjacency_[e.u].push_back(e.v);
        adjacency_[e.v].push_back(e.u);
    }
    const Tree& tree = network.tree();
    auto to_root = [&](Node x) { return std::min(tree.distance(x, root_.u), tree.distance(x, root_.v)); };
    for (Node j : subtree_.nodes) {
        if (root_.has(j)) {
            parent_[j] = root_.other(j);
            continue;
        }
        Node best = 0;
        int best_d = std::numeric_limits<int>::max();
        bool tie = false;
        for (Node i : adjacency_[j]) {
            const int d = to_root(i);
            if (d < best_d) {
                best = i;
                best_d = d;
                tie = false;
            } else if (d == best_d) {
                tie = true;
            }
        }
        if (tie || best == 0) throw InvariantError("closest neighbour to the root edge is not unique");
        parent_[j] = best;
    }
}

Node RootedSubtree::parent(Node j) const {
    auto it = parent_.find(j);
    if (it == parent_.end()) throw std::out_of_range("node " + std::to_string(j) + " is not in T(A)");
    return it->second;
}

std::vector<Node> RootedSubtree::neighbors(Node j) const {
    auto it = adjacency_.find(j);
    return it == adjacency_.end() ? std::vector<Node>{} : it->second;
}

std::map<Arc, Bits> terminal_broadcasts(const RootedSubtree& rooted, Node j, const LocalKeys& local) {
    const Node up = rooted.parent(j);
    const Bits& toward_root = local.at(up);
    std::map<Arc, Bits> out;
    for (Node i : rooted.neighbors(j))
        if (i != up) out[{j, i}] = xor_bits(toward_root, local.at(i));
    return out;
}

Bits reconstruct_key(const RootedSubtree& rooted, Node j, const LocalKeys& local,
                     const std::map<Arc, Bits>& broadcasts) {
    Bits key = local.at(rooted.parent(j));
    for (Node x = j; !rooted.is_root_endpoint(x);) {
        const Node up = rooted.parent(x);
        key = xor_bits(key, broadcasts.at({up, x}));
        x = up;
    }
    return key;
}

std::map<Edge, Bits> derive_extractor_seeds(const Network& network, const ProtocolConfig& config, std::uint64_t seed) {
    const auto sub = steiner_subtree(network.tree(), network.targets());
    std::map<Edge, Bits> seeds;
    for (const Edge& e : sub.edges) {
        const EdgeSource* src = network.source(e);
        if (src == nullptr) throw ConfigError("sources required for simulation");
        const std::size_t input_bits = config.rounds * bits_per_symbol(src->value_alphabet());
        const std::size_t len = toeplitz_seed_length(input_bits, pairwise_key_length(network, e, config));
        std::mt19937_64 rng(mix_seed(seed ^ 0x51ed5eedULL, network.tree().edge_index(e)));
        Bits q(len);
        for (auto& b : q) b = static_cast<std::uint8_t>(rng() >> 63);
        seeds.emplace(e, std::move(q));
    }
    return seeds;
}

Transcript run_protocol_on(const Network& network, const ProtocolConfig& config, const SampleBatch& samples,
                           const std::map<Edge, Bits>& seeds) {
    const RootedSubtree rooted(network, config.root_edge);
    const Tree& tree = network.tree();

    Transcript t;
    t.rounds = config.rounds;
    t.lambda = config.lambda;
    t.root_edge = config.root_edge;
    t.seeds = seeds;

    // Pairwise phase: each endpoint hashes its own copy of V_ij^n.
    for (const Edge& e : rooted.subtree().edges) {
        const EdgeSource* src = network.source(e);
        if (src == nullptr) throw ConfigError("sources required for simulation");
        const auto& values = samples.values.at(tree.edge_index(e));
        const std::size_t key_bits = pairwise_key_length(network, e, config);
        for (Node end : {e.u, e.v})
            t.local_keys[end][e.other(end)] =
                extract_pairwise(values, src->value_alphabet(), seeds.at(e), key_bits, config.lambda);
        t.pairwise_keys[e] = t.local_keys[e.u][e.v];
    }

    // Public discussion: every terminal of T(A) broadcasts from local keys only.
    for (Node j : rooted.subtree().nodes)
        for (auto& [arc, f] : terminal_broadcasts(rooted, j, t.local_keys[j])) t.broadcasts.emplace(arc, std::move(f));

    for (Node j : rooted.subtree().nodes) t.keys[j] = reconstruct_key(rooted, j, t.local_keys[j], t.broadcasts);
    return t;
}

Transcript run_protocol(const Network& network, const ProtocolConfig& config, std::uint64_t seed) {
    if (!network.has_sources()) throw ConfigError("sources required for simulation");
    const SampleBatch samples = sample(network, config.rounds, seed);
    return run_protocol_on(network, config, samples, derive_extractor_seeds(network, config, seed));
}

ReliabilityAndComm reliability_and_comm(const Transcript& transcript, const ProtocolConfig& config) {
    ReliabilityAndComm out;
    const Bits& reference = transcript.pairwise_keys.at(transcript.root_edge);
    std::size_t mismatches = 0;
    for (const auto& [j, k] : transcript.keys)
        if (k != reference) ++mismatches;
    out.epsilon_observed =
        transcript.keys.empty() ? 0.0 : static_cast<double>(mismatches) / static_cast<double>(transcript.keys.size());
    out.messages = transcript.broadcasts.size();
    out.communication_bits = out.messages * config.lambda;
    return out;
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t checked_pow(std::uint64_t base, std::size_t exp, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (std::size_t k = 0; k < exp; ++k) {
        if (base != 0 && r > cap / base) return cap + 1;
        r *= base;
    }
    return r;
}

struct Posterior {
    std::vector<double> p;  // P(S' = s | q, z), s in [0, 2^lambda)
    double weight = 0.0;    // total P(q, z) mapping to this posterior
};

struct EdgeTable {
    double sd = 0.0;
    std::vector<Posterior> groups;
    std::uint64_t states = 0;
    bool fixed_seed = false;
};

EdgeTable tabulate_edge(const Network& network, Edge e, const ProtocolConfig& config, const SecrecyOptions& options,
                        const Bits& fixed_seed) {
    const EdgeSource& src = *network.source(e);
    const std::size_t n = config.rounds;
    const std::size_t nv = src.value_alphabet().size, nz = src.observation_alphabet().size;
    const std::size_t key_bits = pairwise_key_length(network, e, config);
    const std::size_t seed_bits = toeplitz_seed_length(n * bits_per_symbol(src.value_alphabet()), key_bits);
    const std::size_t keys = std::size_t{1} << config.lambda;

    EdgeTable table;
    table.fixed_seed = seed_bits > options.max_enumerated_seed_bits;
    const std::uint64_t seed_count = table.fixed_seed ? 1 : (std::uint64_t{1} << seed_bits);
    const std::uint64_t v_count = checked_pow(nv, n, options.cap);
    const std::uint64_t z_count = checked_pow(nz, n, options.cap);
    const std::uint64_t states = seed_count * v_count;
    if (v_count > options.cap || z_count > options.cap || states > options.cap / z_count)
        throw CapabilityError("exact secrecy on edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                              ") needs more than the state cap of " + std::to_string(options.cap) +
                              " states; use smaller n or alphabets");
    table.states = states * z_count;

    // joint[(q, z)][s] = P(Q = q, Z^n = z, S' = s)
    std::vector<double> joint(seed_count * z_count * keys, 0.0);
    const double seed_p = 1.0 / static_cast<double>(seed_count);
    Symbols v(n), z(n);
    for (std::uint64_t q = 0; q < seed_count; ++q) {
        const Bits seed = table.fixed_seed ? fixed_seed : index_to_bits(q, seed_bits);
        for (std::uint64_t vi = 0; vi < v_count; ++vi) {
            double pv = seed_p;
            for (std::size_t t = 0, x = vi; t < n; ++t, x /= nv) {
                v[t] = static_cast<std::uint8_t>(x % nv);
                pv *= src.distribution()[v[t]];
            }
            if (pv <= 0.0) continue;
            const auto s = bits_to_index(extract_pairwise(v, src.value_alphabet(), seed, key_bits, config.lambda));
            for (std::uint64_t zi = 0; zi < z_count; ++zi) {
                double p = pv;
                for (std::size_t t = 0, x = zi; t < n && p > 0.0; ++t, x /= nz) p *= src.channel()(v[t], x % nz);
                if (p > 0.0) joint[(q * z_count + zi) * keys + s] += p;
            }
        }
    }

    std::map<std::vector<long long>, std::size_t> group_index;
    const double uniform = 1.0 / static_cast<double>(keys);
    for (std::uint64_t qz = 0; qz < seed_count * z_count; ++qz) {
        const double* row = &joint[qz * keys];
        double mass = 0.0;
        for (std::size_t s = 0; s < keys; ++s) mass += row[s];
        if (mass <= 0.0) continue;
        std::vector<double> post(keys);
        std::vector<long long> key(keys);
        for (std::size_t s = 0; s < keys; ++s) {
            table.sd += 0.5 * std::abs(row[s] - mass * uniform);
            post[s] = row[s] / mass;
            key[s] = std::llround(post[s] * 1e12);
        }
        auto [it, fresh] = group_index.emplace(std::move(key), table.groups.size());
        if (fresh) table.groups.push_back({std::move(post), 0.0});
        table.groups[it->second].weight += mass;
    }
    return table;
}

}  // namespace

SecrecyReport exact_secrecy(const Network& network, const ProtocolConfig& config, const SecrecyOptions& options) {
    if (!network.has_sources()) throw ConfigError("sources required for simulation");
    const RootedSubtree rooted(network, config.root_edge);
    if (config.lambda > 20) throw CapabilityError("exact secrecy supports lambda <= 20");

    // Root edge first; the others are in T(A) order.
    std::vector<Edge> edges{config.root_edge};
    for (const Edge& e : rooted.subtree().edges)
        if (e != config.root_edge) edges.push_back(e);

    const auto fixed = derive_extractor_seeds(network, config, options.fixed_seed);
    SecrecyReport report;
    std::vector<EdgeTable> tables;
    std::uint64_t total_states = 0;
    for (const Edge& e : edges) {
        tables.push_back(tabulate_edge(network, e, config, options, fixed.at(e)));
        total_states += tables.back().states;
        if (total_states > options.cap)
            throw CapabilityError("exact secrecy needs more than the state cap of " + std::to_string(options.cap) +
                                  " states; use smaller n or alphabets");
        report.pairwise_sd[e] = tables.back().sd;
        report.sigma = std::max(report.sigma, tables.back().sd);
        if (tables.back().fixed_seed) report.seed_mode = SeedMode::Fixed;
    }

    const std::size_t keys = std::size_t{1} << config.lambda;
    const std::size_t others = edges.size() - 1;
    std::uint64_t combos = 1;
    for (const auto& t : tables) {
        if (combos > options.cap / t.groups.size()) {
            combos = options.cap + 1;
            break;
        }
        combos *= t.groups.size();
    }
    const std::uint64_t offsets = checked_pow(keys, others, options.cap);
    if (offsets > options.cap || combos > options.cap / (offsets * keys))
        throw CapabilityError("exact secrecy needs more than the state cap of " + std::to_string(options.cap) +
                              " combined states; use smaller n, lambda or trees");
    report.states = total_states + combos * offsets * keys;

    // (K, F) is a bijective image of (S'_root, t) where t_e = S'_e XOR S'_root,
    // so the distance can be summed over (k, t) given each posterior tuple.
    const double uniform = 1.0 / static_cast<double>(keys);
    std::vector<std::size_t> pick(tables.size(), 0);
    std::vector<double> joint(keys);
    double sd = 0.0;
    for (;;) {
        double weight = 1.0;
        for (std::size_t k = 0; k < tables.size(); ++k) weight *= tables[k].groups[pick[k]].weight;
        double d = 0.0;
        for (std::uint64_t t = 0; t < offsets; ++t) {
            double marginal = 0.0;
            for (std::size_t k = 0; k < keys; ++k) {
                double p = tables[0].groups[pick[0]].p[k];
                std::uint64_t rest = t;
                for (std::size_t e = 1; e < tables.size() && p > 0.0; ++e, rest /= keys)
                    p *= tables[e].groups[pick[e]].p[k ^ (rest % keys)];
                joint[k] = p;
                marginal += p;
            }
            for (std::size_t k = 0; k < keys; ++k) d += std::abs(joint[k] - marginal * uniform);
        }
        sd += weight * 0.5 * d;

        std::size_t k = 0;
        while (k < tables.size() && ++pick[k] == tables[k].groups.size()) pick[k++] = 0;
        if (k == tables.size()) break;
    }

    report.statistical_distance = std::clamp(sd, 0.0, 1.0);
    report.composition_bound = 2.0 * static_cast<double>(edges.size()) * report.sigma;
    // Both endpoints hash the same realization of V_ij, so pairwise keys never disagree.
    report.reliability_failure = 0.0;
    report.communication_bits = (edges.size() - 1) * config.lambda;
    return report;
}

}  // namespace treepin
