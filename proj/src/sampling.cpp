#include "treepin/sampling.hpp"

#include <cstdlib>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "treepin/error.hpp"

namespace treepin {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint8_t draw(std::span<const double> p, std::mt19937_64& rng) {
    const double u = unit_uniform(rng);
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] <= 0.0) continue;
        last_positive = k;
        acc += p[k];
        if (u < acc) return static_cast<std::uint8_t>(k);
    }
    return static_cast<std::uint8_t>(last_positive);
}

const EdgeSource& require_source(const Network& network, Edge e) {
    const EdgeSource* s = network.source(e);
    if (s == nullptr)
        throw std::invalid_argument("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                    ") has no source distribution");
    return *s;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
    return a * b;
}

}  // namespace

SampleBatch sample(const Network& network, std::size_t rounds, std::uint64_t seed) {
    if (rounds < 1) throw std::invalid_argument("sample needs at least one round");
    SampleBatch batch;
    batch.rounds = rounds;
    batch.seed = seed;
    const auto& edges = network.tree().edges();
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const EdgeSource& src = require_source(network, edges[k]);
        std::mt19937_64 rng(mix_seed(seed, k));
        Symbols v(rounds), z(rounds);
        for (std::size_t t = 0; t < rounds; ++t) {
            v[t] = draw(src.distribution(), rng);
            z[t] = draw(src.channel().row(v[t]), rng);
        }
        batch.values.push_back(std::move(v));
        batch.observations.push_back(std::move(z));
    }
    return batch;
}

std::uint64_t default_state_cap() {
    if (const char* env = std::getenv("TREEPIN_STATE_CAP")) {
        char* end = nullptr;
        const unsigned long long cap = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && cap > 0) return cap;
    }
    return std::uint64_t{1} << 24;
}

std::uint64_t joint_state_count(const Network& network, std::size_t rounds) {
    std::uint64_t total = 1;
    for (const Edge& e : network.tree().edges()) {
        const EdgeSource& src = require_source(network, e);
        const std::uint64_t per_round = src.value_alphabet().size * src.observation_alphabet().size;
        for (std::size_t t = 0; t < rounds; ++t) total = saturating_mul(total, per_round);
    }
    return total;
}

void enumerate_joint(const Network& network, std::size_t rounds, const JointVisitor& visit, std::uint64_t cap) {
    if (rounds < 1) throw std::invalid_argument("enumeration needs at least one round");
    const std::uint64_t states = joint_state_count(network, rounds);
    if (states > cap)
        throw CapabilityError("joint state space has " + std::to_string(states) + " states, above the cap of " +
                              std::to_string(cap) + " (set TREEPIN_STATE_CAP or shrink n/alphabets)");

    // Per edge, list every positive-probability (v^n, z^n) pair once.
    struct Outcome {
        Symbols v, z;
        double p;
    };
    std::vector<std::vector<Outcome>> per_edge;
    for (const Edge& e : network.tree().edges()) {
        const EdgeSource& src = require_source(network, e);
        const std::size_t nv = src.value_alphabet().size, nz = src.observation_alphabet().size;
        std::vector<Outcome> outcomes{{Symbols{}, Symbols{}, 1.0}};
        for (std::size_t t = 0; t < rounds; ++t) {
            std::vector<Outcome> next;
            for (const auto& o : outcomes)
                for (std::size_t v = 0; v < nv; ++v)
                    for (std::size_t z = 0; z < nz; ++z) {
                        const double p = o.p * src.joint(v, z);
                        if (p <= 0.0) continue;
                        Outcome grown = o;
                        grown.v.push_back(static_cast<std::uint8_t>(v));
                        grown.z.push_back(static_cast<std::uint8_t>(z));
                        grown.p = p;
                        next.push_back(std::move(grown));
                    }
            outcomes = std::move(next);
        }
        per_edge.push_back(std::move(outcomes));
    }

    const std::size_t edge_count = per_edge.size();
    JointRealization r;
    r.values.resize(edge_count);
    r.observations.resize(edge_count);
    std::vector<std::size_t> index(edge_count, 0);
    for (;;) {
        double p = 1.0;
        for (std::size_t k = 0; k < edge_count; ++k) {
            const auto& o = per_edge[k][index[k]];
            r.values[k] = o.v;
            r.observations[k] = o.z;
            p *= o.p;
        }
        visit(r, p);
        std::size_t k = 0;
        while (k < edge_count && ++index[k] == per_edge[k].size()) index[k++] = 0;
        if (k == edge_count) return;
    }
}

}  // namespace treepin
