#include "treepin/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "json.hpp"
#include "treepin/capacity.hpp"
#include "treepin/error.hpp"

namespace treepin {

using json = nlohmann::ordered_json;

double round12(double x) {
    if (!std::isfinite(x) || x == 0.0) return x == 0.0 ? 0.0 : x;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

namespace {

json edge_json(Edge e) { return json::array({e.u, e.v}); }

json header(const NetworkConfig& config, const char* command) {
    json doc;
    doc["tool"] = "treepin";
    doc["version"] = kToolVersion;
    doc["command"] = command;
    doc["input_hash"] = fnv1a_hex(serialize_network_config(config));
    doc["nodes"] = config.network.node_count();
    doc["target_set"] = config.network.targets().members();
    return doc;
}

json rates_json(const RateVector& rates) {
    json r = json::object();
    for (const auto& [j, v] : rates.rates) r[std::to_string(j)] = round12(v);
    json comps = json::array();
    for (const auto& [arc, v] : rates.components)
        comps.push_back(json{{"from", arc.from}, {"to", arc.to}, {"rate", round12(v)}});
    json out;
    out["R"] = std::move(r);
    out["sum"] = round12(rates.sum());
    out["components"] = std::move(comps);
    return out;
}

json feasibility_json(const FeasibilityCheck& check) {
    json violated = json::array();
    for (NodeSet b : check.violated) violated.push_back(b.members());
    return json{{"feasible", check.feasible},
                {"constraints_checked", check.constraints_checked},
                {"violated", std::move(violated)}};
}

json optional_number(const std::optional<double>& v) { return v ? json(round12(*v)) : json(nullptr); }

}  // namespace

std::string capacity_report_json(const NetworkConfig& config, bool verify_lp) {
    const Network& net = config.network;
    CapacityOptions options;
    options.verify_lp = verify_lp;
    const auto report = compute_capacity_report(net, options);

    json doc = header(config, "capacity");
    doc["h_total"] = round12(report.total_entropy);
    doc["c_wsk"] = round12(report.wsk.value);
    doc["argmin_edge"] = edge_json(report.wsk.argmin);
    doc["c_pk"] = round12(report.c_pk);
    doc["r_co_closed_form"] = round12(report.r_co_closed_form);
    if (verify_lp) {
        doc["r_co_lp"] = optional_number(report.r_co_lp);
        doc["c_pk_lp"] = optional_number(report.c_pk_lp);
        doc["lp_gap"] = round12(std::abs(*report.r_co_lp - report.r_co_closed_form));
    }
    doc["rates"] = rates_json(rate_assignment(net));
    json prov = json::object();
    for (const auto& [k, v] : report.provenance) prov[k] = v;
    doc["provenance"] = std::move(prov);
    return doc.dump(2) + "\n";
}

std::string rates_report_json(const NetworkConfig& config) {
    const Network& net = config.network;
    const auto rates = rate_assignment(net);
    json doc = header(config, "rates");
    doc["argmin_edge"] = edge_json(wsk_capacity(net).argmin);
    doc["rates"] = rates_json(rates);
    doc["r_co_closed_form"] = round12(r_co_closed_form(net));
    doc["feasibility"] = feasibility_json(check_feasibility(rates, net));
    return doc.dump(2) + "\n";
}

std::string bounds_report_json(const NetworkConfig& config, long long rounds) {
    if (rounds < 1) throw ConfigError("--n must be >= 1");
    const Network& net = config.network;
    CapacityOptions options;
    options.bounds = true;
    options.packing_rounds = rounds;
    const auto report = compute_capacity_report(net, options);

    json doc = header(config, "bounds");
    doc["c_wsk"] = round12(report.wsk.value);
    doc["partition_bound"] = optional_number(report.partition_bound);
    json packing;
    packing["available"] = report.packing_bound.has_value();
    packing["n"] = rounds;
    packing["value"] = optional_number(report.packing_bound);
    packing["method"] = report.provenance.at("packing_bound");
    doc["packing"] = std::move(packing);
    json sandwich;
    constexpr double tol = 1e-9;
    sandwich["upper_ok"] = report.wsk.value <= *report.partition_bound + tol;
    sandwich["lower_ok"] = report.packing_bound ? json(*report.packing_bound <= report.wsk.value + tol) : json(nullptr);
    doc["sandwich"] = std::move(sandwich);
    return doc.dump(2) + "\n";
}

ProtocolConfig simulation_protocol(const NetworkConfig& config) {
    if (!config.network.has_sources()) throw ConfigError("sources required for simulation (weight-only edges found)");
    if (!config.protocol) throw ConfigError("$.protocol: missing protocol block");
    return make_protocol_config(config.network, config.protocol->params);
}

std::string transcript_json(const Transcript& t) {
    json doc;
    doc["rounds"] = t.rounds;
    doc["lambda"] = t.lambda;
    doc["root_edge"] = edge_json(t.root_edge);
    json seeds = json::array();
    for (const auto& [e, q] : t.seeds) seeds.push_back(json{{"edge", edge_json(e)}, {"bits", q.size()}, {"hex", to_hex(q)}});
    doc["seeds"] = std::move(seeds);
    json f = json::array();
    for (const auto& [arc, bits] : t.broadcasts) f.push_back(json{{"from", arc.from}, {"to", arc.to}, {"hex", to_hex(bits)}});
    doc["broadcasts"] = std::move(f);
    json keys = json::object();
    for (const auto& [j, k] : t.keys) keys[std::to_string(j)] = to_hex(k);
    doc["keys"] = std::move(keys);
    return doc.dump(2) + "\n";
}

std::string simulate_report_json(const NetworkConfig& config, const SimulateOptions& options) {
    const Network& net = config.network;
    const ProtocolConfig pc = simulation_protocol(config);
    const std::uint64_t seed = config.protocol->seed;
    const Transcript t = run_protocol(net, pc, seed);
    const auto rc = reliability_and_comm(t, pc);
    const double c = wsk_capacity(net).value;

    json doc = header(config, "simulate");
    json proto;
    proto["n"] = pc.rounds;
    proto["delta"] = round12(pc.delta);
    proto["delta_n"] = round12(pc.delta_n);
    proto["lambda"] = pc.lambda;
    proto["root_edge"] = edge_json(pc.root_edge);
    proto["seed"] = seed;
    proto["c_wsk"] = round12(c);
    proto["achieved_rate"] = round12(static_cast<double>(pc.lambda) / static_cast<double>(pc.rounds));
    doc["protocol"] = std::move(proto);

    bool all_equal = true;
    for (const auto& [j, k] : t.keys) all_equal = all_equal && k == t.keys.begin()->second;
    json digest;
    digest["fnv1a64"] = fnv1a_hex(transcript_json(t));
    digest["terminals"] = t.keys.size();
    digest["messages"] = rc.messages;
    digest["key_hex"] = to_hex(t.keys.begin()->second);
    digest["all_keys_equal"] = all_equal;
    doc["transcript_digest"] = std::move(digest);
    doc["reliability"] = json{{"epsilon_observed", round12(rc.epsilon_observed)}};

    const auto subtree_edges = steiner_subtree(net.tree(), net.targets()).edges.size();
    json comm;
    comm["bits"] = rc.communication_bits;
    comm["messages"] = rc.messages;
    comm["rate_per_round"] = round12(static_cast<double>(rc.communication_bits) / static_cast<double>(pc.rounds));
    comm["bound_per_round"] = round12(static_cast<double>(subtree_edges - 1) * c);
    doc["communication"] = std::move(comm);

    if (options.exact_secrecy) {
        SecrecyOptions so;
        if (options.state_cap != 0) so.cap = options.state_cap;
        so.fixed_seed = seed;
        const auto sr = exact_secrecy(net, pc, so);
        json sec;
        sec["statistical_distance"] = round12(sr.statistical_distance);
        sec["sigma"] = round12(sr.sigma);
        json pairwise = json::array();
        for (const auto& [e, sd] : sr.pairwise_sd) pairwise.push_back(json{{"edge", edge_json(e)}, {"sd", round12(sd)}});
        sec["pairwise"] = std::move(pairwise);
        sec["composition_bound"] = round12(sr.composition_bound);
        sec["bound_holds"] = sr.statistical_distance <= sr.composition_bound + 1e-12;
        sec["seed_mode"] = sr.seed_mode == SeedMode::Enumerated ? "enumerated" : "fixed";
        sec["states"] = sr.states;
        doc["exact_secrecy"] = std::move(sec);
    }
    return doc.dump(2) + "\n";
}

std::string rate_sweep_csv(const NetworkConfig& config, const std::vector<std::uint64_t>& rounds) {
    if (!config.protocol) throw ConfigError("$.protocol: missing protocol block");
    const auto& p = config.protocol->params;
    const double c = wsk_capacity(config.network).value;
    if (!(p.delta < c)) throw ConfigError("$.protocol.delta: must be below C_WSK = " + std::to_string(c));
    std::ostringstream out;
    out << "n,lambda,rate,target,note\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", c - p.delta);
    const std::string target = buf;
    for (std::uint64_t n : rounds) {
        out << n << ',';
        try {
            const auto choice = choose_lambda(config.network, static_cast<std::size_t>(n), p.delta, p.delta_n);
            std::snprintf(buf, sizeof buf, "%.12g", choice.rate);
            out << choice.lambda << ',' << buf << ',' << target << ",\n";
        } catch (const ConfigError&) {
            out << ",," << target << ",below one bit\n";
        }
    }
    return out.str();
}

}  // namespace treepin
