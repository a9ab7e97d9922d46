#include "treepin/config.hpp"

#include <map>
#include <stdexcept>

#include "json.hpp"
#include "treepin/error.hpp"

namespace treepin {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ConfigError(path + ": " + message);
}

const json& field(const json& obj, const std::string& path, const char* key) {
    if (!obj.is_object()) fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(path + "." + key, "missing required field");
    return *it;
}

double number(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    return v.get<double>();
}

long long integer(const json& v, const std::string& path) {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<long long>();
}

std::vector<double> numbers(const json& v, const std::string& path) {
    if (!v.is_array()) fail(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t k = 0; k < v.size(); ++k) out.push_back(number(v[k], path + "[" + std::to_string(k) + "]"));
    return out;
}

Edge edge_pair(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 2) fail(path, "expected [i, j]");
    try {
        return Edge::of(static_cast<Node>(integer(v[0], path + "[0]")), static_cast<Node>(integer(v[1], path + "[1]")));
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
}

WiretapChannel parse_channel(const json& ch, std::size_t inputs, const std::string& path) {
    const json& type = field(ch, path, "type");
    if (!type.is_string()) fail(path + ".type", "expected a string");
    const std::string t = type.get<std::string>();
    try {
        if (t == "bsc") {
            if (inputs != 2) fail(path, "bsc requires a binary source");
            return WiretapChannel::binary_symmetric(number(field(ch, path, "p"), path + ".p"));
        }
        if (t == "bec") return WiretapChannel::erasure(inputs, number(field(ch, path, "p"), path + ".p"));
        if (t == "matrix") {
            const json& rows = field(ch, path, "rows");
            if (!rows.is_array()) fail(path + ".rows", "expected an array of rows");
            std::vector<std::vector<double>> m;
            for (std::size_t r = 0; r < rows.size(); ++r)
                m.push_back(numbers(rows[r], path + ".rows[" + std::to_string(r) + "]"));
            auto channel = WiretapChannel::from_rows(m);
            if (channel.input_alphabet().size != inputs)
                fail(path + ".rows", "needs one row per source symbol (" + std::to_string(inputs) + ")");
            return channel;
        }
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
    fail(path + ".type", "unknown channel type '" + t + "' (expected bsc, bec or matrix)");
}

std::string line_of(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

NetworkConfig parse_network_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError("JSON syntax error at " + line_of(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
    }
    if (!doc.is_object()) fail("$", "expected a JSON object");

    const long long m = integer(field(doc, "$", "nodes"), "$.nodes");
    if (m < 1 || m > 32) fail("$.nodes", "must be between 1 and 32");

    const json& edges = field(doc, "$", "edges");
    if (!edges.is_array()) fail("$.edges", "expected an array");
    std::vector<Edge> tree_edges;
    std::map<Edge, EdgeModel> models;
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const std::string path = "$.edges[" + std::to_string(k) + "]";
        const json& entry = edges[k];
        const long long i = integer(field(entry, path, "i"), path + ".i");
        const long long j = integer(field(entry, path, "j"), path + ".j");
        if (i < 1 || i > m || j < 1 || j > m) fail(path, "endpoint outside 1.." + std::to_string(m));
        if (i == j) fail(path, "self-loop");
        const Edge e = Edge::of(static_cast<Node>(i), static_cast<Node>(j));
        if (models.contains(e)) fail(path, "duplicate edge");

        const bool has_source = entry.contains("source"), has_weight = entry.contains("weight");
        if (has_source == has_weight) fail(path, "needs exactly one of 'source' or 'weight'");
        try {
            if (has_weight) {
                models.emplace(e, EdgeModel::from_weight(number(entry["weight"], path + ".weight")));
            } else {
                const std::string sp = path + ".source";
                const auto dist = numbers(field(entry["source"], sp, "dist"), sp + ".dist");
                auto channel = parse_channel(field(entry["source"], sp, "channel"), dist.size(), sp + ".channel");
                models.emplace(e, EdgeModel::from_source(EdgeSource(dist, std::move(channel))));
            }
        } catch (const std::invalid_argument& ex) {
            fail(path, ex.what());
        }
        tree_edges.push_back(e);
    }

    NodeSet targets = NodeSet::all(static_cast<int>(m));
    if (doc.contains("target_set")) {
        const json& ts = doc["target_set"];
        if (!ts.is_array() || ts.empty()) fail("$.target_set", "expected a nonempty array of nodes");
        targets = NodeSet{};
        for (std::size_t k = 0; k < ts.size(); ++k) {
            const long long a = integer(ts[k], "$.target_set[" + std::to_string(k) + "]");
            if (a < 1 || a > m) fail("$.target_set[" + std::to_string(k) + "]", "node outside 1.." + std::to_string(m));
            targets.insert(static_cast<Node>(a));
        }
    }

    std::optional<Tree> tree;
    try {
        tree.emplace(static_cast<int>(m), tree_edges);
    } catch (const std::exception& e) {
        fail("$.edges", std::string("not a tree: ") + e.what());
    }
    NetworkConfig config{Network(*tree, std::move(models), targets), std::nullopt};

    if (doc.contains("protocol")) {
        const json& p = doc["protocol"];
        const std::string path = "$.protocol";
        ProtocolSection section;
        const long long n = integer(field(p, path, "n"), path + ".n");
        if (n < 1) fail(path + ".n", "must be >= 1");
        section.params.rounds = static_cast<std::size_t>(n);
        section.params.delta = number(field(p, path, "delta"), path + ".delta");
        if (!(section.params.delta > 0.0)) fail(path + ".delta", "must be > 0");
        if (p.contains("delta_n")) section.params.delta_n = number(p["delta_n"], path + ".delta_n");
        if (section.params.delta_n < 0.0) fail(path + ".delta_n", "must be >= 0");
        if (p.contains("lambda")) {
            const long long lambda = integer(p["lambda"], path + ".lambda");
            if (lambda < 1) fail(path + ".lambda", "must be >= 1");
            section.params.lambda = static_cast<std::size_t>(lambda);
        }
        if (p.contains("root_edge")) {
            const Edge root = edge_pair(p["root_edge"], path + ".root_edge");
            if (!config.network.tree().has_edge(root)) fail(path + ".root_edge", "not an edge of the tree");
            section.params.root_edge = root;
        }
        if (p.contains("seed")) {
            if (!p["seed"].is_number_unsigned()) fail(path + ".seed", "expected a nonnegative integer");
            section.seed = p["seed"].get<std::uint64_t>();
        }
        config.protocol = section;
    }
    return config;
}

std::string serialize_network_config(const NetworkConfig& config) {
    const Network& net = config.network;
    json doc;
    doc["nodes"] = net.node_count();
    json edges = json::array();
    for (const auto& [e, model] : net.edges()) {
        json entry;
        entry["i"] = e.u;
        entry["j"] = e.v;
        if (model.source) {
            json src;
            src["dist"] = std::vector<double>(model.source->distribution().begin(), model.source->distribution().end());
            src["channel"] = json{{"type", "matrix"}, {"rows", model.source->channel().rows()}};
            entry["source"] = std::move(src);
        } else {
            entry["weight"] = model.entropy;
        }
        edges.push_back(std::move(entry));
    }
    doc["edges"] = std::move(edges);
    doc["target_set"] = net.targets().members();
    if (config.protocol) {
        const auto& p = config.protocol->params;
        json proto;
        proto["n"] = p.rounds;
        proto["delta"] = p.delta;
        proto["delta_n"] = p.delta_n;
        if (p.lambda) proto["lambda"] = *p.lambda;
        if (p.root_edge) proto["root_edge"] = {p.root_edge->u, p.root_edge->v};
        proto["seed"] = config.protocol->seed;
        doc["protocol"] = std::move(proto);
    }
    return doc.dump(2);
}

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int k = 15; k >= 0; --k, h >>= 4) out[static_cast<std::size_t>(k)] = kDigits[h & 0xf];
    return out;
}

}  // namespace treepin
